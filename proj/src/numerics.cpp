#include "bosegas/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace bosegas {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
    unsigned n = g_threads.load();
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    return std::min(n, 64u);
}

double simpson_samples(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw domain_error("simpson_samples: need >= 2 samples");
    double total = 0.0;
    std::size_t i = 0;
    while (i + 2 < n) {
        // quadratic through (x_i, x_{i+1}, x_{i+2}), possibly non-uniform
        double h0 = x[i + 1] - x[i], h1 = x[i + 2] - x[i + 1];
        double hs = h0 + h1;
        double c0 = hs * (2.0 * h0 - h1) / (6.0 * h0);
        double c1 = hs * hs * hs / (6.0 * h0 * h1);
        double c2 = hs * (2.0 * h1 - h0) / (6.0 * h1);
        total += c0 * y[i] + c1 * y[i + 1] + c2 * y[i + 2];
        i += 2;
    }
    if (i + 2 == n)  // one interval left: trapezoid
        total += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
    return total;
}

// ---------------------------------------------------------------------------
// Cash-Karp RK45 on (w, w') with w'' = c(r) w
// ---------------------------------------------------------------------------

namespace {

struct State {
    double w, dw;
};

inline State rhs(const std::function<double(double)>& c, double r, const State& s) {
    return {s.dw, c(r) * s.w};
}

const double B21 = 1.0 / 5.0;
const double B31 = 3.0 / 40.0, B32 = 9.0 / 40.0;
const double B41 = 3.0 / 10.0, B42 = -9.0 / 10.0, B43 = 6.0 / 5.0;
const double B51 = -11.0 / 54.0, B52 = 5.0 / 2.0, B53 = -70.0 / 27.0, B54 = 35.0 / 27.0;
const double B61 = 1631.0 / 55296.0, B62 = 175.0 / 512.0, B63 = 575.0 / 13824.0,
             B64 = 44275.0 / 110592.0, B65 = 253.0 / 4096.0;
const double C1 = 37.0 / 378.0, C3 = 250.0 / 621.0, C4 = 125.0 / 594.0, C6 = 512.0 / 1771.0;
const double D1 = C1 - 2825.0 / 27648.0, D3 = C3 - 18575.0 / 48384.0, D4 = C4 - 13525.0 / 55296.0,
             D5 = -277.0 / 14336.0, D6 = C6 - 0.25;

}  // namespace

std::vector<OdePoint> integrate_radial(const std::function<double(double)>& coeff, double r0,
                                       double r1, double w0, double dw0, double rel_tol,
                                       double max_step) {
    std::vector<OdePoint> out;
    if (r1 <= r0) throw domain_error("integrate_radial: empty range");
    State s{w0, dw0};
    double r = r0;
    double span = r1 - r0;
    double h = span / 64.0;
    if (max_step > 0.0) h = std::min(h, max_step);
    const double hmin = span * 1e-15;
    out.push_back({r, s.w, s.dw});
    int guard = 0;
    while (r < r1) {
        if (++guard > 2000000) throw solver_error("integrate_radial: step budget exhausted");
        if (r + h > r1) h = r1 - r;
        State k1 = rhs(coeff, r, s);
        State k2 = rhs(coeff, r + B21 * h, {s.w + h * B21 * k1.w, s.dw + h * B21 * k1.dw});
        State k3 = rhs(coeff, r + 0.3 * h,
                       {s.w + h * (B31 * k1.w + B32 * k2.w), s.dw + h * (B31 * k1.dw + B32 * k2.dw)});
        State k4 = rhs(coeff, r + 0.6 * h,
                       {s.w + h * (B41 * k1.w + B42 * k2.w + B43 * k3.w),
                        s.dw + h * (B41 * k1.dw + B42 * k2.dw + B43 * k3.dw)});
        State k5 = rhs(coeff, r + h,
                       {s.w + h * (B51 * k1.w + B52 * k2.w + B53 * k3.w + B54 * k4.w),
                        s.dw + h * (B51 * k1.dw + B52 * k2.dw + B53 * k3.dw + B54 * k4.dw)});
        State k6 = rhs(coeff, r + 0.875 * h,
                       {s.w + h * (B61 * k1.w + B62 * k2.w + B63 * k3.w + B64 * k4.w + B65 * k5.w),
                        s.dw + h * (B61 * k1.dw + B62 * k2.dw + B63 * k3.dw + B64 * k4.dw +
                                    B65 * k5.dw)});
        double w5 = s.w + h * (C1 * k1.w + C3 * k3.w + C4 * k4.w + C6 * k6.w);
        double dw5 = s.dw + h * (C1 * k1.dw + C3 * k3.dw + C4 * k4.dw + C6 * k6.dw);
        double ew = h * (D1 * k1.w + D3 * k3.w + D4 * k4.w + D5 * k5.w + D6 * k6.w);
        double edw = h * (D1 * k1.dw + D3 * k3.dw + D4 * k4.dw + D5 * k5.dw + D6 * k6.dw);
        double scale_w = std::abs(s.w) + std::abs(h * s.dw) + 1e-30;
        double scale_dw = std::abs(s.dw) + std::abs(h * coeff(r) * s.w) + 1e-30;
        double err = std::max(std::abs(ew) / scale_w, std::abs(edw) / scale_dw) / rel_tol;
        if (err <= 1.0) {
            r += h;
            s = {w5, dw5};
            out.push_back({r, s.w, s.dw});
            double grow = (err > 1e-10) ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::min(5.0, grow);
            if (max_step > 0.0) h = std::min(h, max_step);
        } else {
            h *= std::max(0.1, 0.9 * std::pow(err, -0.25));
        }
        if (h < hmin) throw solver_error("integrate_radial: step size underflow");
    }
    return out;
}

std::vector<OdePoint> integrate_radial_piecewise(const std::function<double(double)>& coeff,
                                                 const std::vector<double>& breaks, double r0,
                                                 double r1, double w0, double dw0, double rel_tol,
                                                 double max_step) {
    std::vector<double> cuts{r0};
    for (double b : breaks)
        if (b > r0 && b < r1) cuts.push_back(b);
    cuts.push_back(r1);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<OdePoint> all;
    double w = w0, dw = dw0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto seg = integrate_radial(coeff, cuts[i], cuts[i + 1], w, dw, rel_tol, max_step);
        if (!all.empty()) seg.erase(seg.begin());
        all.insert(all.end(), seg.begin(), seg.end());
        w = all.back().w;
        dw = all.back().dw;
    }
    return all;
}

// ---------------------------------------------------------------------------

std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  const std::vector<double>& rhs) {
    const std::size_t m = rhs.size(), n = columns.size();
    if (n == 0 || m < n) throw domain_error("least_squares: underdetermined system");
    // modified Gram-Schmidt QR
    std::vector<std::vector<double>> q(columns);
    std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        if (q[k].size() != m) throw domain_error("least_squares: ragged columns");
        double nrm = 0.0;
        for (double v : q[k]) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300) throw solver_error("least_squares: rank deficient basis");
        r[k][k] = nrm;
        for (auto& v : q[k]) v /= nrm;
        for (std::size_t j = k + 1; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += q[k][i] * q[j][i];
            r[k][j] = dot;
            for (std::size_t i = 0; i < m; ++i) q[j][i] -= dot * q[k][i];
        }
    }
    std::vector<double> qtb(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < m; ++i) qtb[k] += q[k][i] * rhs[i];
    std::vector<double> x(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = qtb[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= r[k][j] * x[j];
        x[k] = s / r[k][k];
    }
    return x;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw domain_error("fit_line: need >= 2 points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw domain_error("fit_line: degenerate abscissae");
    double slope = sxy / sxx;
    double intercept = my - slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double res = y[i] - intercept - slope * x[i];
        ss += res * res;
    }
    double dof = (n > 2) ? static_cast<double>(n - 2) : 1.0;
    return {intercept, slope, std::sqrt(ss / dof / sxx), std::sqrt(ss / n)};
}

}  // namespace bosegas
