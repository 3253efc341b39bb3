#ifndef BOSEGAS_NUMERICS_HPP
#define BOSEGAS_NUMERICS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "bosegas/common.hpp"

namespace bosegas {

// sin(x)/x with the removable singularity handled.
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

namespace detail {
template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double err = left + right - whole;
    if (depth <= 0)
        throw solver_error("adaptive quadrature: maximum depth reached");
    if (std::abs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Adaptive Simpson with absolute tolerance.
template <typename F>
double integrate(const F& f, double a, double b, double tol = 1e-12, int max_depth = 60) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Fixed-count composite Simpson (n intervals, rounded up to even).
template <typename F>
double simpson(const F& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Composite Gauss-Legendre (5-point rule per panel).
template <typename F>
double gauss_legendre(const F& f, double a, double b, int panels) {
    static const double xg[5] = {-0.906179845938663992, -0.538469310105683091, 0.0,
                                 0.538469310105683091, 0.906179845938663992};
    static const double wg[5] = {0.236926885056189088, 0.478628670499366468, 0.568888888888888889,
                                 0.478628670499366468, 0.236926885056189088};
    if (panels < 1) panels = 1;
    double h = (b - a) / panels, total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double c = a + (p + 0.5) * h;
        for (int i = 0; i < 5; ++i) total += wg[i] * f(c + 0.5 * h * xg[i]);
    }
    return total * 0.5 * h;
}

// Simpson-type rule on already-sampled, possibly non-uniform abscissae.
// Quadratic through consecutive triples; trapezoid on a leftover last interval.
double simpson_samples(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Embedded Runge-Kutta 4(5), Cash-Karp coefficients, for y'' = c(r) y
// written as the first-order pair (y, y').
// ---------------------------------------------------------------------------

struct OdePoint {
    double r, w, dw;
};

// Integrates w'' = coeff(r) * w from (r0, w0, dw0) to r1, recording every
// accepted step. Throws solver_error on step underflow.
std::vector<OdePoint> integrate_radial(const std::function<double(double)>& coeff, double r0,
                                       double r1, double w0, double dw0, double rel_tol,
                                       double max_step = 0.0);

// Same, but splits the range at the given breakpoints (potential edges).
std::vector<OdePoint> integrate_radial_piecewise(const std::function<double(double)>& coeff,
                                                 const std::vector<double>& breaks, double r0,
                                                 double r1, double w0, double dw0, double rel_tol,
                                                 double max_step = 0.0);

// ---------------------------------------------------------------------------
// Small dense least squares (modified Gram-Schmidt QR). Columns of A are the
// basis functions sampled on the data points.
// ---------------------------------------------------------------------------
std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  const std::vector<double>& rhs);

// Slope and intercept of y ~ a + b x, plus the slope's standard error.
struct LineFit {
    double intercept, slope, slope_stderr, rms_residual;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Deterministic RNG: std::mt19937_64 (engine output is ISO-specified) with an
// explicit 53-bit uniform mapping, so streams are bit-identical everywhere.
// ---------------------------------------------------------------------------
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t integer() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace bosegas

#endif
