#include "bosegas/neumann.hpp"

#include <algorithm>
#include <cmath>

#include "bosegas/numerics.hpp"

namespace bosegas {

namespace {

// Shooting mismatch for the Neumann condition f'(ell) = 0. With w = r f this
// reads ell w'(ell) - w(ell) = 0.
struct Shooter {
    const NeumannCore& core;
    double ell;
    double rel_tol;

    std::vector<OdePoint> integrate(double lambda) const {
        auto coeff = [&](double r) {
            double v = core.is_hard() ? 0.0 : 0.5 * core.pot->value(r);
            return v - lambda;
        };
        std::vector<double> breaks = core.is_hard() ? std::vector<double>{} : core.pot->breakpoints();
        double r0 = core.inner_radius();
        return integrate_radial_piecewise(coeff, breaks, r0, ell, 0.0, 1.0, rel_tol,
                                          (ell - r0) / 64.0);
    }

    double mismatch(double lambda) const {
        auto pts = integrate(lambda);
        return ell * pts.back().dw - pts.back().w;
    }
};

}  // namespace

NeumannSolution neumann_ground_state(const NeumannCore& core, double ell, double tol) {
    if (!(ell > 0.0)) throw domain_error("neumann_ground_state: ell must be positive");
    if (!(tol > 0.0)) throw domain_error("neumann_ground_state: tol must be positive");
    if (core.extent() >= ell)
        throw domain_error("neumann_ground_state: core must fit strictly inside the ball");

    NeumannSolution sol;
    sol.core_ = core;
    sol.ell_ = ell;

    const int n_grid = 400;
    if (core.trivial()) {
        sol.lambda_ = 0.0;
        for (int i = 0; i <= n_grid; ++i) {
            double r = ell * i / n_grid;
            sol.r_.push_back(r);
            sol.f_.push_back(1.0);
            sol.df_.push_back(0.0);
            sol.profile_.emplace_back(r, 1.0);
        }
        return sol;
    }

    const double r0 = core.inner_radius();
    Shooter sh{core, ell, std::min(tol * 1e-3, 1e-12)};

    // The ground state is the first root of the mismatch. It lies below the
    // infinite-core limit (pi/2 / (ell - extent))^2.
    const double lam_hi_guess = 1.05 * std::pow(0.5 * pi / (ell - core.extent()), 2);
    double lo = 0.0, hi = 0.0, mlo = 0.0;
    double prev = sh.mismatch(0.0);
    double prev_lam = 0.0;
    if (prev == 0.0) {
        lo = hi = prev_lam;
    } else {
        bool bracketed = false;
        const int n_scan = 128;
        for (int i = 1; i <= n_scan + 8; ++i) {
            double lam = lam_hi_guess * (static_cast<double>(i) / n_scan);
            double m = sh.mismatch(lam);
            if (m == 0.0 || m * prev < 0.0) {
                lo = prev_lam;
                hi = lam;
                mlo = prev;
                bracketed = true;
                break;
            }
            prev = m;
            prev_lam = lam;
        }
        if (!bracketed) throw solver_error("neumann_ground_state: eigenvalue bracketing failed");
        for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            double m = sh.mismatch(mid);
            if (m == 0.0) {
                lo = hi = mid;
                break;
            }
            if (m * mlo < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                mlo = m;
            }
        }
    }
    sol.lambda_ = 0.5 * (lo + hi);

    // hard core: the transcendental characterization tan(k(l-a)) = k l
    if (core.is_hard()) {
        double k = std::sqrt(sol.lambda_);
        double res = std::sin(k * (ell - r0)) - k * ell * std::cos(k * (ell - r0));
        if (std::abs(res) > tol)
            throw solver_error("neumann_ground_state: transcendental residual exceeds tolerance");
    }

    // final profile on a log-near-core / uniform-near-ell grid
    auto pts = sh.integrate(sol.lambda_);
    // normalize f(ell) = 1
    const double f_ell = pts.back().w / ell;
    if (!(f_ell != 0.0)) throw solver_error("neumann_ground_state: degenerate boundary value");

    // Hermite data directly from integration points
    std::vector<double> pr, pf, pdf;
    pr.reserve(pts.size());
    for (const auto& p : pts) {
        double f, df;
        if (p.r == 0.0) {
            f = p.dw;  // lim w/r
            df = 0.0;
        } else {
            f = p.w / p.r;
            df = (p.dw - f) / p.r;
        }
        pr.push_back(p.r);
        pf.push_back(f / f_ell);
        pdf.push_back(df / f_ell);
    }
    sol.r_ = std::move(pr);
    sol.f_ = std::move(pf);
    sol.df_ = std::move(pdf);

    // exported display grid: half geometric from the core scale, half uniform
    const int half = n_grid / 2;
    std::vector<double> grid;
    double g0 = (r0 > 0.0) ? r0 : std::min(1e-3 * ell, 0.5 * core.extent());
    for (int i = 0; i <= half; ++i)
        grid.push_back(g0 * std::pow((0.5 * ell) / g0, static_cast<double>(i) / half));
    for (int i = 1; i <= half; ++i) grid.push_back(0.5 * ell + 0.5 * ell * i / half);
    for (double r : grid) sol.profile_.emplace_back(r, sol.value(r));
    return sol;
}

double NeumannSolution::value(double r) const {
    if (r >= ell_) return 1.0;
    if (core_.trivial()) return 1.0;
    if (core_.is_hard() && r <= core_.hard_radius) return 0.0;
    if (r_.empty()) return 1.0;
    if (r <= r_.front()) return f_.front();
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - r_.begin()) - 1;
    if (i + 1 >= r_.size()) return f_.back();
    double h = r_[i + 1] - r_[i], t = (r - r_[i]) / h;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return h00 * f_[i] + h10 * h * df_[i] + h01 * f_[i + 1] + h11 * h * df_[i + 1];
}

double NeumannSolution::derivative(double r) const {
    if (r >= ell_ || core_.trivial()) return 0.0;
    if (core_.is_hard() && r <= core_.hard_radius) return 0.0;
    if (r_.empty()) return 0.0;
    if (r <= r_.front()) return df_.front();
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - r_.begin()) - 1;
    if (i + 1 >= r_.size()) return df_.back();
    double h = r_[i + 1] - r_[i], t = (r - r_[i]) / h;
    double d00 = 6 * t * (t - 1) / h, d10 = (1 - t) * (1 - 3 * t);
    double d01 = -6 * t * (t - 1) / h, d11 = t * (3 * t - 2);
    return d00 * f_[i] + d10 * df_[i] + d01 * f_[i + 1] + d11 * df_[i + 1];
}

std::vector<std::pair<double, double>> NeumannSolution::u_profile() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(profile_.size());
    for (const auto& [r, f] : profile_) out.emplace_back(r, 1.0 - f * f);
    return out;
}

NormReport profile_norms(const NeumannSolution& sol, double r_exponent) {
    if (r_exponent < 1.0 || r_exponent >= 3.0)
        throw domain_error("profile_norms: ||u||_r diverges outside 1 <= r < 3");
    if (r_exponent >= 1.5)
        throw domain_error("profile_norms: ||grad f||_r diverges for r >= 3/2");

    NormReport rep;
    rep.r_exponent = r_exponent;
    if (sol.core().trivial()) return rep;

    const double ell = sol.ell();
    auto u = [&](double r) { return sol.u(r); };
    auto gf = [&](double r) { return std::abs(sol.derivative(r)); };
    const double w = 4.0 * pi;
    // panels resolve the 1/r profile near the core
    const int n = 4000;
    rep.u_l1 = w * simpson([&](double r) { return r * r * u(r); }, 0.0, ell, n);
    rep.u_lr =
        std::pow(w * simpson([&](double r) { return r * r * std::pow(u(r), r_exponent); }, 0.0, ell, n),
                 1.0 / r_exponent);
    rep.gradf_lr = std::pow(
        w * simpson([&](double r) { return r * r * std::pow(gf(r), r_exponent); }, 0.0, ell, n),
        1.0 / r_exponent);
    if (sol.core().is_hard()) {
        double a = sol.core().hard_radius;
        rep.predicted_scaling_ratio = rep.u_lr / (a * std::pow(ell, 3.0 / r_exponent - 1.0));
    } else {
        rep.predicted_scaling_ratio = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

namespace {

bool same_core(const NeumannCore& a, const NeumannCore& b) {
    if (a.is_hard() != b.is_hard()) return false;
    if (a.is_hard()) return a.hard_radius == b.hard_radius;
    return a.pot->describe() == b.pot->describe();
}

// residual of  [-Lap - 2 (f_in'/f_in) d/dr] g + lam_in chi_in g = lam_out chi_out g
double residual_pass(const NeumannSolution& inner, const NeumannSolution& outer, int n_per_section) {
    const double a = inner.core().inner_radius();
    const double l_in = inner.ell(), l_out = outer.ell();
    const double lam_in = inner.eigenvalue(), lam_out = outer.eigenvalue();

    auto g = [&](double r) { return outer.value(r) / inner.value(r); };

    double gmax = 0.0;
    double worst = 0.0;
    // two smooth sections: (a, l_in) and (l_in, l_out); the kink at l_in and
    // the core-adjacent sliver are excluded from the stencil window
    struct Section {
        double lo, hi;
        bool chi_in;
    };
    const double margin = 0.05 * (l_in - a);
    std::vector<Section> sections{{a + margin, l_in, true}, {l_in, l_out, false}};
    for (const auto& sec : sections) {
        double h = (sec.hi - sec.lo) / n_per_section;
        for (int i = 2; i < n_per_section - 1; ++i) {
            double r = sec.lo + i * h;
            double gm = g(r - h), g0 = g(r), gp = g(r + h);
            double d1 = (gp - gm) / (2.0 * h);
            double d2 = (gp - 2.0 * g0 + gm) / (h * h);
            double lap = d2 + 2.0 * d1 / r;
            double drift = 2.0 * (inner.derivative(r) / inner.value(r)) * d1;
            double lhs = -lap - drift + (sec.chi_in ? lam_in * g0 : 0.0);
            double rhs = (r <= l_out ? lam_out * g0 : 0.0);
            worst = std::max(worst, std::abs(lhs - rhs));
            gmax = std::max(gmax, std::abs(g0));
        }
    }
    if (gmax == 0.0) return 0.0;
    return worst / (lam_out * gmax);
}

}  // namespace

std::vector<double> ratio_residual_levels(const NeumannSolution& inner,
                                          const NeumannSolution& outer, int levels,
                                          int base_points) {
    if (!(inner.ell() < outer.ell()))
        throw domain_error("ratio_residual: inner ell must be smaller than outer ell");
    if (!same_core(inner.core(), outer.core())) throw domain_error("ratio_residual: mismatched cores");
    std::vector<double> out;
    int n = base_points;
    for (int lv = 0; lv < levels; ++lv, n *= 2) out.push_back(residual_pass(inner, outer, n));
    return out;
}

double ratio_residual(const NeumannSolution& inner, const NeumannSolution& outer) {
    auto seq = ratio_residual_levels(inner, outer, 3);
    if (seq[0] == 0.0 && seq[1] == 0.0) return seq.back();
    // second-order stencil: each halving should shrink the residual ~4x
    if (!(seq[2] < seq[1] && seq[1] < seq[0]))
        throw solver_error("ratio_residual: no grid convergence (discretization-dominated)");
    return seq.back();
}

}  // namespace bosegas
