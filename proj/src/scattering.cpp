#include "bosegas/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "bosegas/numerics.hpp"

namespace bosegas {

ScatteringSolution scattering_length(const RadialPotential& V, double r_max, double tol) {
    if (!(tol > 0.0)) throw domain_error("scattering_length: tol must be positive");
    const double R = V.support_radius();
    if (!(r_max > 2.0 * R) || !(r_max > 0.0))
        throw domain_error("scattering_length: r_max must exceed twice the support radius");

    ScatteringSolution sol;
    if (V.is_zero()) {
        sol.scattering_length = 0.0;
        sol.converged = true;
        for (int i = 0; i <= 64; ++i) sol.profile.emplace_back(r_max * i / 64.0, 1.0);
        return sol;
    }

    const bool hard = V.kind() == RadialPotential::Kind::hard_sphere;
    const double r0 = hard ? V.hard_radius() : 0.0;
    auto coeff = [&](double r) { return hard ? 0.0 : 0.5 * V.value(r); };

    // w = r f, w'' = (V/2) w, started with unit slope (normalized away by the fit)
    const double max_step = (r_max - r0) / 64.0;
    auto pts = integrate_radial_piecewise(coeff, V.breakpoints(), r0, r_max, 0.0, 1.0,
                                          std::min(tol, 1e-12), max_step);

    // least squares w ~ s (r - a) over the outer 20% of [support, r_max]
    const double fit_lo = R + 0.8 * (r_max - R);
    std::vector<double> xs, ys;
    for (const auto& p : pts)
        if (p.r >= fit_lo) {
            xs.push_back(p.r);
            ys.push_back(p.w);
        }
    if (xs.size() < 4) throw solver_error("scattering_length: too few points in the fit window");
    LineFit fit = fit_line(xs, ys);
    if (fit.slope <= 0.0) throw solver_error("scattering_length: non-positive asymptotic slope");
    const double a = -fit.intercept / fit.slope;

    sol.scattering_length = a;
    sol.fit_residual = fit.rms_residual / (fit.slope * r_max);
    sol.profile.reserve(pts.size() + 1);
    if (!hard && r0 == 0.0)
        sol.profile.emplace_back(0.0, pts.size() > 1 ? pts[0].dw / fit.slope : 1.0);
    for (const auto& p : pts) {
        if (p.r == 0.0) continue;
        sol.profile.emplace_back(p.r, p.w / (fit.slope * p.r));
    }
    sol.converged = sol.fit_residual < tol;
    return sol;
}

double fourier_coefficient(const RadialPotential& V, double p_norm) {
    if (!V.integrable()) throw domain_error("non-integrable potential");
    if (V.is_zero()) return 0.0;
    const double p = std::abs(p_norm);
    if (V.kind() == RadialPotential::Kind::soft_sphere) {
        // 4 pi V0 (sin kR - kR cos kR) / k^3
        const double v0 = V.soft_height(), R = V.support_radius();
        const double x = p * R;
        if (x < 1e-3) {
            double x2 = x * x;
            return 4.0 * pi * v0 * R * R * R * (1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0);
        }
        return 4.0 * pi * v0 * (std::sin(x) - x * std::cos(x)) / (p * p * p);
    }
    auto integrand = [&](double r) { return r * r * V.value(r) * sinc(p * r); };
    auto breaks = V.breakpoints();
    std::vector<double> cuts{0.0};
    for (double b : breaks)
        if (b > 0.0 && b < V.support_radius()) cuts.push_back(b);
    cuts.push_back(V.support_radius());
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate(integrand, cuts[i], cuts[i + 1], 1e-13);
    return 4.0 * pi * total;
}

RadialPotential scale_potential(const RadialPotential& V, const ScaledRegime& regime) {
    const double N = static_cast<double>(regime.n_particles);
    const double len = std::pow(N, -regime.beta);           // radius factor
    const double amp = std::pow(N, 3.0 * regime.beta - 1.0);  // height factor
    switch (V.kind()) {
        case RadialPotential::Kind::zero:
            return RadialPotential::zero();
        case RadialPotential::Kind::hard_sphere:
            return RadialPotential::hard_sphere(V.hard_radius() * len);
        case RadialPotential::Kind::soft_sphere:
            return RadialPotential::soft_sphere(V.soft_height() * amp, V.support_radius() * len);
        case RadialPotential::Kind::tabulated: {
            auto samples = V.samples();
            for (auto& s : samples) {
                s.first *= len;
                s.second *= amp;
            }
            return RadialPotential::tabulated(std::move(samples));
        }
    }
    throw domain_error("scale_potential: unknown kind");
}

}  // namespace bosegas
