#ifndef BOSEGAS_LATTICE_HPP
#define BOSEGAS_LATTICE_HPP

#include <functional>
#include <utility>
#include <vector>

#include "bosegas/potential.hpp"
#include "bosegas/scattering.hpp"

namespace bosegas {

/// Value of a truncated lattice sum plus its convergence record.
struct LatticeSumResult {
    double value = 0.0;
    std::vector<std::pair<double, double>> partials;  // (truncation, partial sum)
    std::vector<double> extrapolants;                 // per-truncation, NaN before window fills
    bool extrapolated = false;
    double diagnostic = 0.0;  // estimated remaining error
};

/// Which second-order bracket is summed over the momentum lattice.
struct BracketKind {
    enum class Variant { gp, mean_field, beta_regime };
    Variant variant = Variant::gp;
    double a = 0.0;                               // gp
    std::function<double(double)> vhat;           // mean_field, |p| -> vhat(|p|)
    double v0 = 0.0;                              // beta_regime: vhat(0)

    static BracketKind gp(double a) {
        if (!(a > 0.0)) throw domain_error("BracketKind::gp: a > 0 required");
        return {Variant::gp, a, {}, 0.0};
    }
    static BracketKind mean_field(std::function<double(double)> vhat) {
        return {Variant::mean_field, 0.0, std::move(vhat), 0.0};
    }
    static BracketKind beta_regime(double v0) {
        if (v0 < 0.0) throw domain_error("BracketKind::beta_regime: vhat(0) >= 0 required");
        return {Variant::beta_regime, 0.0, {}, v0};
    }
};

/// Finite Born series request for 8 pi a_N^beta.
struct BornSeriesSpec {
    RadialPotential potential;
    ScaledRegime regime;
    int order = 2;             // highest power of vhat kept
    double momentum_cutoff = 0.0;  // |p| <= cutoff on 2 pi Z^3; 0 = default

    double default_cutoff() const;  // 8x the scaled potential's Fourier width
};

// e_Lambda = 2 - lim_M sum_{0 < |p|_inf <= M} cos(|p|)/p^2 over Z^3, cube
// truncation. With accelerate, the oscillatory boundary term is compensated
// by its continuum integral and the leftover fit to its known frequencies.
LatticeSumResult e_lambda(int m_max, bool accelerate);

// -1/2 sum over 2 pi Z^3 \ {0}, |p| <= cutoff, of the chosen bracket.
LatticeSumResult bracket_sum(const BracketKind& kind, double cutoff, bool tail_correction);

// Cumulative per-order partial values of 8 pi a_N^beta; partials[k-1] holds
// the series through order k (k powers of vhat).
std::vector<double> born_series(const BornSeriesSpec& spec, double tail_tol_rel = 1e-2);

/// Continuum (thermodynamic-limit) second-order energy per particle.
struct LhyResult {
    double energy_per_particle = 0.0;
    double lhy_ratio = 0.0;  // against 4 pi a rho (128/15 sqrt(pi)) sqrt(rho a^3)
};
LhyResult lhy_integral(double a, double rho);

// Exposed for tests: brute-force cube sum of cos(|p|)/p^2 (no symmetry).
double e_lambda_brute_force(int M);

// Area of the radius-u sphere centered in the cube [-1,1]^3, divided by u^2.
double sphere_in_cube_area(double u);

}  // namespace bosegas

#endif
