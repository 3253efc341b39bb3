#ifndef BOSEGAS_VMC_HPP
#define BOSEGAS_VMC_HPP

#include <cstdint>
#include <vector>

#include "bosegas/common.hpp"
#include "bosegas/neumann.hpp"

namespace bosegas {

/// N hard spheres on the periodic box [0, L)^3 with Jastrow range ell.
struct TorusGas {
    double box_side;
    long n_particles;
    double core_radius;
    double ell;

    TorusGas(double L, long N, double core, double ell_);
    double density() const { return static_cast<double>(n_particles) / std::pow(box_side, 3); }
};

using ParticleConfiguration = std::vector<Vec3>;

// Minimum-image displacement and distance on the torus.
Vec3 min_image(const Vec3& d, double L);

// Sum of 2 log f(d_ij); -infinity when any pair violates the hard core.
double log_weight(const ParticleConfiguration& config, const NeumannSolution& sol,
                  const TorusGas& gas);

/// Decimated Metropolis samples plus chain diagnostics.
struct SampleStream {
    std::vector<ParticleConfiguration> samples;  // one per sweep after burn-in
    double acceptance_rate = 0.0;                // production phase
    double step_size = 0.0;                      // frozen after burn-in
    std::uint64_t seed = 0;
};

// Single-particle Metropolis with burn-in step tuning (40-60% target).
// steps and burn_in are counted in sweeps (N single-particle moves each).
SampleStream run_chain(const TorusGas& gas, const NeumannSolution& sol, long sweeps, long burn_in,
                       double step_size, std::uint64_t seed);

/// Jastrow energy estimate split into its A (potential-like) and B
/// (three-body gradient) parts.
struct EnergyEstimate {
    double a_term = 0.0;
    double b_term = 0.0;
    double total = 0.0;
    double std_error = 0.0;
    double acceptance_rate = 0.0;
    long n_samples = 0;
    std::uint64_t seed = 0;
};

EnergyEstimate estimate_energy(const SampleStream& samples, const NeumannSolution& sol,
                               const TorusGas& gas);

// Convenience: run several independent chains (seed, seed+1, ...) in parallel
// and merge their estimates by inverse-variance weight in chain order.
EnergyEstimate run_vmc(const TorusGas& gas, const NeumannSolution& sol, long sweeps, long burn_in,
                       std::uint64_t seed, int chains);

// Deterministic N=2 energy by radial quadrature (two independent rules).
double two_body_oracle(const TorusGas& gas, const NeumannSolution& sol);

/// Fitted ell-exponents of the three-particle derivative expectations.
struct ScalingReport {
    struct Quantity {
        std::vector<double> ell;
        std::vector<double> value;
        std::vector<double> std_error;
        double exponent = 0.0;
        double half_width = 0.0;  // fit confidence
    };
    Quantity grad1;        // <(-Lap_1)>
    Quantity grad12;       // <(-Lap_1)(-Lap_2)>
    Quantity grad123;      // <(-Lap_1)(-Lap_2)(-Lap_3)>
    bool fit_warning = false;
};

ScalingReport scaling_probe(const std::vector<double>& ell_grid, long n_for_proxy,
                            long quadrature_samples, std::uint64_t seed, double a = 1.0);

// Exposed for tests: the three squared-derivative integrands of the probe's
// explicit three-particle product, evaluated analytically at (x1, x2, x3)
// with x1 at the origin.
struct ProbeIntegrands {
    double phi;      // product value
    double q1;       // |d1 Phi|^2
    double q2;       // sum |d1 d2 Phi|^2
    double q3;       // sum |d1 d2 d3 Phi|^2
};
ProbeIntegrands probe_integrands(const Vec3& x2, const Vec3& x3, double kappa, double ell);

}  // namespace bosegas

#endif
