#ifndef BOSEGAS_SCATTERING_HPP
#define BOSEGAS_SCATTERING_HPP

#include <utility>
#include <vector>

#include "bosegas/potential.hpp"

namespace bosegas {

/// Zero-energy scattering solution of [-Laplacian + V/2] f = 0 with f -> 1.
struct ScatteringSolution {
    double scattering_length = 0.0;
    std::vector<std::pair<double, double>> profile;  // (r, f(r)), normalized
    double fit_residual = 0.0;
    bool converged = false;
};

/// Particle-number / interaction-scaling parameters of the H_N^beta family.
struct ScaledRegime {
    long n_particles = 1;
    double beta = 1.0;

    ScaledRegime(long n, double b) : n_particles(n), beta(b) {
        if (n < 1) throw domain_error("ScaledRegime: N >= 1 required");
        if (b < 0.0 || b > 1.0) throw domain_error("ScaledRegime: beta in [0,1] required");
    }
};

// Solves the radial zero-energy equation on [start, r_max] and extracts the
// scattering length from the linear asymptote of w = r f.
ScatteringSolution scattering_length(const RadialPotential& V, double r_max, double tol);

// vhat(p) = 4 pi int_0^R r^2 V(r) sinc(|p| r) dr. Hard spheres are rejected.
double fourier_coefficient(const RadialPotential& V, double p_norm);

// r -> N^(3 beta - 1) V(N^beta r); the per-pair interaction of H_N^beta.
RadialPotential scale_potential(const RadialPotential& V, const ScaledRegime& regime);

}  // namespace bosegas

#endif
