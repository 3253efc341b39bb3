#ifndef BOSEGAS_NEUMANN_HPP
#define BOSEGAS_NEUMANN_HPP

#include <optional>
#include <utility>
#include <vector>

#include "bosegas/potential.hpp"

namespace bosegas {

/// Core of the Neumann problem: a hard sphere of given radius, or a repulsive
/// potential (the equation then reads [-Laplacian + V/2] f = lambda f).
struct NeumannCore {
    static NeumannCore hard(double radius) { return {radius, std::nullopt}; }
    static NeumannCore potential(RadialPotential V) { return {0.0, std::move(V)}; }

    double hard_radius = 0.0;
    std::optional<RadialPotential> pot;

    bool is_hard() const { return !pot.has_value(); }
    bool trivial() const {
        return is_hard() ? hard_radius == 0.0 : pot->is_zero();
    }
    double inner_radius() const { return is_hard() ? hard_radius : 0.0; }
    double extent() const { return is_hard() ? hard_radius : pot->support_radius(); }
};

/// Ground state of -Laplacian f = lambda f on the ball r <= ell with f = 1,
/// f' = 0 at the boundary, extended by f = 1 outside.
class NeumannSolution {
  public:
    double ell() const { return ell_; }
    const NeumannCore& core() const { return core_; }
    double eigenvalue() const { return lambda_; }

    // f and f' at arbitrary radius, honoring the f = 1 extension beyond ell.
    double value(double r) const;
    double derivative(double r) const;
    double u(double r) const {  // u = 1 - f^2
        double f = value(r);
        return 1.0 - f * f;
    }

    const std::vector<std::pair<double, double>>& profile() const { return profile_; }
    std::vector<std::pair<double, double>> u_profile() const;

  private:
    friend NeumannSolution neumann_ground_state(const NeumannCore&, double, double);
    NeumannCore core_;
    double ell_ = 0.0;
    double lambda_ = 0.0;
    std::vector<double> r_, f_, df_;
    std::vector<std::pair<double, double>> profile_;
};

NeumannSolution neumann_ground_state(const NeumannCore& core, double ell, double tol);

/// Quadrature values of the ball norms of u = 1 - f^2 and of |f'|.
struct NormReport {
    double r_exponent = 1.0;
    double u_l1 = 0.0;
    double u_lr = 0.0;
    double gradf_lr = 0.0;
    double predicted_scaling_ratio = 0.0;  // u_lr / (a ell^(3/r - 1)); hard cores only
};

NormReport profile_norms(const NeumannSolution& sol, double r_exponent);

// Maximum pointwise residual (relative to lambda_outer * max |g|) of the
// radial equation satisfied by g = f_outer / f_inner, via second-order finite
// differences. Levels halve the grid spacing; returns one residual per level.
std::vector<double> ratio_residual_levels(const NeumannSolution& inner,
                                          const NeumannSolution& outer, int levels,
                                          int base_points = 600);

// Finest-level residual with an internal second-order convergence check.
double ratio_residual(const NeumannSolution& inner, const NeumannSolution& outer);

}  // namespace bosegas

#endif
