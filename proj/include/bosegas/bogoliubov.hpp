#ifndef BOSEGAS_BOGOLIUBOV_HPP
#define BOSEGAS_BOGOLIUBOV_HPP

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bosegas/lattice.hpp"
#include "bosegas/neumann.hpp"
#include "bosegas/potential.hpp"

namespace bosegas {

/// Nonzero mode n of the unit torus; its momentum is p = 2 pi n.
using Mode = std::array<int, 3>;

inline Vec3 mode_momentum(const Mode& n) {
    return {2.0 * pi * n[0], 2.0 * pi * n[1], 2.0 * pi * n[2]};
}

/// Dispersion law of a quantized excitation.
struct Dispersion {
    enum class Kind { gp, mean_field };
    Kind kind = Kind::gp;
    double a = 0.0;
    std::function<double(double)> vhat;  // |p| -> vhat(|p|)

    static Dispersion gp(double a);
    static Dispersion mean_field(std::function<double(double)> vhat);

    double operator()(double p_norm) const;
};

/// tau_p and eta_p coefficient maps on modes |n| <= cutoff.
struct CoefficientSequences {
    std::map<Mode, double> tau;
    std::map<Mode, double> eta;
    double eta_zero_mode = 0.0;  // stored for export; not used by any consumer
};

// tau from a vhat evaluator: tanh(2 tau_p) = -vhat(p) / (p^2 + vhat(p)).
CoefficientSequences coefficient_sequences(const std::function<double(double)>& vhat,
                                           int mode_cutoff);

// eta from a Neumann solution: eta_p = -N what(p), w = 1 - f extended by 0.
CoefficientSequences coefficient_sequences(const NeumannSolution& sol, long n_particles,
                                           int mode_cutoff);

/// Assembled ground-state energy with named parts.
struct EnergySummary {
    double leading = 0.0;
    double finite_volume = 0.0;
    double correction = 0.0;
    double total = 0.0;
    std::string regime_tag;
};

struct GpRegime {
    long n_particles;
    double a;
    int elambda_mmax = 40;
    double bracket_cutoff = 80.0 * pi;
};
struct MeanFieldRegime {
    long n_particles;
    std::function<double(double)> vhat;
    double bracket_cutoff = 80.0 * pi;
};
struct BetaRegime {
    long n_particles;
    double beta;
    RadialPotential potential;
    int born_order = 2;
    double born_cutoff = 0.0;  // 0 = default
    double bracket_cutoff = 80.0 * pi;
};

EnergySummary ground_state_energy(const GpRegime& r);
EnergySummary ground_state_energy(const MeanFieldRegime& r);
EnergySummary ground_state_energy(const BetaRegime& r);

/// All occupation assignments with total energy below the threshold.
struct ExcitationSpectrum {
    struct Entry {
        std::vector<std::pair<Mode, int>> occupations;  // sorted by mode, counts >= 1
        double energy = 0.0;
    };
    std::vector<Entry> entries;  // ascending energy; includes the vacuum
    double threshold = 0.0;
};

ExcitationSpectrum enumerate_excitations(const Dispersion& disp, double threshold,
                                         std::size_t entry_guard = 1000000);

}  // namespace bosegas

#endif
