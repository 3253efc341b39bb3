#include "bosegas/bogoliubov.hpp"

#include <algorithm>
#include <cmath>

#include "bosegas/numerics.hpp"

namespace bosegas {

Dispersion Dispersion::gp(double a) {
    if (a < 0.0) throw domain_error("dispersion: a >= 0 required");
    Dispersion d;
    d.kind = Kind::gp;
    d.a = a;
    return d;
}

Dispersion Dispersion::mean_field(std::function<double(double)> vhat) {
    Dispersion d;
    d.kind = Kind::mean_field;
    d.vhat = std::move(vhat);
    return d;
}

double Dispersion::operator()(double p_norm) const {
    if (!(p_norm > 0.0)) throw domain_error("dispersion: p != 0 required");
    double p2 = p_norm * p_norm;
    double v = (kind == Kind::gp) ? 8.0 * pi * a : vhat(p_norm);
    if (v < 0.0) throw domain_error("dispersion: negative interaction coefficient");
    return p_norm * std::sqrt(p2 + 2.0 * v);
}

namespace {

std::vector<Mode> modes_in_ball(int cutoff) {
    std::vector<Mode> out;
    for (int i = -cutoff; i <= cutoff; ++i)
        for (int j = -cutoff; j <= cutoff; ++j)
            for (int k = -cutoff; k <= cutoff; ++k) {
                long n2 = static_cast<long>(i) * i + static_cast<long>(j) * j +
                          static_cast<long>(k) * k;
                if (n2 == 0 || n2 > static_cast<long>(cutoff) * cutoff) continue;
                out.push_back({i, j, k});
            }
    return out;
}

}  // namespace

CoefficientSequences coefficient_sequences(const std::function<double(double)>& vhat,
                                           int mode_cutoff) {
    if (mode_cutoff < 1) throw domain_error("coefficient_sequences: cutoff >= 1 required");
    CoefficientSequences out;
    for (const Mode& n : modes_in_ball(mode_cutoff)) {
        double p = mode_momentum(n).norm();
        double v = vhat(p);
        double denom = p * p + v;
        double arg = -v / denom;
        if (!(denom > 0.0) || std::abs(arg) >= 1.0)
            throw domain_error("coefficient_sequences: non-perturbative coupling (|tanh| >= 1)");
        out.tau[n] = 0.5 * std::atanh(arg);
    }
    return out;
}

CoefficientSequences coefficient_sequences(const NeumannSolution& sol, long n_particles,
                                           int mode_cutoff) {
    if (mode_cutoff < 1) throw domain_error("coefficient_sequences: cutoff >= 1 required");
    if (!(sol.ell() < 0.5))
        throw domain_error("coefficient_sequences: Neumann ball must fit in the torus (ell < 1/2)");
    CoefficientSequences out;
    const double N = static_cast<double>(n_particles);
    auto w = [&](double r) { return 1.0 - sol.value(r); };
    // what(p) = 4 pi int_0^ell r^2 w(r) sinc(p r) dr; w has a kink at the core edge
    const double a0 = sol.core().extent();
    auto what = [&](double p) {
        auto f = [&](double r) { return r * r * w(r) * sinc(p * r); };
        double v = integrate(f, 0.0, a0, 1e-13) + integrate(f, a0, sol.ell(), 1e-13);
        return 4.0 * pi * v;
    };
    out.eta_zero_mode = -N * what(0.0);
    // eta is radial: evaluate once per |n|^2 shell
    std::map<long, double> shell_value;
    for (const Mode& n : modes_in_ball(mode_cutoff)) {
        long n2 = static_cast<long>(n[0]) * n[0] + static_cast<long>(n[1]) * n[1] +
                  static_cast<long>(n[2]) * n[2];
        auto it = shell_value.find(n2);
        if (it == shell_value.end())
            it = shell_value.emplace(n2, -N * what(2.0 * pi * std::sqrt(static_cast<double>(n2))))
                     .first;
        out.eta[n] = it->second;
    }
    return out;
}

EnergySummary ground_state_energy(const GpRegime& r) {
    if (r.n_particles < 1 || r.a < 0.0) throw domain_error("ground_state_energy: bad gp inputs");
    EnergySummary s;
    s.regime_tag = "gp";
    s.leading = 4.0 * pi * r.a * static_cast<double>(r.n_particles - 1);
    if (r.a > 0.0) {
        s.finite_volume = e_lambda(r.elambda_mmax, true).value * r.a * r.a;
        s.correction = bracket_sum(BracketKind::gp(r.a), r.bracket_cutoff, true).value;
    }
    s.total = s.leading + s.finite_volume + s.correction;
    return s;
}

EnergySummary ground_state_energy(const MeanFieldRegime& r) {
    if (r.n_particles < 1) throw domain_error("ground_state_energy: bad mean-field inputs");
    EnergySummary s;
    s.regime_tag = "mean_field";
    s.leading = 0.5 * static_cast<double>(r.n_particles - 1) * r.vhat(0.0);
    s.finite_volume = 0.0;
    s.correction = bracket_sum(BracketKind::mean_field(r.vhat), r.bracket_cutoff, true).value;
    s.total = s.leading + s.finite_volume + s.correction;
    return s;
}

EnergySummary ground_state_energy(const BetaRegime& r) {
    EnergySummary s;
    s.regime_tag = "beta(" + std::to_string(r.beta) + ")";
    BornSeriesSpec born{r.potential, ScaledRegime(r.n_particles, r.beta), r.born_order,
                        r.born_cutoff};
    double eight_pi_a = born_series(born).back();
    s.leading = 0.5 * static_cast<double>(r.n_particles - 1) * eight_pi_a;
    s.finite_volume = 0.0;
    double v0 = fourier_coefficient(r.potential, 0.0);
    s.correction = bracket_sum(BracketKind::beta_regime(v0), r.bracket_cutoff, true).value;
    s.total = s.leading + s.finite_volume + s.correction;
    return s;
}

ExcitationSpectrum enumerate_excitations(const Dispersion& disp, double threshold,
                                         std::size_t entry_guard) {
    if (!(threshold > 0.0) || !std::isfinite(threshold))
        throw domain_error("enumerate_excitations: threshold must be positive and finite");

    // smallest integer radius whose own energy already exceeds the threshold;
    // eps is increasing in |p|, so the ball |n| <= n_max covers every live mode
    int n_max = 1;
    while (disp(2.0 * pi * n_max) < threshold) ++n_max;
    struct ModeEntry {
        Mode n;
        double eps;
    };
    std::vector<ModeEntry> live;
    for (const Mode& n : modes_in_ball(n_max)) {
        double eps = disp(mode_momentum(n).norm());
        if (eps < threshold) live.push_back({n, eps});
    }
    std::sort(live.begin(), live.end(), [](const ModeEntry& a, const ModeEntry& b) {
        if (a.eps != b.eps) return a.eps < b.eps;
        return a.n < b.n;
    });

    ExcitationSpectrum spec;
    spec.threshold = threshold;
    std::vector<std::pair<Mode, int>> stack;

    // depth-first over occupation numbers; modes ascend in energy so the
    // remaining budget prunes whole subtrees
    std::function<void(std::size_t, double)> dfs = [&](std::size_t idx, double used) {
        if (spec.entries.size() > entry_guard)
            throw resource_error("enumerate_excitations: more than " +
                                 std::to_string(entry_guard) +
                                 " entries below the threshold (lower zeta or raise the guard)");
        spec.entries.push_back({stack, used});
        for (std::size_t i = idx; i < live.size(); ++i) {
            if (used + live[i].eps >= threshold) break;
            stack.emplace_back(live[i].n, 0);
            for (int c = 1; used + c * live[i].eps < threshold; ++c) {
                stack.back().second = c;
                dfs(i + 1, used + c * live[i].eps);
            }
            stack.pop_back();
        }
    };
    dfs(0, 0.0);

    for (auto& e : spec.entries) std::sort(e.occupations.begin(), e.occupations.end());
    std::sort(spec.entries.begin(), spec.entries.end(),
              [](const ExcitationSpectrum::Entry& a, const ExcitationSpectrum::Entry& b) {
                  if (a.energy != b.energy) return a.energy < b.energy;
                  return a.occupations < b.occupations;
              });
    return spec;
}

}  // namespace bosegas
