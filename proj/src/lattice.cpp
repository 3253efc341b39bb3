#include "bosegas/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "bosegas/numerics.hpp"

namespace bosegas {

namespace {

constexpr double NaN = std::numeric_limits<double>::quiet_NaN();

// multiplicity of the ordered octant representative 0 <= i <= j <= k
double orbit_weight(int i, int j, int k) {
    int perms;
    if (i == j && j == k)
        perms = 1;
    else if (i == j || j == k)
        perms = 3;
    else
        perms = 6;
    int nz = (i != 0) + (j != 0) + (k != 0);
    return static_cast<double>(perms) * static_cast<double>(1 << nz);
}

// Work-stealing parallel loop. Writers own disjoint slots, so results are
// independent of the worker count; reductions happen afterwards in index order.
template <typename Fn>
void parallel_for(long n, Fn&& body) {
    unsigned workers =
        std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max(1L, n)));
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            long i;
            while ((i = next.fetch_add(1)) < n) body(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

// ---------------------------------------------------------------------------
// sphere-in-cube area and the continuum boundary integral W(h)
// ---------------------------------------------------------------------------

namespace {

const double SQRT2 = std::sqrt(2.0);
const double SQRT3 = std::sqrt(3.0);

// area on the unit sphere with x > c and y > c (two orthogonal caps), c < 1/sqrt2
double edge_overlap(double c) {
    double hi = std::sqrt(1.0 - c * c);
    if (c >= hi) return 0.0;
    auto f = [c](double x) {
        double arg = c / std::sqrt(1.0 - x * x);
        return std::acos(std::min(1.0, arg));
    };
    return 2.0 * integrate(f, c, hi, 1e-12);
}

}  // namespace

double sphere_in_cube_area(double u) {
    if (u <= 1.0) return 4.0 * pi;
    if (u >= SQRT3) return 0.0;
    double base = 4.0 * pi - 12.0 * pi * (1.0 - 1.0 / u);
    if (u <= SQRT2) return base;
    return base + 12.0 * edge_overlap(1.0 / u);
}

namespace {

// Precomputed sigma panels for W(h); the [0,1] panel integrates analytically.
struct SigmaTable {
    std::vector<double> u2, s2;  // (1, sqrt2]
    std::vector<double> u3, s3;  // (sqrt2, sqrt3)
    SigmaTable() {
        const int n = 2400;  // even counts, Simpson-ready
        for (int i = 0; i <= n; ++i) {
            double u = 1.0 + (SQRT2 - 1.0) * i / n;
            u2.push_back(u);
            s2.push_back(sphere_in_cube_area(u));
        }
        for (int i = 0; i <= n; ++i) {
            double u = SQRT2 + (SQRT3 - SQRT2) * i / n;
            u3.push_back(u);
            s3.push_back(sphere_in_cube_area(std::min(u, SQRT3)));
        }
    }
};

const SigmaTable& sigma_table() {
    static const SigmaTable t;
    return t;
}

double cos_panel(const std::vector<double>& u, const std::vector<double>& s, double h) {
    std::vector<double> y(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) y[i] = std::cos(h * u[i]) * s[i];
    return simpson_samples(u, y);
}

// W(h) = h int_0^sqrt3 cos(h u) sigma(u) du; the tail of the cube-truncated
// lattice sum behaves like -W(M + 1/2).
double boundary_integral(double h) {
    const auto& t = sigma_table();
    double w1 = 4.0 * pi * std::sin(h);  // h * int_0^1 cos(hu) 4pi du
    return w1 + h * (cos_panel(t.u2, t.s2, h) + cos_panel(t.u3, t.s3, h));
}

}  // namespace

// ---------------------------------------------------------------------------
// e_Lambda
// ---------------------------------------------------------------------------

double e_lambda_brute_force(int M) {
    double s = 0.0;
    for (int i = -M; i <= M; ++i)
        for (int j = -M; j <= M; ++j)
            for (int k = -M; k <= M; ++k) {
                long n2 = static_cast<long>(i) * i + static_cast<long>(j) * j +
                          static_cast<long>(k) * k;
                if (n2 == 0) continue;
                s += std::cos(std::sqrt(static_cast<double>(n2))) / static_cast<double>(n2);
            }
    return 2.0 - s;
}

namespace {

// oscillation basis of the compensated sequence: cube-geometry frequencies
// {1, sqrt2, sqrt3} with 1/M-power envelopes, plus smooth 1/M terms
double fit_extrapolant(const std::vector<double>& comp, int m_lo, int m_hi) {
    static const std::pair<double, int> modes[] = {{1.0, 1}, {1.0, 2}, {1.0, 3}, {SQRT2, 1},
                                                   {SQRT2, 2}, {SQRT3, 1}, {SQRT3, 2}};
    std::vector<std::vector<double>> cols;
    std::vector<double> rhs;
    int rows = m_hi - m_lo + 1;
    cols.emplace_back(rows, 1.0);
    for (const auto& [d, pw] : modes) {
        std::vector<double> c(rows), s(rows);
        for (int m = m_lo; m <= m_hi; ++m) {
            double env = std::pow(static_cast<double>(m), -pw);
            c[m - m_lo] = std::cos(d * m) * env;
            s[m - m_lo] = std::sin(d * m) * env;
        }
        cols.push_back(std::move(c));
        cols.push_back(std::move(s));
    }
    std::vector<double> inv1(rows), inv2(rows);
    for (int m = m_lo; m <= m_hi; ++m) {
        inv1[m - m_lo] = 1.0 / m;
        inv2[m - m_lo] = 1.0 / (static_cast<double>(m) * m);
    }
    cols.push_back(std::move(inv1));
    cols.push_back(std::move(inv2));
    for (int m = m_lo; m <= m_hi; ++m) rhs.push_back(comp[m - 1]);
    return least_squares(cols, rhs)[0];
}

}  // namespace

LatticeSumResult e_lambda(int m_max, bool accelerate) {
    if (m_max < 2) throw domain_error("e_lambda: M_max >= 2 required");

    LatticeSumResult res;
    std::vector<double> e(m_max);  // e[M-1] = 2 - S_M
    double running = 0.0;
    for (int M = 1; M <= m_max; ++M) {
        // octant shell |n|_inf == M: ordered triples i <= j <= k with k == M
        double shell = 0.0;
        for (int i = 0; i <= M; ++i)
            for (int j = i; j <= M; ++j) {
                long n2 = static_cast<long>(i) * i + static_cast<long>(j) * j +
                          static_cast<long>(M) * M;
                shell += orbit_weight(i, j, M) *
                         std::cos(std::sqrt(static_cast<double>(n2))) / static_cast<double>(n2);
            }
        running += shell;
        e[M - 1] = 2.0 - running;
        res.partials.emplace_back(M, e[M - 1]);
    }

    if (!accelerate) {
        res.value = e.back();
        res.extrapolants.assign(m_max, NaN);
        res.diagnostic = std::abs(e[m_max - 1] - e[m_max - 2]);
        return res;
    }

    std::vector<double> comp(m_max);
    for (int M = 1; M <= m_max; ++M) comp[M - 1] = e[M - 1] + boundary_integral(M + 0.5);

    // trailing-half Cesaro, two passes, as the small-window extrapolant
    std::vector<double> ces(comp);
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<double> out(m_max);
        for (int i = 0; i < m_max; ++i) {
            int j0 = std::max(0, i - std::max(1, (i + 1) / 2));
            double s = 0.0;
            for (int j = j0; j <= i; ++j) s += ces[j];
            out[i] = s / (i - j0 + 1);
        }
        ces = std::move(out);
    }

    const int min_window = 21;  // rows needed by the 17-column basis
    res.extrapolants.assign(m_max, NaN);
    for (int M = 4; M <= m_max; ++M) {
        int lo = std::max(8, M / 2);
        res.extrapolants[M - 1] =
            (M - lo + 1 >= min_window) ? fit_extrapolant(comp, lo, M) : ces[M - 1];
    }

    res.value = res.extrapolants[m_max - 1];
    res.extrapolated = true;
    // spread of the last few same-method extrapolants
    auto is_fit = [&](int M) { return M - std::max(8, M / 2) + 1 >= min_window; };
    double diag = 0.0;
    int counted = 0;
    for (int M = m_max; M > 4 && counted < 5 && is_fit(M) == is_fit(m_max); --M, ++counted)
        diag = std::max(diag, std::abs(res.extrapolants[M - 1] - res.extrapolants[m_max - 1]));
    res.diagnostic = std::max(diag, 1e-12);
    return res;
}

// ---------------------------------------------------------------------------
// bracket sums
// ---------------------------------------------------------------------------

namespace {

// p^2 + v - sqrt(p^4 + 2 p^2 v) - v^2/(2 p^2), cancellation-safe everywhere
double bracket_with_counterterm(double p2, double v) {
    if (v == 0.0) return 0.0;
    double S = std::sqrt(p2 * p2 + 2.0 * p2 * v);
    double D = p2 + v + S;
    if (v < p2)
        return -v * v * (4.0 * p2 * v - v * v) / (2.0 * p2 * D * (S + p2 - v));
    return v * v / D - v * v / (2.0 * p2);
}

// p^2 + v - sqrt(p^4 + 2 p^2 v) (mean-field bracket, no counterterm)
double bracket_plain(double p2, double v) {
    double rad = p2 * p2 + 2.0 * p2 * v;
    if (rad < 0.0)
        throw domain_error("bracket_sum: imaginary mean-field dispersion (p^2 + 2 vhat < 0)");
    return v * v / (p2 + v + std::sqrt(rad));
}

}  // namespace

LatticeSumResult bracket_sum(const BracketKind& kind, double cutoff, bool tail_correction) {
    if (!(cutoff >= 2.0 * pi)) throw domain_error("bracket_sum: cutoff >= 2 pi required");
    const long n_max = static_cast<long>(std::floor(cutoff / (2.0 * pi)));
    const double n2_cut = std::pow(cutoff / (2.0 * pi), 2);

    auto term = [&](double p2) {
        switch (kind.variant) {
            case BracketKind::Variant::gp:
                return bracket_with_counterterm(p2, 8.0 * pi * kind.a);
            case BracketKind::Variant::beta_regime:
                return bracket_with_counterterm(p2, kind.v0);
            case BracketKind::Variant::mean_field:
                return bracket_plain(p2, kind.vhat(std::sqrt(p2)));
        }
        return 0.0;
    };

    LatticeSumResult res;
    // octant-reduced, one |n|_inf shell per worker, reduced in shell order
    std::vector<double> shell(n_max + 1, 0.0);
    parallel_for(n_max + 1, [&](long k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i)
            for (int j = i; j <= k; ++j) {
                double n2 = static_cast<double>(i) * i + static_cast<double>(j) * j +
                            static_cast<double>(k) * k;
                if (n2 == 0.0 || n2 > n2_cut) continue;
                s += orbit_weight(i, j, static_cast<int>(k)) * term(4.0 * pi * pi * n2);
            }
        shell[k] = s;
    });
    double running = 0.0;
    for (int k = 0; k <= n_max; ++k) {
        running += shell[k];
        if (k >= 1) res.partials.emplace_back(2.0 * pi * k, -0.5 * running);
    }
    res.value = -0.5 * running;

    // tail: replace the remainder by its continuum integral using the exact
    // next-order coefficient of the sqrt expansion
    const double lam = cutoff;
    double v0 = 0.0;
    bool constant_v = true;
    switch (kind.variant) {
        case BracketKind::Variant::gp: v0 = 8.0 * pi * kind.a; break;
        case BracketKind::Variant::beta_regime: v0 = kind.v0; break;
        case BracketKind::Variant::mean_field: constant_v = false; break;
    }
    if (tail_correction) {
        res.extrapolated = true;
        if (constant_v) {
            // bracket ~ -v^3/(2 p^4) + 5 v^4/(8 p^6)
            double t4 = -0.5 * (1.0 / (2.0 * pi * pi)) * (-std::pow(v0, 3) / 2.0) / lam;
            double t6 = -0.5 * (1.0 / (2.0 * pi * pi)) * (5.0 * std::pow(v0, 4) / 8.0) /
                        (3.0 * lam * lam * lam);
            res.value += t4 + t6;
            // remaining error: next order plus one-shell granularity of the tail swap
            double granum = std::abs(t4) * (2.0 * pi / lam) * 3.0;
            res.diagnostic = std::abs(t6) + granum;
        } else {
            // numeric radial tail of the mean-field bracket
            auto radial = [&](double p) {
                return p * p * bracket_plain(p * p, kind.vhat(p)) / (2.0 * pi * pi);
            };
            double tail = integrate(radial, lam, 8.0 * lam, 1e-14);
            // beyond 8 lam the bracket is ~ vhat^2/(2p^2) with vhat ~ p^-2
            double endv = std::abs(radial(8.0 * lam)) * 8.0 * lam / 5.0;
            res.value += -0.5 * tail;
            res.diagnostic = std::abs(endv) + std::abs(tail) * (2.0 * pi / lam) * 3.0;
        }
    } else {
        // truncation error estimate from the |p|^-4 asymptote
        if (constant_v)
            res.diagnostic = std::abs(std::pow(v0, 3) / (8.0 * pi * pi * lam));
        else
            res.diagnostic = std::abs(res.partials.size() > 1
                                          ? res.partials.back().second -
                                                res.partials[res.partials.size() - 2].second
                                          : res.value);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Born series
// ---------------------------------------------------------------------------

double BornSeriesSpec::default_cutoff() const {
    double nb = std::pow(static_cast<double>(regime.n_particles), regime.beta);
    double width = 2.0 * pi * nb / potential.support_radius();
    return 8.0 * width;
}

namespace {

// radial interpolation table for vhat(u); linear on a fine uniform grid
struct VhatTable {
    double du, umax;
    std::vector<double> val;

    VhatTable(const RadialPotential& V, double umax_, int n = 200000) : umax(umax_) {
        du = umax / n;
        val.resize(n + 2);
        for (int i = 0; i <= n + 1; ++i) val[i] = fourier_coefficient(V, i * du);
    }
    double operator()(double u) const {
        double t = std::abs(u) / du;
        auto i = static_cast<std::size_t>(t);
        if (i + 1 >= val.size()) return val.back();
        double frac = t - static_cast<double>(i);
        return val[i] * (1.0 - frac) + val[i + 1] * frac;
    }
};

struct OrbitSet {
    int n_max;
    std::vector<std::array<int, 3>> reps;      // ordered 0 <= i <= j <= k
    std::vector<double> weight;
    std::vector<int> rep_index;                // dense (i,j,k) -> rep, i<=j<=k
    std::vector<std::array<int, 3>> points;    // all lattice points in the ball

    explicit OrbitSet(int n) : n_max(n) {
        long m = n + 1;
        rep_index.assign(m * m * m, -1);
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j)
                for (int k = j; k <= n; ++k) {
                    long n2 = static_cast<long>(i) * i + static_cast<long>(j) * j +
                              static_cast<long>(k) * k;
                    if (n2 == 0 || n2 > static_cast<long>(n) * n) continue;
                    rep_index[(static_cast<long>(i) * m + j) * m + k] =
                        static_cast<int>(reps.size());
                    reps.push_back({i, j, k});
                    weight.push_back(orbit_weight(i, j, k));
                }
        for (int i = -n; i <= n; ++i)
            for (int j = -n; j <= n; ++j)
                for (int k = -n; k <= n; ++k) {
                    long n2 = static_cast<long>(i) * i + static_cast<long>(j) * j +
                              static_cast<long>(k) * k;
                    if (n2 == 0 || n2 > static_cast<long>(n) * n) continue;
                    points.push_back({i, j, k});
                }
    }

    int rep_of(int i, int j, int k) const {
        int a = std::abs(i), b = std::abs(j), c = std::abs(k);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        long m = n_max + 1;
        return rep_index[(static_cast<long>(a) * m + b) * m + c];
    }
};

}  // namespace

std::vector<double> born_series(const BornSeriesSpec& spec, double tail_tol_rel) {
    if (!spec.potential.integrable())
        throw domain_error("born_series: non-integrable potential");
    if (spec.order < 1) throw domain_error("born_series: order >= 1 required");

    const double nb = std::pow(static_cast<double>(spec.regime.n_particles), spec.regime.beta);
    const double N = static_cast<double>(spec.regime.n_particles);
    const double cutoff = spec.momentum_cutoff > 0.0 ? spec.momentum_cutoff : spec.default_cutoff();
    const double scaled_width = 2.0 * pi * nb / spec.potential.support_radius();
    if (cutoff < scaled_width)
        throw domain_error("born_series: cutoff below the scaled potential's Fourier width");

    std::vector<double> partials;
    partials.push_back(fourier_coefficient(spec.potential, 0.0));
    if (spec.order == 1) return partials;

    const long n_max = static_cast<long>(std::floor(cutoff / (2.0 * pi)));
    const double u_max = 2.0 * (n_max + 1) * 2.0 * pi / nb;  // covers |p - q|
    VhatTable vh(spec.potential, u_max);

    // cutoff validation: compare the analytic p^-4-envelope tail of the
    // order-2 sum against the tolerance
    {
        double env = 0.0;
        double uc = 2.0 * pi * n_max / nb;
        for (int s = 0; s <= 32; ++s) {
            double u = uc * (1.0 + s / 32.0);
            env = std::max(env, std::abs(vh(u)) * u * u);
        }
        double lam = 2.0 * pi * n_max;
        double tail = env * env * std::pow(nb, 4) / (6.0 * pi * pi * lam * lam * lam);
        double scale = vh(0.0) * vh(0.0) * nb / (4.0 * pi * pi) * 2.0;  // ~ order-2 sum size
        if (tail > tail_tol_rel * scale) {
            double lam_req = std::cbrt(env * env * std::pow(nb, 4) /
                                       (6.0 * pi * pi * tail_tol_rel * scale));
            throw accuracy_error("born_series: cutoff too small for the vhat tail; need |p| <~ " +
                                 std::to_string(lam_req));
        }
    }

    // order 2: octant-reduced direct sum
    {
        const long n2max = n_max * n_max;
        std::vector<double> slab(n_max + 1, 0.0);
        parallel_for(n_max + 1, [&](long i) {
            double s = 0.0;
            for (long j = i; j <= n_max; ++j)
                for (long k = j; k <= n_max; ++k) {
                    long n2 = i * i + j * j + k * k;
                    if (n2 == 0 || n2 > n2max) continue;
                    double p2 = 4.0 * pi * pi * static_cast<double>(n2);
                    double v = vh(2.0 * pi * std::sqrt(static_cast<double>(n2)) / nb);
                    s += orbit_weight(static_cast<int>(i), static_cast<int>(j),
                                      static_cast<int>(k)) * v * v / p2;
                }
            slab[i] = s;
        });
        double sum = 0.0;
        for (double v : slab) sum += v;
        partials.push_back(partials[0] - sum / (2.0 * N));
    }

    if (spec.order == 2) return partials;

    // orders >= 3: iterated kernel psi_{j+1}(p) = sum_q vhat((p-q)/nb)/q^2 psi_j(q)
    // evaluated on octahedral orbit representatives
    OrbitSet orbits(static_cast<int>(n_max));
    const double tp = 2.0 * pi;
    std::vector<double> psi(orbits.reps.size());
    for (std::size_t r = 0; r < orbits.reps.size(); ++r) {
        auto [i, j, k] = orbits.reps[r];
        double n2 = static_cast<double>(i) * i + static_cast<double>(j) * j +
                    static_cast<double>(k) * k;
        psi[r] = vh(tp * std::sqrt(n2) / nb);
    }
    // chi(q) = psi(q)/q^2 cached on all points each iteration
    for (int series_k = 2; series_k < spec.order; ++series_k) {
        std::vector<double> chi(orbits.points.size());
        for (std::size_t t = 0; t < orbits.points.size(); ++t) {
            auto [qi, qj, qk] = orbits.points[t];
            double q2 = tp * tp * (static_cast<double>(qi) * qi + static_cast<double>(qj) * qj +
                                   static_cast<double>(qk) * qk);
            chi[t] = psi[orbits.rep_of(qi, qj, qk)] / q2;
        }
        std::vector<double> next(orbits.reps.size());
        parallel_for(static_cast<long>(orbits.reps.size()), [&](long r) {
            auto [pi_, pj, pk] = orbits.reps[r];
            double s = 0.0;
            for (std::size_t t = 0; t < orbits.points.size(); ++t) {
                auto [qi, qj, qk] = orbits.points[t];
                double di = pi_ - qi, dj = pj - qj, dk = pk - qk;
                double d = std::sqrt(di * di + dj * dj + dk * dk);
                s += vh(tp * d / nb) * chi[t];
            }
            next[r] = s;
        });
        psi = std::move(next);

        // term_k = (-1)^k/(2N)^k sum_p vhat(p/nb)/p^2 psi_k(p)
        double sum = 0.0;
        for (std::size_t r = 0; r < orbits.reps.size(); ++r) {
            auto [i, j, k] = orbits.reps[r];
            double n2 = static_cast<double>(i) * i + static_cast<double>(j) * j +
                        static_cast<double>(k) * k;
            double p2 = tp * tp * n2;
            sum += orbits.weight[r] * vh(tp * std::sqrt(n2) / nb) / p2 * psi[r];
        }
        double sign = (series_k % 2 == 0) ? 1.0 : -1.0;
        double term = sign * sum / std::pow(2.0 * N, series_k);
        partials.push_back(partials.back() + term);
    }
    return partials;
}

// ---------------------------------------------------------------------------
// LHY continuum integral
// ---------------------------------------------------------------------------

LhyResult lhy_integral(double a, double rho) {
    if (a < 0.0 || rho <= 0.0) throw domain_error("lhy_integral: a >= 0 and rho > 0 required");
    if (!(rho * a * a * a < 1e-2))
        throw domain_error("lhy_integral: diluteness rho a^3 < 1e-2 required");
    LhyResult out;
    if (a == 0.0) return out;

    const double v = 8.0 * pi * a * rho;
    const double kscale = std::sqrt(v);
    auto integrand = [&](double k) { return k * k * bracket_with_counterterm(k * k, v); };
    const double K = 2000.0 * kscale;
    double I = integrate(integrand, 0.0, 40.0 * kscale, 1e-11 * std::pow(kscale, 5));
    I += integrate(integrand, 40.0 * kscale, K, 1e-11 * std::pow(kscale, 5));
    // analytic remainder of the p^-4 + p^-6 asymptote
    I += -std::pow(v, 3) / (2.0 * K) + 5.0 * std::pow(v, 4) / (24.0 * K * K * K);

    out.energy_per_particle = -(1.0 / (2.0 * rho)) * I / (2.0 * pi * pi);
    double closed = 4.0 * pi * a * rho * (128.0 / (15.0 * std::sqrt(pi))) *
                    std::sqrt(rho * a * a * a);
    out.lhy_ratio = out.energy_per_particle / closed;
    return out;
}

}  // namespace bosegas
