#pragma once

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <thread>
#include <variant>
#include <vector>

#include "messep/lattice.hpp"
#include "messep/rng.hpp"
#include "messep/spectral.hpp"

namespace messep {

/// sin(pi d / L) for integer d, |d| <= L+1.
class SineTable {
public:
    explicit SineTable(int L) : L_(L), table_(static_cast<std::size_t>(L) + 2) {
        for (int d = 0; d <= L + 1; ++d) table_[d] = std::sin(M_PI * d / L);
    }

    double operator()(long long d) const {
        if (d >= 0) return table_[static_cast<std::size_t>(d)];
        return -table_[static_cast<std::size_t>(-d)];
    }

    int L() const { return L_; }

private:
    int L_;
    std::vector<double> table_;
};

/// Chain state on the integer lift: strictly increasing positions with
/// x_N < x_1 + L. Projecting mod L and sorting recovers the configuration.
struct ChainState {
    LatticeParams params;
    std::vector<long long> lift;
    long long step_count = 0;

    Configuration config() const {
        Configuration c(lift.size());
        for (std::size_t i = 0; i < lift.size(); ++i)
            c[i] = static_cast<int>(((lift[i] % params.L) + params.L) % params.L);
        std::sort(c.begin(), c.end());
        return c;
    }

    bool well_formed() const {
        for (std::size_t i = 1; i < lift.size(); ++i)
            if (lift[i] <= lift[i - 1]) return false;
        return lift.empty() || lift.back() < lift.front() + params.L;
    }
};

inline ChainState state_from_config(const Configuration& xi, const LatticeParams& par) {
    if (!valid_configuration(xi, par))
        throw std::invalid_argument("state_from_config: invalid configuration");
    ChainState s{par, std::vector<long long>(xi.begin(), xi.end()), 0};
    return s;
}

namespace detail {

struct Move {
    int particle;
    int dir;  // +1 or -1
    double weight;
};

/// Admissible moves with weights psi(eta)/psi(xi), each an O(N) product of
/// sine ratios on the lift.
inline void collect_moves(const ChainState& st, const SineTable& sines,
                          std::vector<Move>& out) {
    out.clear();
    const auto& x = st.lift;
    const int N = static_cast<int>(x.size());
    const long long L = st.params.L;
    for (int i = 0; i < N; ++i) {
        for (int dir : {+1, -1}) {
            const long long target = x[i] + dir;
            if (N > 1) {
                const long long up = x[(i + 1) % N] + (i + 1 == N ? L : 0);
                const long long dn = x[(i - 1 + N) % N] - (i == 0 ? L : 0);
                if (dir > 0 && target >= up) continue;
                if (dir < 0 && target <= dn) continue;
            }
            double num = 1.0, den = 1.0;
            for (int j = 0; j < N; ++j) {
                if (j == i) continue;
                num *= sines(target - x[j]);
                den *= sines(x[i] - x[j]);
            }
            out.push_back({i, dir, std::abs(num / den)});
        }
    }
}

}  // namespace detail

/// One exact MESSEP step: sample a neighbor with probability
/// psi(eta) / (rho psi(xi)) by inverse CDF over the admissible moves.
inline void step(ChainState& st, const SineTable& sines, Rng& rng) {
    static thread_local std::vector<detail::Move> moves;
    detail::collect_moves(st, sines, moves);
    double total = 0.0;
    for (const auto& m : moves) total += m.weight;
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t pick = moves.size() - 1;
    for (std::size_t i = 0; i < moves.size(); ++i) {
        acc += moves[i].weight;
        if (u < acc) {
            pick = i;
            break;
        }
    }
    st.lift[moves[pick].particle] += moves[pick].dir;
    ++st.step_count;
    assert(st.well_formed());
}

/// Total outgoing weight; equals the spectral radius rho for every state
/// (used as a consistency check, not assumed by the sampler).
inline double outgoing_weight(const ChainState& st, const SineTable& sines) {
    std::vector<detail::Move> moves;
    detail::collect_moves(st, sines, moves);
    double total = 0.0;
    for (const auto& m : moves) total += m.weight;
    return total;
}

/// Angles and truncated complex moments of the empirical measure.
struct EmpiricalMeasure {
    std::vector<double> angles;       // 2 pi X_k / L in [0, 2 pi)
    std::vector<cplx> moments;        // M_n, n = 1..n_max; M_0 = 1 implicit

    static EmpiricalMeasure from_state(const ChainState& st, int n_max) {
        EmpiricalMeasure em;
        const int L = st.params.L;
        em.angles.reserve(st.lift.size());
        for (long long x : st.lift) {
            const long long site = ((x % L) + L) % L;
            em.angles.push_back(2.0 * M_PI * site / L);
        }
        em.moments.assign(n_max, cplx(0.0));
        for (double a : em.angles)
            for (int n = 1; n <= n_max; ++n)
                em.moments[n - 1] += cplx(std::cos(n * a), std::sin(n * a));
        const double invN = 1.0 / static_cast<double>(st.lift.size());
        for (auto& m : em.moments) m *= invN;
        return em;
    }
};

/// Initial conditions: explicit configuration, maximally packed block, a
/// deterministic quantile placement from a density profile (the default
/// realization of a convergent initial profile), or i.i.d. placement with
/// re-draws on exclusion.
struct InitialExplicit {
    Configuration config;
};
struct InitialPacked {};
struct InitialQuantile {
    std::vector<double> density;  // samples of f0 on a uniform [0, 2 pi) grid
};
struct InitialRejection {
    std::vector<double> density;
};
using InitialCondition =
    std::variant<InitialExplicit, InitialPacked, InitialQuantile, InitialRejection>;

inline ChainState make_initial_state(const InitialCondition& ic, const LatticeParams& par,
                                     Rng& rng) {
    if (std::holds_alternative<InitialExplicit>(ic))
        return state_from_config(std::get<InitialExplicit>(ic).config, par);
    if (std::holds_alternative<InitialPacked>(ic)) {
        const int p = par.half();
        ChainState st{par, {}, 0};
        for (int j = 0; j < par.N; ++j) st.lift.push_back(j - p);
        return st;
    }
    const auto cumulative = [&](const std::vector<double>& density) {
        std::vector<double> cdf(density.size() + 1, 0.0);
        for (std::size_t i = 0; i < density.size(); ++i)
            cdf[i + 1] = cdf[i] + std::max(0.0, density[i]);
        for (auto& v : cdf) v /= cdf.back();
        return cdf;
    };
    if (std::holds_alternative<InitialQuantile>(ic)) {
        const auto& density = std::get<InitialQuantile>(ic).density;
        const auto cdf = cumulative(density);
        const std::size_t M = density.size();
        std::vector<bool> occupied(par.L, false);
        Configuration sites;
        for (int k = 0; k < par.N; ++k) {
            const double q = (k + 0.5) / par.N;
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), q);
            const std::size_t cell = std::min<std::size_t>(it - cdf.begin() - 1, M - 1);
            const double frac = (q - cdf[cell]) / std::max(1e-300, cdf[cell + 1] - cdf[cell]);
            int site = static_cast<int>(std::floor((cell + frac) / M * par.L)) % par.L;
            while (occupied[site]) site = (site + 1) % par.L;  // resolve ties upward
            occupied[site] = true;
            sites.push_back(site);
        }
        std::sort(sites.begin(), sites.end());
        return state_from_config(sites, par);
    }
    const auto& density = std::get<InitialRejection>(ic).density;
    const auto cdf = cumulative(density);
    const std::size_t M = density.size();
    std::vector<bool> occupied(par.L, false);
    Configuration sites;
    while (static_cast<int>(sites.size()) < par.N) {
        const double q = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), q);
        const std::size_t cell = std::min<std::size_t>(it - cdf.begin() - 1, M - 1);
        const int site = static_cast<int>(static_cast<double>(cell) / M * par.L) % par.L;
        if (occupied[site]) continue;  // exclusion: re-draw
        occupied[site] = true;
        sites.push_back(site);
    }
    std::sort(sites.begin(), sites.end());
    return state_from_config(sites, par);
}

struct RunSpec {
    LatticeParams params;
    InitialCondition initial = InitialPacked{};
    std::vector<double> record_times;  // diffusive times t; recorded at floor(L^2 t)
    std::size_t paths = 1;
    std::uint64_t seed = 1;
    int n_max = 8;
    int threads = 1;
    bool keep_angles = false;
};

struct PathRecord {
    std::size_t path_id;
    std::vector<EmpiricalMeasure> records;   // one per requested time
    std::vector<double> winding;             // per particle, final time
};

/// Winding identity value for a single-particle lift path with +-1 steps:
///   (2 pi / L) / sin(2 pi / L) * sum Im(e^{2 i pi (s_{k+1} - s_k) / L}).
inline double winding_value(std::span<const long long> path, int L) {
    if (L < 3) throw std::invalid_argument("winding_value: need L >= 3");
    double im_sum = 0.0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const long long d = path[k + 1] - path[k];
        if (d != 1 && d != -1) throw std::invalid_argument("winding_value: step not +-1");
        im_sum += std::sin(2.0 * M_PI * d / L);
    }
    return (2.0 * M_PI / L) / std::sin(2.0 * M_PI / L) * im_sum;
}

/// Run an ensemble; each path owns stream (seed, path_id). Deterministic
/// regardless of the thread count.
inline std::vector<PathRecord> run(const RunSpec& spec) {
    std::vector<long long> record_steps;
    for (double t : spec.record_times) {
        if (t < 0) throw std::invalid_argument("run: negative record time");
        record_steps.push_back(static_cast<long long>(
            std::floor(static_cast<double>(spec.params.L) * spec.params.L * t)));
    }
    if (!std::is_sorted(record_steps.begin(), record_steps.end()))
        throw std::invalid_argument("run: record times must be increasing");

    std::vector<PathRecord> out(spec.paths);
    const SineTable sines(spec.params.L);

    auto run_path = [&](std::size_t p) {
        Rng rng(spec.seed, p);
        ChainState st = make_initial_state(spec.initial, spec.params, rng);
        const std::vector<long long> start = st.lift;
        PathRecord rec;
        rec.path_id = p;
        for (long long target : record_steps) {
            while (st.step_count < target) step(st, sines, rng);
            auto em = EmpiricalMeasure::from_state(st, spec.n_max);
            if (!spec.keep_angles) em.angles.clear();
            rec.records.push_back(std::move(em));
        }
        rec.winding.resize(st.lift.size());
        for (std::size_t i = 0; i < st.lift.size(); ++i)
            rec.winding[i] = 2.0 * M_PI * (st.lift[i] - start[i]) / spec.params.L;
        out[p] = std::move(rec);
    };

    const int workers = std::max(1, spec.threads);
    if (workers == 1) {
        for (std::size_t p = 0; p < spec.paths; ++p) run_path(p);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t p = next++; p < spec.paths; p = next++) run_path(p);
            });
        for (auto& th : pool) th.join();
    }
    return out;
}

/// Total-variation distance between the exact conditioned simple-walk path
/// law (horizon m) and the exact MESSEP path law, over length-n paths from
/// xi0. Both laws are computed by dynamic programming, no sampling.
inline double conditioned_srw_compare(const Configuration& xi0, int n, int m,
                                      const LatticeParams& par, std::size_t cap = 200000) {
    if (m < n) throw std::invalid_argument("conditioned_srw_compare: need m >= n");
    const auto configs = enumerate_configurations(par, cap);
    const std::size_t states = configs.size();
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(states);
    for (std::size_t i = 0; i < states; ++i)
        for (const auto& [eta, mult] : neighbor_configurations(configs[i], par))
            adj[i].emplace_back(configuration_rank(eta), mult);

    // tail weights A^{m-n} 1, rescaled freely: the conditioned path law is
    // q(path) = prod(mult) * tail(end) normalized over all length-n paths,
    // since A^m 1(start) is exactly that normalizer
    std::vector<double> tail(states, 1.0), w(states);
    for (int j = 1; j <= m - n; ++j) {
        for (std::size_t i = 0; i < states; ++i) {
            double acc = 0.0;
            for (const auto& [t, mult] : adj[i]) acc += mult * tail[t];
            w[i] = acc;
        }
        std::swap(tail, w);
        const double scale = *std::max_element(tail.begin(), tail.end());
        for (auto& x : tail) x /= scale;
    }
    const std::size_t start = configuration_rank(xi0);

    const double rho = perron_radius(par);
    std::vector<double> psi(states);
    for (std::size_t i = 0; i < states; ++i) psi[i] = perron_value(configs[i], par);

    double z_cond = 0.0;
    std::function<void(std::size_t, int, double)> total = [&](std::size_t cur, int depth,
                                                              double mults) {
        if (depth == n) {
            z_cond += mults * tail[cur];
            return;
        }
        for (const auto& [t, mult] : adj[cur]) total(t, depth + 1, mults * mult);
    };
    total(start, 0, 1.0);

    double tv = 0.0;
    std::function<void(std::size_t, int, double)> dfs = [&](std::size_t cur, int depth,
                                                            double mults) {
        if (depth == n) {
            const double p_cond = mults * tail[cur] / z_cond;
            const double p_me = mults * std::pow(rho, -n) * psi[cur] / psi[start];
            tv += std::abs(p_cond - p_me);
            return;
        }
        for (const auto& [t, mult] : adj[cur]) dfs(t, depth + 1, mults * mult);
    };
    dfs(start, 0, 1.0);
    return 0.5 * tv;
}

}  // namespace messep
