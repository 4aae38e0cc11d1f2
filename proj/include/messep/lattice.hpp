#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "messep/partitions.hpp"
#include "messep/symmetric.hpp"

namespace messep {

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ring of L sites carrying N exclusion particles.
struct LatticeParams {
    int L = 2;
    int N = 1;

    LatticeParams() = default;
    LatticeParams(int L_, int N_) : L(L_), N(N_) {
        if (L < 2 || N < 1 || N > L - 1)
            throw std::invalid_argument("LatticeParams: need L >= 2, 1 <= N <= L-1");
    }

    /// Half-integer shift making the determinant eigenfunctions single-valued:
    /// 0 for N odd, 1/2 for N even.
    double gamma() const { return (N % 2 == 0) ? 0.5 : 0.0; }

    /// p with N = 2p or N = 2p+1.
    int half() const { return N / 2; }
};

/// Strictly increasing site tuple in {0, ..., L-1}.
using Configuration = std::vector<int>;

inline bool valid_configuration(const Configuration& c, const LatticeParams& par) {
    if (static_cast<int>(c.size()) != par.N) return false;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0 || c[i] >= par.L) return false;
        if (i > 0 && c[i] <= c[i - 1]) return false;
    }
    return true;
}

/// The compact configuration: all particles contiguous around site 0.
inline Configuration compact_configuration(const LatticeParams& par) {
    const int p = par.half();
    Configuration c;
    const int top = (par.N % 2 == 1) ? p : p - 1;
    for (int s = 0; s <= top; ++s) c.push_back(s);
    for (int s = par.L - p; s <= par.L - 1; ++s) c.push_back(s);
    return c;
}

/// Centered integer lift of the minimal partition: x_j = lambda_{N-j} + j - p
/// (0-based j), a strictly increasing window of width < L. The empty
/// partition lifts to (-p, ..., N-1-p), the compact configuration.
inline std::vector<int> lift_from_partition(const Partition& lambda, const LatticeParams& par) {
    if (static_cast<int>(lambda.length()) > par.N || lambda.part(0) > par.L - par.N)
        throw std::invalid_argument("lift_from_partition: partition outside the (L-N) x N box");
    const int p = par.half();
    std::vector<int> x(par.N);
    for (int j = 0; j < par.N; ++j) x[j] = lambda.part(par.N - 1 - j) + j - p;
    return x;
}

inline Configuration config_from_partition(const Partition& lambda, const LatticeParams& par) {
    auto x = lift_from_partition(lambda, par);
    for (int& v : x) v = ((v % par.L) + par.L) % par.L;
    std::sort(x.begin(), x.end());
    return x;
}

/// Minimal partition of a configuration: choose the lift x with x_1 + p
/// nonnegative and minimal, then read off the parts.
inline Partition partition_from_config(const Configuration& xi, const LatticeParams& par) {
    if (!valid_configuration(xi, par))
        throw std::invalid_argument("partition_from_config: invalid configuration");
    const int p = par.half();
    const int N = par.N;
    int best = 0;
    int bestval = ((xi[0] + p) % par.L + par.L) % par.L;
    for (int j = 1; j < N; ++j) {
        const int v = ((xi[j] + p) % par.L + par.L) % par.L;
        if (v < bestval) {
            bestval = v;
            best = j;
        }
    }
    std::vector<int> x(N);
    x[0] = bestval - p;
    for (int i = 1; i < N; ++i) {
        const int prev = xi[(best + i - 1) % N];
        const int cur = xi[(best + i) % N];
        x[i] = x[i - 1] + ((cur - prev) % par.L + par.L) % par.L;
    }
    std::vector<int> parts(N);
    for (int j = 0; j < N; ++j) parts[N - 1 - j] = x[j] - j + p;
    return Partition(std::move(parts));
}

/// All configurations in colexicographic order; the rank function below is
/// the inverse of this enumeration.
inline std::vector<Configuration> enumerate_configurations(const LatticeParams& par,
                                                           std::size_t cap = 200000) {
    double count = 1.0;
    for (int i = 0; i < par.N; ++i) count = count * (par.L - i) / (i + 1);
    if (count > static_cast<double>(cap))
        throw resource_error("enumerate_configurations: state space over cap");
    std::vector<Configuration> out;
    Configuration cur(par.N);
    // colex: the topmost site varies slowest, so rank = sum C(xi_i, i+1)
    std::function<void(int, int)> build = [&](int slot, int maxsite) {
        if (slot < 0) {
            out.push_back(cur);
            return;
        }
        for (int s = slot; s <= maxsite; ++s) {
            cur[slot] = s;
            build(slot - 1, s - 1);
        }
    };
    build(par.N - 1, par.L - 1);
    return out;
}

/// Colex rank: sum of C(xi_i, i+1).
inline std::size_t configuration_rank(const Configuration& xi) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < xi.size(); ++i)
        r += static_cast<std::size_t>(binomial(xi[i], static_cast<int>(i) + 1));
    return r;
}

/// Neighbor list with move multiplicities (L = 2 has double edges).
inline std::vector<std::pair<Configuration, int>> neighbor_configurations(
    const Configuration& xi, const LatticeParams& par) {
    std::vector<std::pair<Configuration, int>> out;
    std::vector<bool> occupied(par.L, false);
    for (int s : xi) occupied[s] = true;
    for (int i = 0; i < par.N; ++i) {
        for (int eps : {+1, -1}) {
            const int t = ((xi[i] + eps) % par.L + par.L) % par.L;
            if (occupied[t]) continue;
            Configuration eta = xi;
            eta[i] = t;
            std::sort(eta.begin(), eta.end());
            bool found = false;
            for (auto& [cfg, mult] : out) {
                if (cfg == eta) {
                    ++mult;
                    found = true;
                    break;
                }
            }
            if (!found) out.emplace_back(std::move(eta), 1);
        }
    }
    return out;
}

/// Evaluation points e^{2 i pi xi_k / L}.
inline RootTuple configuration_roots(const Configuration& xi, const LatticeParams& par) {
    return roots_of_unity(std::span<const int>(xi.data(), xi.size()), par.L);
}

}  // namespace messep
