#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <unordered_map>
#include <vector>

#include "messep/lattice.hpp"
#include "messep/partitions.hpp"
#include "messep/symmetric.hpp"

namespace messep {

/// Positive Perron eigenfunction of the configuration graph, in the printed
/// normalization (it is exactly unit-norm in l^2 over configurations):
///   psi(eta) = 2^{N(N-1)/2} / L^{N/2} prod_{i<j} sin((eta_j - eta_i) pi / L).
inline double perron_value(const Configuration& eta, const LatticeParams& par) {
    double v = std::pow(2.0, 0.5 * par.N * (par.N - 1)) / std::pow(par.L, 0.5 * par.N);
    for (int i = 0; i < par.N; ++i)
        for (int j = i + 1; j < par.N; ++j)
            v *= std::sin((eta[j] - eta[i]) * M_PI / par.L);
    return v;
}

/// Spectral radius of the configuration graph: 2 sin(N pi / L) / sin(pi / L).
inline double perron_radius(const LatticeParams& par) {
    return 2.0 * std::sin(par.N * M_PI / par.L) / std::sin(M_PI / par.L);
}

struct PerronData {
    std::function<double(const Configuration&)> psi;
    double rho;
};

inline PerronData perron(const LatticeParams& par) {
    return {[par](const Configuration& eta) { return perron_value(eta, par); },
            perron_radius(par)};
}

/// Graph eigenvalue attached to a configuration used as a spectral index:
/// rho_xi = 2 sum_i cos(2 pi (xi_i + gamma) / L). Periodic in each entry, so
/// integer lifts may be passed directly.
inline double graph_eigenvalue(std::span<const int> xi, const LatticeParams& par) {
    const double g = par.gamma();
    double s = 0.0;
    for (int v : xi) s += std::cos(2.0 * M_PI * (v + g) / par.L);
    return 2.0 * s;
}

/// MESSEP eigenvalue r_lambda = rho_xi / rho_c for the box partition lambda.
inline double eigenvalue_of(const Partition& lambda, const LatticeParams& par) {
    const auto x = lift_from_partition(lambda, par);
    const auto c = lift_from_partition(Partition{}, par);
    return graph_eigenvalue(std::span<const int>(x.data(), x.size()), par) /
           graph_eigenvalue(std::span<const int>(c.data(), c.size()), par);
}

/// Closed form for the hook eigenvalue r_{n|k}.
inline double hook_eigenvalue(int n, int k, const LatticeParams& par) {
    if (n < 1 || k < 0 || k > n - 1)
        throw std::invalid_argument("hook_eigenvalue: k out of range");
    const double L = par.L;
    return 1.0 - 2.0 * std::sin(M_PI / L) * std::sin(M_PI * n / L) *
                     std::sin(M_PI * par.N / L + M_PI * (n - 2 * k - 1) / L) /
                     std::sin(M_PI * par.N / L);
}

/// Closed form for the double-hook eigenvalue r_{n|k,l}; symmetric in (k, l).
inline double double_hook_eigenvalue(int n, int k, int l, const LatticeParams& par) {
    if (n < 1 || k < 0 || l < 0 || k > n - 1 || l > n - 1)
        throw std::invalid_argument("double_hook_eigenvalue: k, l out of range");
    if (par.L < 2 * n + par.N)
        throw std::invalid_argument("double_hook_eigenvalue: need L >= 2n + N");
    const double L = par.L;
    const double sN = std::sin(M_PI * par.N / L);
    return 1.0 - 2.0 * std::sin(M_PI / L) * std::sin(M_PI * n / L) *
                     (std::sin(M_PI * par.N / L + M_PI * (n - 2 * k - 1) / L) +
                      std::sin(M_PI * par.N / L + M_PI * (n - 2 * l - 1) / L)) /
                     sN;
}

/// Gap of the kernel: 1 minus the second-largest eigenvalue, which is
/// attained by the one-box partition (shift the top particle of the compact
/// configuration by one site).
inline double spectral_gap(const LatticeParams& par) {
    return 1.0 - eigenvalue_of(Partition{1}, par);
}

struct GapRow {
    int L, N;
    double gap;
    double discrepancy;  // |gap - 2 pi^2 / L^2|
};

inline std::vector<GapRow> gap_asymptotics_check(int L_min, int L_max) {
    std::vector<GapRow> rows;
    for (int L = L_min; L <= L_max; ++L) {
        const LatticeParams par(L, std::max(1, L / 2));
        const double gap = spectral_gap(par);
        rows.push_back({L, par.N, gap, std::abs(gap - 2.0 * M_PI * M_PI / (L * L))});
    }
    return rows;
}

struct EigenPair {
    Partition lambda;
    double eigenvalue;
    std::vector<cplx> values;  // s_lambda over the configuration list
};

/// Dense kernel with its complete eigendata over all C(L,N) configurations.
struct SpectralKernel {
    LatticeParams params;
    std::vector<Configuration> configs;
    std::vector<double> P;    // row-major, states x states
    std::vector<double> psi;  // Perron values per state
    std::vector<double> mu;   // reversible probability psi^2 / Z
    double rho = 0.0;
    std::vector<EigenPair> eigen;

    std::size_t states() const { return configs.size(); }

    std::size_t index_of(const Configuration& xi) const { return configuration_rank(xi); }

    double entry(std::size_t i, std::size_t j) const { return P[i * states() + j]; }

    /// P^steps f(eta) through the spectral sum.
    cplx semigroup_apply(const std::vector<cplx>& f, long long steps,
                         const Configuration& eta) const {
        const std::size_t n = states();
        const std::size_t target = index_of(eta);
        cplx out = 0.0;
        for (const auto& ep : eigen) {
            cplx coeff = 0.0;
            for (std::size_t s = 0; s < n; ++s)
                coeff += mu[s] * f[s] * std::conj(ep.values[s]);
            out += std::pow(ep.eigenvalue, static_cast<double>(steps)) * coeff *
                   ep.values[target];
        }
        return out;
    }

    /// One dense application of P to a complex vector.
    std::vector<cplx> apply(const std::vector<cplx>& f) const {
        const std::size_t n = states();
        std::vector<cplx> out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = 0.0;
            const double* row = &P[i * n];
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * f[j];
            out[i] = acc;
        }
        return out;
    }
};

/// Build the full kernel. States are capped (dense storage).
inline SpectralKernel build_kernel(const LatticeParams& par, std::size_t cap = 200000) {
    SpectralKernel k;
    k.params = par;
    k.configs = enumerate_configurations(par, cap);
    const std::size_t n = k.configs.size();
    if (n > cap) throw resource_error("build_kernel: state space over cap");
    k.rho = perron_radius(par);
    k.psi.resize(n);
    k.mu.resize(n);
    double Z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        k.psi[i] = perron_value(k.configs[i], par);
        Z += k.psi[i] * k.psi[i];
    }
    for (std::size_t i = 0; i < n; ++i) k.mu[i] = k.psi[i] * k.psi[i] / Z;
    k.P.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [eta, mult] : neighbor_configurations(k.configs[i], par)) {
            const std::size_t j = configuration_rank(eta);
            k.P[i * n + j] = mult * k.psi[j] / (k.rho * k.psi[i]);
        }
    }
    for (const auto& lambda : enumerate_box_partitions(par.L - par.N, par.N)) {
        EigenPair ep;
        ep.lambda = lambda;
        ep.eigenvalue = eigenvalue_of(lambda, par);
        ep.values.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            ep.values[i] = schur_eval(lambda, configuration_roots(k.configs[i], par));
        k.eigen.push_back(std::move(ep));
    }
    return k;
}

/// Probability that the N-particle simple walk stays collision-free for n
/// more steps: (2N)^{-n} A^n 1 (xi).
inline double survival_probability(const Configuration& xi, long long n,
                                   const LatticeParams& par, std::size_t cap = 200000) {
    const auto configs = enumerate_configurations(par, cap);
    const std::size_t states = configs.size();
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(states);
    for (std::size_t i = 0; i < states; ++i)
        for (const auto& [eta, mult] : neighbor_configurations(configs[i], par))
            adj[i].emplace_back(configuration_rank(eta), mult);
    std::vector<double> v(states, 1.0), w(states);
    for (long long step = 0; step < n; ++step) {
        for (std::size_t i = 0; i < states; ++i) {
            double acc = 0.0;
            for (const auto& [j, mult] : adj[i]) acc += mult * v[j];
            w[i] = acc / (2.0 * par.N);
        }
        std::swap(v, w);
    }
    return v[configuration_rank(xi)];
}

}  // namespace messep
