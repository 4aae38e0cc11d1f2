#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "messep/lattice.hpp"
#include "messep/partitions.hpp"
#include "messep/rng.hpp"
#include "messep/spectral.hpp"
#include "messep/symmetric.hpp"

namespace messep {

/// Interacting diffusion on the closed Weyl chamber
/// x_1 <= ... <= x_N <= x_1 + 2 pi, with cotangent repulsion.
struct DysonState {
    std::vector<double> angles;
    double time = 0.0;

    int N() const { return static_cast<int>(angles.size()); }

    bool ordered_strict() const {
        for (std::size_t i = 1; i < angles.size(); ++i)
            if (angles[i] <= angles[i - 1]) return false;
        return angles.empty() || angles.back() < angles.front() + 2.0 * M_PI;
    }

    bool ordered_weak() const {
        for (std::size_t i = 1; i < angles.size(); ++i)
            if (angles[i] < angles[i - 1]) return false;
        return angles.empty() || angles.back() <= angles.front() + 2.0 * M_PI;
    }
};

namespace detail {

inline std::vector<double> drift(const std::vector<double>& x) {
    const int N = static_cast<int>(x.size());
    std::vector<double> d(N, 0.0);
    const double c = 2.0 * M_PI * M_PI / N;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (j == i) continue;
            d[i] += c / std::tan(0.5 * (x[i] - x[j]));
        }
    return d;
}

}  // namespace detail

/// One Euler-Maruyama update with diffusion 2 pi / sqrt(N); a proposal that
/// breaks the strict ordering is discarded and the interval is retried as
/// two half steps (fresh noise), down to dt_min.
inline void sde_step(DysonState& st, double dt, Rng& rng, double dt_min = 1e-8) {
    if (dt <= 0.0) throw std::invalid_argument("sde_step: dt <= 0");
    const int N = st.N();
    const double sigma = 2.0 * M_PI / std::sqrt(static_cast<double>(N));
    if (N == 1) {
        st.angles[0] += sigma * std::sqrt(dt) * rng.normal();
        st.time += dt;
        return;
    }
    // boundary start: creep in with the minimum step until strictly interior
    if (!st.ordered_strict()) {
        for (int attempts = 0; attempts < 1000 && !st.ordered_strict(); ++attempts) {
            std::vector<double> y = st.angles;
            const double eps = dt_min;
            for (int i = 0; i < N; ++i) {
                double repel = 0.0;
                for (int j = 0; j < N; ++j) {
                    if (j == i) continue;
                    const double gap = st.angles[i] - st.angles[j];
                    if (gap == 0.0) repel += (i > j ? 1.0 : -1.0);
                }
                y[i] += std::sqrt(eps) * (sigma * rng.normal() + repel);
            }
            std::sort(y.begin(), y.end());
            if (y.back() - y.front() < 2.0 * M_PI) {
                DysonState cand{y, st.time};
                if (cand.ordered_strict()) st.angles = y;
            }
        }
        if (!st.ordered_strict())
            throw std::runtime_error("sde_step: unable to leave the boundary");
    }
    std::function<void(double)> advance = [&](double h) {
        const auto d = detail::drift(st.angles);
        std::vector<double> y(N);
        const double root_h = std::sqrt(h);
        for (int i = 0; i < N; ++i)
            y[i] = st.angles[i] + d[i] * h + sigma * root_h * rng.normal();
        DysonState cand{y, 0.0};
        if (cand.ordered_strict()) {
            st.angles = std::move(y);
            st.time += h;
            return;
        }
        if (h / 2.0 < dt_min) {
            // at the floor: keep the position, advance the clock
            st.time += h;
            return;
        }
        advance(h / 2.0);
        advance(h / 2.0);
    };
    advance(dt);
}

/// Spectral index: strictly increasing N-tuple of integers.
using SpectralIndex = std::vector<int>;

/// Ground index (-p, ..., 0, ..., p) resp. (-p, ..., p-1).
inline SpectralIndex ground_index(int N) {
    const int p = N / 2;
    SpectralIndex c(N);
    for (int i = 0; i < N; ++i) c[i] = i - p;
    return c;
}

/// Generator eigenvalue E_m = (2 pi^2 / N) sum((m_i + gamma)^2 - (c_i + gamma)^2).
inline double energy(const SpectralIndex& m, int N) {
    if (static_cast<int>(m.size()) != N) throw std::invalid_argument("energy: size mismatch");
    for (std::size_t i = 1; i < m.size(); ++i)
        if (m[i] <= m[i - 1]) throw std::invalid_argument("energy: index not increasing");
    const double g = (N % 2 == 0) ? 0.5 : 0.0;
    const auto c = ground_index(N);
    double s = 0.0;
    for (int i = 0; i < N; ++i)
        s += (m[i] + g) * (m[i] + g) - (c[i] + g) * (c[i] + g);
    return 2.0 * M_PI * M_PI / N * s;
}

/// Eigenfunction parameters: f_m(x) = e^{i delta sum x} s_lambda(e^{ix}) with
/// the minimal lambda (last part zero).
struct EigenObservable {
    Partition lambda;
    int delta = 0;

    SpectralIndex index(int N) const {
        const int p = N / 2;
        const int ell = delta - p;
        SpectralIndex m(N);
        for (int i = 0; i < N; ++i) m[i] = lambda.part(N - 1 - i) + i + ell;
        return m;
    }

    static EigenObservable from_index(const SpectralIndex& m) {
        const int N = static_cast<int>(m.size());
        const int p = N / 2;
        std::vector<int> parts(N);
        for (int j = 0; j < N; ++j) parts[j] = m[N - 1 - j] - m[0] - (N - 1 - j);
        return {Partition(std::move(parts)), p + m[0]};
    }

    cplx operator()(std::span<const double> x) const {
        double phase = 0.0;
        std::vector<cplx> z;
        z.reserve(x.size());
        for (double a : x) {
            phase += a;
            z.emplace_back(std::cos(a), std::sin(a));
        }
        const cplx rot(std::cos(delta * phase), std::sin(delta * phase));
        return rot * schur_eval(lambda, std::span<const cplx>(z));
    }
};

/// All spectral indices with E_m <= e_max.
inline std::vector<SpectralIndex> spectral_indices_below(int N, double e_max) {
    const double g = (N % 2 == 0) ? 0.5 : 0.0;
    const auto c = ground_index(N);
    double ground = 0.0;
    for (int i = 0; i < N; ++i) ground += (c[i] + g) * (c[i] + g);
    const double cap = e_max * N / (2.0 * M_PI * M_PI) + ground;
    // (m_i + g)^2 <= cap for each coordinate
    const int bound = static_cast<int>(std::floor(std::sqrt(std::max(0.0, cap)) + 1.0));
    std::vector<SpectralIndex> out;
    SpectralIndex cur(N);
    std::function<void(int, int, double)> rec = [&](int slot, int low, double used) {
        if (slot == N) {
            out.push_back(cur);
            return;
        }
        for (int v = low; v <= bound; ++v) {
            const double q = (v + g) * (v + g);
            if (used + q > cap + 1e-9) {
                if (v + g > 0) break;  // increasing in v beyond here
                continue;
            }
            cur[slot] = v;
            rec(slot + 1, v + 1, used + q);
        }
    };
    rec(0, -bound - 1, 0.0);
    std::vector<SpectralIndex> filtered;
    for (auto& m : out)
        if (energy(m, N) <= e_max + 1e-12) filtered.push_back(std::move(m));
    return filtered;
}

/// Vandermonde-squared stationary density (CUE eigenangles), unnormalized.
inline double cue_density(std::span<const double> x) {
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const double s = 2.0 * std::sin(0.5 * (x[j] - x[i]));
            v *= s * s;
        }
    return v;
}

/// Positive reference eigenfunction Psi(x) ~ prod sin((x_j - x_i)/2),
/// normalized as the square root of the stationary density.
inline double weyl_ground(std::span<const double> x) {
    const int N = static_cast<int>(x.size());
    double v = std::pow(2.0, 0.5 * N * (N - 1)) / std::pow(2.0 * M_PI, 0.5 * N);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) v *= std::sin(0.5 * (x[j] - x[i]));
    return v;
}

namespace detail {

/// det(e^{i (m_k + gamma) x_l}) / (2 pi)^{N/2}.
inline cplx weyl_eigenfunction(const SpectralIndex& m, std::span<const double> x) {
    const int N = static_cast<int>(m.size());
    const double g = (N % 2 == 0) ? 0.5 : 0.0;
    std::vector<cplx> mat(static_cast<std::size_t>(N) * N);
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
            const double a = (m[k] + g) * x[l];
            mat[k * N + l] = cplx(std::cos(a), std::sin(a));
        }
    return determinant(mat, N) / std::pow(2.0 * M_PI, 0.5 * N);
}

}  // namespace detail

struct SemigroupOptions {
    double e_max = 200.0;
    int quadrature_points = 48;  // per dimension, trapezoid on the torus
};

/// Expectation E_x[f(Xi_t)] for an eigen-family observable: a single exact
/// term e^{-E_m t} f(x).
inline cplx semigroup_moment(const EigenObservable& f, double t,
                             std::span<const double> start) {
    const int N = static_cast<int>(start.size());
    return std::exp(-energy(f.index(N), N) * t) * f(start);
}

/// Truncated eigen-expansion of a symmetric observable. Coefficients come
/// from torus quadrature (trapezoid, exact for trigonometric polynomials
/// below the node count); evaluation advances each mode by e^{-E_m t}.
struct EigenExpansion {
    int N = 0;
    std::vector<SpectralIndex> indices;
    std::vector<double> energies;
    std::vector<EigenObservable> modes;
    std::vector<cplx> coeffs;

    cplx evaluate(double t, std::span<const double> x) const {
        cplx out = 0.0;
        for (std::size_t q = 0; q < indices.size(); ++q)
            out += std::exp(-energies[q] * t) * coeffs[q] * modes[q](x);
        return out;
    }
};

inline EigenExpansion expand_observable(const std::function<cplx(std::span<const double>)>& f,
                                        int N, const SemigroupOptions& opts = {}) {
    EigenExpansion ex;
    ex.N = N;
    ex.indices = spectral_indices_below(N, opts.e_max);
    const int M = opts.quadrature_points;
    const double h = 2.0 * M_PI / M;

    // unit-modulus constant relating the ground determinant to the positive
    // reference product, fixed once at a generic interior point
    std::vector<double> ref(N);
    for (int i = 0; i < N; ++i) ref[i] = 0.31 + 5.3 * i / N;
    const cplx epsilon = detail::weyl_eigenfunction(ground_index(N), ref) / weyl_ground(ref);

    // integrate f conj(Psi_m) Psi over the ordered chamber = (1/N!) times
    // the full-torus integral of the symmetrized integrand
    ex.coeffs.assign(ex.indices.size(), 0.0);
    std::vector<double> x(N);
    std::vector<int> idx(N, 0);
    const double cell = std::pow(h, N);
    while (true) {
        for (int i = 0; i < N; ++i) x[i] = idx[i] * h;
        const double gv = weyl_ground(x);
        if (gv != 0.0) {
            const cplx fv = f(std::span<const double>(x)) * gv * cell;
            for (std::size_t q = 0; q < ex.indices.size(); ++q)
                ex.coeffs[q] += fv * std::conj(detail::weyl_eigenfunction(ex.indices[q], x));
        }
        int d = N - 1;
        while (d >= 0 && ++idx[d] == M) idx[d--] = 0;
        if (d < 0) break;
    }
    const double inv_fact = 1.0 / factorial(N);
    for (std::size_t q = 0; q < ex.indices.size(); ++q) {
        ex.coeffs[q] *= epsilon * inv_fact;
        ex.energies.push_back(energy(ex.indices[q], N));
        ex.modes.push_back(EigenObservable::from_index(ex.indices[q]));
    }
    return ex;
}

/// Expectation E_x[f(Xi_t)] for a general symmetric observable.
inline cplx semigroup_moment(const std::function<cplx(std::span<const double>)>& f, double t,
                             std::span<const double> start,
                             const SemigroupOptions& opts = {}) {
    const int N = static_cast<int>(start.size());
    return expand_observable(f, N, opts).evaluate(t, start);
}

struct CompareRow {
    int L;
    cplx discrete;
    cplx continuous;
    double abs_err;
};

/// Exact discrete marginal expectation of an eigen-family observable after
/// floor(L^2 t) kernel steps versus the diffusion value at the matched
/// diffusive time floor(L^2 t) / L^2, per lattice size. Matching the times
/// isolates the genuine O(1/L^2) eigenvalue error from the step-rounding
/// artifact. The start is the lattice configuration nearest to the given
/// angles.
inline std::vector<CompareRow> low_density_compare(std::span<const int> L_values, int N,
                                                   double t, const EigenObservable& f,
                                                   std::span<const double> start_angles) {
    std::vector<CompareRow> rows;
    for (int L : L_values) {
        const LatticeParams par(L, N);
        const auto m = f.index(N);
        // discrete eigenvalue by periodicity of the cosine sum
        const double r = graph_eigenvalue(std::span<const int>(m.data(), m.size()), par) /
                         graph_eigenvalue(
                             std::span<const int>(lift_from_partition(Partition{}, par).data(),
                                                  static_cast<std::size_t>(N)),
                             par);
        std::vector<double> snapped(start_angles.size());
        for (std::size_t i = 0; i < start_angles.size(); ++i) {
            const int site = static_cast<int>(std::lround(start_angles[i] * L / (2.0 * M_PI)));
            snapped[i] = 2.0 * M_PI * site / L;
        }
        const long long steps =
            static_cast<long long>(std::floor(static_cast<double>(L) * L * t));
        const double matched_t = static_cast<double>(steps) / (static_cast<double>(L) * L);
        const cplx discrete = std::pow(r, static_cast<double>(steps)) *
                              f(std::span<const double>(snapped));
        const cplx continuous = semigroup_moment(f, matched_t, std::span<const double>(snapped));
        rows.push_back({L, discrete, continuous, std::abs(discrete - continuous)});
    }
    return rows;
}

}  // namespace messep
