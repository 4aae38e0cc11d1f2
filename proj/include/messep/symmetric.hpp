#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "messep/characters.hpp"
#include "messep/partitions.hpp"

namespace messep {

using cplx = std::complex<double>;

struct degenerate_evaluation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// N complex evaluation points, usually on the unit circle. `order` is the
/// ambient root-of-unity order when the tuple comes from a lattice
/// configuration (0 when unattached).
struct RootTuple {
    std::vector<cplx> points;
    int order = 0;

    std::size_t size() const { return points.size(); }

    bool unit_modulus(double tol = 1e-12) const {
        for (const auto& z : points)
            if (std::abs(std::abs(z) - 1.0) > tol) return false;
        return true;
    }

    bool pairwise_distinct(double tol = 0.0) const {
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (std::abs(points[i] - points[j]) <= tol) return false;
        return true;
    }
};

inline RootTuple roots_of_unity(std::span<const int> exponents, int order) {
    RootTuple t;
    t.order = order;
    t.points.reserve(exponents.size());
    for (int e : exponents) {
        const double a = 2.0 * M_PI * e / order;
        t.points.emplace_back(std::cos(a), std::sin(a));
    }
    return t;
}

namespace detail {

/// Determinant by complex LU with partial pivoting (in place).
inline cplx determinant(std::vector<cplx>& a, int n) {
    cplx det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        double best = std::abs(a[c * n + c]);
        for (int r = c + 1; r < n; ++r) {
            const double v = std::abs(a[r * n + c]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
            det = -det;
        }
        det *= a[c * n + c];
        for (int r = c + 1; r < n; ++r) {
            const cplx f = a[r * n + c] / a[c * n + c];
            for (int j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
        }
    }
    return det;
}

inline cplx ipow(cplx z, long long e) {
    if (e < 0) return 1.0 / ipow(z, -e);
    cplx r = 1.0, b = z;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// Sum over semistandard tableaux of (possibly skew) shape lambda/mu with
/// entries in 1..N of the content monomials. Exponential in |shape|; used
/// as a fallback for near-degenerate points and as a direct evaluator.
inline cplx tableau_sum(const Partition& lambda, const Partition& mu,
                        std::span<const cplx> z) {
    const int N = static_cast<int>(z.size());
    const int rows = static_cast<int>(lambda.length());
    if (!lambda.contains(mu)) return 0.0;
    if (lambda == mu) return 1.0;
    // fill[r][c] for mu.part(r) <= c < lambda.part(r)
    std::vector<std::vector<int>> fill(rows);
    for (int r = 0; r < rows; ++r) fill[r].assign(lambda.part(r), 0);
    cplx total = 0.0;
    std::function<void(int, int, cplx)> rec = [&](int r, int c, cplx mono) {
        if (r == rows) {
            total += mono;
            return;
        }
        if (c >= lambda.part(r)) {
            rec(r + 1, r + 1 < rows ? mu.part(r + 1) : 0, mono);
            return;
        }
        const int lo_row = (c > mu.part(r) && c > 0) ? fill[r][c - 1] : 1;
        int lo = lo_row;
        if (r > 0 && c < lambda.part(r - 1) && c >= mu.part(r - 1))
            lo = std::max(lo, fill[r - 1][c] + 1);  // strictly increasing columns
        for (int v = lo; v <= N; ++v) {
            fill[r][c] = v;
            rec(r, c + 1, mono * z[v - 1]);
        }
    };
    rec(0, mu.part(0), 1.0);
    return total;
}

}  // namespace detail

/// Number of semistandard tableaux of shape lambda with entries <= N:
/// s_lambda(1,...,1) by the classical specialization product.
inline double schur_all_ones(const Partition& lambda, int N) {
    if (static_cast<int>(lambda.length()) > N) return 0.0;
    double v = 1.0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            v *= static_cast<double>(lambda.part(i) - lambda.part(j) + j - i) / (j - i);
    return v;
}

struct SchurOptions {
    double vandermonde_floor = 1e-10;  // below this, switch to the tableau path
    int tableau_max_weight = 8;
};

/// Schur polynomial s_lambda at the points z, by the determinant ratio
/// det(z_j^{lambda_i + N - i}) / det(z_j^{N - i}). Falls back to the tableau
/// sum when the Vandermonde denominator is too small, for small |lambda|.
inline cplx schur_eval(const Partition& lambda, std::span<const cplx> z,
                       const SchurOptions& opts = {}) {
    const int N = static_cast<int>(z.size());
    if (static_cast<int>(lambda.length()) > N) return 0.0;
    if (lambda.empty()) return 1.0;
    cplx vandermonde = 1.0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) vandermonde *= z[j] - z[i];
    if (std::abs(vandermonde) < opts.vandermonde_floor) {
        if (lambda.weight() <= opts.tableau_max_weight)
            return detail::tableau_sum(lambda, Partition{}, z);
        throw degenerate_evaluation("schur_eval: near-coincident points");
    }
    std::vector<cplx> num(static_cast<std::size_t>(N) * N);
    std::vector<cplx> den(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i) {
        const long long en = lambda.part(i) + (N - 1 - i);
        for (int j = 0; j < N; ++j) {
            num[i * N + j] = detail::ipow(z[j], en);
            den[i * N + j] = detail::ipow(z[j], N - 1 - i);
        }
    }
    const cplx d = detail::determinant(den, N);
    const cplx q = detail::determinant(num, N);
    return q / d;
}

inline cplx schur_eval(const Partition& lambda, const RootTuple& z,
                       const SchurOptions& opts = {}) {
    return schur_eval(lambda, std::span<const cplx>(z.points), opts);
}

/// Tableau-sum evaluation (independent of the determinant path).
inline cplx schur_eval_tableau(const Partition& lambda, std::span<const cplx> z) {
    if (static_cast<int>(lambda.length()) > static_cast<int>(z.size())) return 0.0;
    return detail::tableau_sum(lambda, Partition{}, z);
}

/// Skew Schur polynomial by direct tableau enumeration.
inline cplx skew_schur_tableau(const Partition& lambda, const Partition& mu,
                               std::span<const cplx> z) {
    return detail::tableau_sum(lambda, mu, z);
}

/// p_n(z) = sum z_i^n, with p_0 = N and negative n allowed for nonzero points.
inline cplx power_sum_eval(long long n, std::span<const cplx> z) {
    cplx s = 0.0;
    for (const auto& zi : z) s += detail::ipow(zi, n);
    return s;
}

inline cplx power_sum_eval(long long n, const RootTuple& z) {
    return power_sum_eval(n, std::span<const cplx>(z.points));
}

/// Elementary symmetric polynomial e_k(z), from the product expansion.
inline cplx elementary_eval(int k, std::span<const cplx> z) {
    const int N = static_cast<int>(z.size());
    if (k < 0 || k > N) return 0.0;
    std::vector<cplx> coeff(static_cast<std::size_t>(N) + 1, 0.0);
    coeff[0] = 1.0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j >= 1; --j) coeff[j] += coeff[j - 1] * z[i];
    return coeff[k];
}

/// Hook Schur value with the out-of-range convention: s_{r|j} = 0 for j < 0
/// or j > r-1, and s_{0|j} = delta_{0j}.
inline cplx hook_schur_eval(int r, int j, std::span<const cplx> z,
                            const SchurOptions& opts = {}) {
    if (r == 0) return j == 0 ? cplx(1.0) : cplx(0.0);
    if (r < 0 || j < 0 || j > r - 1) return 0.0;
    return schur_eval(Hook{r, j}.to_partition(), z, opts);
}

/// | p_n(z) - sum_k (-1)^k s_{n|k}(z) |.
inline double hook_expansion_residual(int n, const RootTuple& z,
                                      const SchurOptions& opts = {}) {
    std::span<const cplx> pts(z.points);
    cplx sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const cplx v = hook_schur_eval(n, k, pts, opts);
        sum += (k % 2) ? -v : v;
    }
    return std::abs(power_sum_eval(n, pts) - sum);
}

/// | conj(s_{n|k}(z)) - (-1)^{2 gamma} s_{L-n | N-k-1}(z) | at L-th root
/// tuples; the sign is +1 for N odd and -1 for N even.
inline double conj_hook_residual(int n, int k, const RootTuple& z, int L,
                                 const SchurOptions& opts = {}) {
    const int N = static_cast<int>(z.size());
    if (L - n <= 0) throw std::invalid_argument("conj_hook_residual: need n < L");
    if (k < 0 || k > n - 1) throw std::invalid_argument("conj_hook_residual: k out of range");
    std::span<const cplx> pts(z.points);
    const double sign = (N % 2 == 0) ? -1.0 : 1.0;
    const cplx lhs = std::conj(schur_eval(Hook{n, k}.to_partition(), pts, opts));
    const cplx rhs = sign * hook_schur_eval(L - n, N - k - 1, pts, opts);
    return std::abs(lhs - rhs);
}

/// | p_n p_{-n}(z) - (-1)^{2 gamma} sum_{k,l} (-1)^{k+l} s_{n|k,l}(z) - n |
/// at L-th root tuples, all double hooks being genuine partitions.
inline double double_hook_expansion_residual(int n, const RootTuple& z, int L,
                                             const SchurOptions& opts = {}) {
    const int N = static_cast<int>(z.size());
    if (L < 2 * n + N || N < 2 * n)
        throw std::invalid_argument("double_hook_expansion_residual: L >= 2n+N, N >= 2n required");
    std::span<const cplx> pts(z.points);
    const double sign = (N % 2 == 0) ? -1.0 : 1.0;
    cplx sum = 0.0;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const cplx v = schur_eval(DoubleHook{n, k, l, L, N}.to_partition(), pts, opts);
            sum += ((k + l) % 2) ? -v : v;
        }
    const cplx lhs = power_sum_eval(n, pts) * power_sum_eval(-n, pts);
    return std::abs(lhs - sign * sum - cplx(static_cast<double>(n)));
}

/// Skew hook Schur value s_{outer \ inner}(z) via the two-term hook
/// reduction; `conjugate_inner` replaces the inner hook by its conjugate.
/// Inner shapes not contained in the outer evaluate to 0.
inline cplx skew_hook_eval(Hook outer, Hook inner, bool conjugate_inner,
                           std::span<const cplx> z, const SchurOptions& opts = {}) {
    if (!outer.valid() || !inner.valid())
        throw std::invalid_argument("skew_hook_eval: invalid hook");
    const Hook in = conjugate_inner ? inner.conjugate() : inner;
    if (in.n > outer.n) return 0.0;
    if (in.n == outer.n) return in.k == outer.k ? 1.0 : 0.0;
    if (!outer.to_partition().contains(in.to_partition())) return 0.0;
    const int r = outer.n - in.n;
    return hook_schur_eval(r, outer.k - in.k, z, opts) +
           hook_schur_eval(r, outer.k - in.k - 1, z, opts);
}

}  // namespace messep
