#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "messep/partitions.hpp"

namespace messep {

namespace detail {

/// Removable border strips of size r from lambda: connected rim segments of
/// r cells whose removal leaves a Young diagram. Yields (remaining shape,
/// height = rows spanned - 1). Uses the beta-set characterization: with
/// beta_i = lambda_i + (m - i) strictly decreasing, removing a strip of size
/// r means replacing some beta_i by beta_i - r >= 0 not already present; the
/// height is the number of beta_j passed over.
inline std::vector<std::pair<Partition, int>> border_strip_removals(const Partition& lambda,
                                                                    int r) {
    std::vector<std::pair<Partition, int>> out;
    const auto& parts = lambda.parts();
    const int m = static_cast<int>(parts.size());
    std::vector<int> beta(m);
    for (int i = 0; i < m; ++i) beta[i] = parts[i] + (m - 1 - i);
    for (int i = 0; i < m; ++i) {
        const int b = beta[i] - r;
        if (b < 0) continue;
        bool occupied = false;
        int height = 0;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            if (beta[j] == b) occupied = true;
            if (beta[j] > b && beta[j] < beta[i]) ++height;
        }
        if (occupied) continue;
        std::vector<int> nb = beta;
        nb[i] = b;
        std::sort(nb.rbegin(), nb.rend());
        std::vector<int> mu(m);
        for (int j = 0; j < m; ++j) mu[j] = nb[j] - (m - 1 - j);
        out.emplace_back(Partition(std::move(mu)), height);
    }
    return out;
}

}  // namespace detail

/// Irreducible character of S_n: chi^lambda evaluated on cycle type pi,
/// by recursive border-strip removal. Exact integer arithmetic.
class CharacterEvaluator {
public:
    long long operator()(const Partition& lambda, const Partition& pi) {
        if (lambda.weight() != pi.weight())
            throw std::invalid_argument("character: |lambda| != |pi|");
        return eval(lambda, pi);
    }

private:
    std::map<std::pair<Partition, Partition>, long long> memo_;

    long long eval(const Partition& lambda, const Partition& pi) {
        if (lambda.empty()) return 1;
        auto key = std::make_pair(lambda, pi);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const int r = pi.part(0);
        const Partition rest = pi.drop_first();
        long long sum = 0;
        for (const auto& [shape, height] : detail::border_strip_removals(lambda, r))
            sum += (height % 2 ? -1 : 1) * eval(shape, rest);
        memo_.emplace(std::move(key), sum);
        return sum;
    }
};

inline long long mn_character(const Partition& lambda, const Partition& pi) {
    CharacterEvaluator chi;
    return chi(lambda, pi);
}

/// Hook character chi^{(n-k,1^k)} on cycle type pi via the two-term
/// recursion: removing a strip of size pi_1 from a hook leaves a hook
/// (arm strip or leg strip), except when the whole hook is removed.
inline long long hook_character(int n, int k, const Partition& pi) {
    if (pi.weight() != n) throw std::invalid_argument("hook_character: weight mismatch");
    if (k < 0 || k > n - 1) return 0;
    if (n == 0) return 1;
    const int r = pi.part(0);
    if (r == n) return (k % 2) ? -1 : 1;  // full-size strip, height k
    const Partition rest = pi.drop_first();
    long long value = 0;
    if (k - r >= 0) {  // leg strip, height r-1
        value += ((r - 1) % 2 ? -1 : 1) * hook_character(n - r, k - r, rest);
    }
    if (k <= n - r - 1) {  // arm strip, height 0
        value += hook_character(n - r, k, rest);
    }
    return value;
}

/// Alternating hook-character sum  sum_{k=0}^{n-1} (-1)^k chi_pi^{n|k} (n-2k-1)^j,
/// computed term by term (128-bit accumulation; the powers grow quickly).
inline int128 hook_char_sum(const Partition& pi, int j) {
    const int n = static_cast<int>(pi.weight());
    if (n < 1) throw std::invalid_argument("hook_char_sum: empty cycle type");
    if (j < 0 || j >= static_cast<int>(pi.length()))
        throw std::invalid_argument("hook_char_sum: j out of range");
    int128 sum = 0;
    for (int k = 0; k < n; ++k) {
        int128 pw = 1;
        const long long base = n - 2 * k - 1;
        for (int i = 0; i < j; ++i) pw *= base;
        const int128 term = static_cast<int128>(hook_character(n, k, pi)) * pw;
        sum += (k % 2) ? -term : term;
    }
    return sum;
}

/// Coefficients of the power-sum p_pi in the Schur basis: p_pi = sum chi_pi^lambda s_lambda.
inline std::map<Partition, long long> frobenius_p_to_s(const Partition& pi) {
    const int n = static_cast<int>(pi.weight());
    std::map<Partition, long long> out;
    CharacterEvaluator chi;
    for (const auto& lambda : enumerate_partitions(n)) {
        long long c = chi(lambda, pi);
        if (c != 0) out.emplace(lambda, c);
    }
    return out;
}

/// Full character table of S_n: table[l][p] = chi^{lambda_l}(pi_p), with both
/// indices in enumerate_partitions(n) order.
inline std::vector<std::vector<long long>> character_table(int n) {
    const auto parts = enumerate_partitions(n);
    CharacterEvaluator chi;
    std::vector<std::vector<long long>> table(parts.size(),
                                              std::vector<long long>(parts.size()));
    for (std::size_t l = 0; l < parts.size(); ++l)
        for (std::size_t p = 0; p < parts.size(); ++p)
            table[l][p] = chi(parts[l], parts[p]);
    return table;
}

}  // namespace messep
