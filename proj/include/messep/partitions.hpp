#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace messep {

using int128 = __int128;

/// Integer partition: weakly decreasing positive parts, trailing zeros
/// stripped on construction so equality is canonical.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 1; i < parts_.size(); ++i) {
            if (parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
        if (!parts_.empty() && parts_.back() < 0)
            throw std::invalid_argument("partition parts must be nonnegative");
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }

    long long weight() const {
        return std::accumulate(parts_.begin(), parts_.end(), 0LL);
    }

    Partition conjugate() const {
        if (parts_.empty()) return {};
        std::vector<int> cols(static_cast<std::size_t>(parts_[0]));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            int count = 0;
            for (int p : parts_)
                if (p > static_cast<int>(j)) ++count;
            cols[j] = count;
        }
        return Partition(std::move(cols));
    }

    /// mu fits inside this diagram row by row.
    bool contains(const Partition& mu) const {
        if (mu.length() > length()) return false;
        for (std::size_t i = 0; i < mu.length(); ++i)
            if (mu.parts_[i] > parts_[i]) return false;
        return true;
    }

    /// Multiplicity vector: mult[k] = number of parts equal to k (k >= 1).
    std::vector<int> multiplicities() const {
        std::vector<int> mult(parts_.empty() ? 1 : parts_[0] + 1, 0);
        for (int p : parts_) ++mult[p];
        return mult;
    }

    /// Partition with the first (largest) part removed.
    Partition drop_first() const {
        if (parts_.empty()) throw std::invalid_argument("drop_first on empty partition");
        return Partition(std::vector<int>(parts_.begin() + 1, parts_.end()));
    }

    bool operator==(const Partition& o) const = default;
    auto operator<=>(const Partition& o) const = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

private:
    std::vector<int> parts_;
};

/// All partitions of n, in lexicographically decreasing order of part lists.
inline std::vector<Partition> enumerate_partitions(int n) {
    if (n < 0) throw std::invalid_argument("enumerate_partitions: n < 0");
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxPart) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rest, maxPart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

/// Partitions fitting in a box with at most `max_len` rows of length <= `max_part`.
inline std::vector<Partition> enumerate_box_partitions(int max_part, int max_len) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rows_left, int bound) {
        out.emplace_back(cur);
        if (rows_left == 0 || bound == 0) return;
        for (int p = bound; p >= 1; --p) {
            cur.push_back(p);
            rec(rows_left - 1, p);
            cur.pop_back();
        }
    };
    rec(max_len, max_part);
    std::sort(out.begin(), out.end());
    return out;
}

/// z_pi = prod_k k^{l_k} l_k!  (order of the centralizer of a permutation of
/// cycle type pi).
inline long long cycle_index(const Partition& pi) {
    long long z = 1;
    auto mult = pi.multiplicities();
    for (std::size_t k = 1; k < mult.size(); ++k) {
        for (int j = 1; j <= mult[k]; ++j) {
            z *= static_cast<long long>(k) * j;
        }
    }
    return z;
}

inline long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

/// Hook partition {n|k} = (n-k, 1^k), 0 <= k <= n-1.
struct Hook {
    int n = 0;  // weight
    int k = 0;  // leg length

    bool valid() const { return n >= 1 && k >= 0 && k <= n - 1; }

    Partition to_partition() const {
        if (!valid()) throw std::invalid_argument("hook out of range");
        std::vector<int> parts(static_cast<std::size_t>(k) + 1, 1);
        parts[0] = n - k;
        return Partition(std::move(parts));
    }

    Hook conjugate() const { return Hook{n, n - k - 1}; }
};

/// Double-hook partition {n|k,l} in the ambient (L, N) box:
///   (L-n-(N-1-l), n-k+1, 2^k, 1^{N-2-l-k}).
/// Genuine partition requires L >= 2n+N and k+l <= N-2.
struct DoubleHook {
    int n = 0, k = 0, l = 0;
    int L = 0, N = 0;

    bool valid() const {
        return n >= 1 && k >= 0 && l >= 0 && k <= n - 1 && l <= n - 1 &&
               N >= 2 && L >= 2 * n + N && N - 2 - l - k >= 0;
    }

    Partition to_partition() const {
        if (!valid()) throw std::invalid_argument("double hook out of range");
        std::vector<int> parts;
        parts.push_back(L - n - (N - 1 - l));
        parts.push_back(n - k + 1);
        parts.insert(parts.end(), static_cast<std::size_t>(k), 2);
        parts.insert(parts.end(), static_cast<std::size_t>(N - 2 - l - k), 1);
        return Partition(std::move(parts));
    }
};

}  // namespace messep
