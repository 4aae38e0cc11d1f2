#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "messep/partitions.hpp"

namespace messep {

/// Partial exponential Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}), by the
/// standard recurrence B_{n,k} = sum_i C(n-1, i-1) x_i B_{n-i, k-1}.
inline std::complex<double> bell_partial(int n, int k,
                                         std::span<const std::complex<double>> x) {
    if (k < 1 || k > n) throw std::invalid_argument("bell_partial: need 1 <= k <= n");
    if (static_cast<int>(x.size()) < n - k + 1)
        throw std::invalid_argument("bell_partial: too few arguments");
    // table[m][j] = B_{m,j}
    std::vector<std::vector<std::complex<double>>> table(
        n + 1, std::vector<std::complex<double>>(k + 1, 0.0));
    table[0][0] = 1.0;
    for (int m = 1; m <= n; ++m) {
        for (int j = 1; j <= std::min(m, k); ++j) {
            std::complex<double> acc = 0.0;
            for (int i = 1; i <= m - j + 1; ++i) {
                acc += static_cast<double>(binomial(m - 1, i - 1)) * x[i - 1] *
                       table[m - i][j - 1];
            }
            table[m][j] = acc;
        }
    }
    return table[n][k];
}

}  // namespace messep
