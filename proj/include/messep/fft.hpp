#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace messep {

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace detail

/// In-place iterative radix-2 FFT; inverse includes the 1/M factor.
inline void fft(std::vector<std::complex<double>>& a, bool inverse = false) {
    const std::size_t n = a.size();
    if (!detail::is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / len * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

/// Circle Hilbert transform of a real grid function: Fourier multiplier
/// -i sgn(n), mean mode mapped to zero. Grid size must be a power of two.
inline std::vector<double> hilbert_transform(std::span<const double> f) {
    const std::size_t M = f.size();
    std::vector<std::complex<double>> a(f.begin(), f.end());
    fft(a);
    a[0] = 0.0;
    for (std::size_t k = 1; k < M; ++k) {
        // frequencies: k < M/2 positive, k > M/2 negative, k = M/2 ambiguous
        if (k < M / 2)
            a[k] *= std::complex<double>(0.0, -1.0);
        else if (k > M / 2)
            a[k] *= std::complex<double>(0.0, 1.0);
        else
            a[k] = 0.0;  // Nyquist mode has no signed frequency
    }
    fft(a, true);
    std::vector<double> out(M);
    for (std::size_t i = 0; i < M; ++i) out[i] = a[i].real();
    return out;
}

/// Spectral derivative d/dx of a real grid function on [0, 2 pi).
inline std::vector<double> spectral_derivative(std::span<const double> f) {
    const std::size_t M = f.size();
    std::vector<std::complex<double>> a(f.begin(), f.end());
    fft(a);
    for (std::size_t k = 0; k < M; ++k) {
        double freq;
        if (k < M / 2)
            freq = static_cast<double>(k);
        else if (k > M / 2)
            freq = static_cast<double>(k) - static_cast<double>(M);
        else
            freq = 0.0;
        a[k] *= std::complex<double>(0.0, freq);
    }
    fft(a, true);
    std::vector<double> out(M);
    for (std::size_t i = 0; i < M; ++i) out[i] = a[i].real();
    return out;
}

/// Fourier coefficients c_n = (1/M) sum f_j e^{-i n x_j} for n = 0..n_max.
inline std::vector<std::complex<double>> fourier_coefficients(std::span<const double> f,
                                                              int n_max) {
    const std::size_t M = f.size();
    std::vector<std::complex<double>> a(f.begin(), f.end());
    fft(a);
    std::vector<std::complex<double>> out(n_max + 1);
    for (int n = 0; n <= n_max && n < static_cast<int>(M); ++n)
        out[n] = a[n] / static_cast<double>(M);
    return out;
}

}  // namespace messep
