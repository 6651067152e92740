#ifndef BESOV_FFT_HPP
#define BESOV_FFT_HPP

#include <vector>

#include "besov/common.hpp"

namespace besov {

/// In-place iterative radix-2 FFT. sign = -1 forward, +1 inverse
/// (inverse is unscaled; callers divide by n).
inline void fft_radix2(std::vector<complex>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw validation_error("fft: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * two_pi / static_cast<double>(len);
        const complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                complex u = a[i + k];
                complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

/// DFT coefficients c_k = (1/n) sum_j x_j e^{-2pi i j k / n} of real samples.
inline std::vector<complex> fourier_coefficients(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    std::vector<complex> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = complex(samples[j], 0.0);
    fft_radix2(a, -1);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& c : a) c *= inv;
    return a;
}

inline std::vector<complex> fourier_coefficients(const std::vector<complex>& samples) {
    std::vector<complex> a = samples;
    fft_radix2(a, -1);
    const double inv = 1.0 / static_cast<double>(a.size());
    for (auto& c : a) c *= inv;
    return a;
}

/// Samples x_j = sum_k c_k e^{+2pi i j k / n} from DFT coefficients.
inline std::vector<complex> fourier_synthesis(std::vector<complex> coeffs) {
    fft_radix2(coeffs, +1);
    return coeffs;
}

}  // namespace besov

#endif
