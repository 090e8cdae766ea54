#include "adapilot/dsp.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "adapilot/error.hpp"

namespace adapilot::dsp {

void fft_unitary_inplace(std::span<std::complex<double>> data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw LengthMismatchError("fft: length must be a nonzero power of two");
    }

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(data[i], data[j]);
        }
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wstep(std::cos(angle), std::sin(angle));
        for (std::size_t start = 0; start < n; start += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t i = 0; i < len / 2; ++i) {
                const auto even = data[start + i];
                const auto odd = data[start + i + len / 2] * w;
                data[start + i] = even + odd;
                data[start + i + len / 2] = even - odd;
                w *= wstep;
            }
        }
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : data) {
        v *= scale;
    }
}

std::vector<std::complex<double>> fft_unitary(std::span<const std::complex<double>> data,
                                              bool inverse) {
    std::vector<std::complex<double>> out(data.begin(), data.end());
    fft_unitary_inplace(out, inverse);
    return out;
}

}  // namespace adapilot::dsp
