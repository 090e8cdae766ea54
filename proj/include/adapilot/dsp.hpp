#pragma once

#include <complex>
#include <span>
#include <vector>

namespace adapilot::dsp {

// In-place radix-2 transform with unitary scaling (1/sqrt(N) both ways).
// Length must be a power of two.
void fft_unitary_inplace(std::span<std::complex<double>> data, bool inverse);

std::vector<std::complex<double>> fft_unitary(std::span<const std::complex<double>> data,
                                              bool inverse);

}  // namespace adapilot::dsp
