#pragma once

#include <complex>
#include <vector>

namespace bolab::detail {

// Unnormalized in-place DFTs backed by FFTW.
// forward: a_q <- sum_i a_i e^{-2 pi i q i / n}; backward uses e^{+...}.
void fft_forward(std::vector<std::complex<double>>& data);
void fft_backward(std::vector<std::complex<double>>& data);

}  // namespace bolab::detail
