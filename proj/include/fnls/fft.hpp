#pragma once

#include <complex>
#include <vector>

namespace fnls::fft {

/// In-place DFT, a[m] <- sum_j a[j] e^{-2πi jm/P}.
void forward(std::vector<std::complex<double>>& a);

/// In-place unnormalized inverse DFT, a[j] <- sum_m a[m] e^{+2πi jm/P}.
void backward(std::vector<std::complex<double>>& a);

}  // namespace fnls::fft
