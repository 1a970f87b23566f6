#pragma once

#include <complex>
#include <vector>

namespace decoq {

/// In-place forward DFT, any length (radix-2 plus Bluestein for the rest).
void fft(std::vector<std::complex<double>>& data);

/// Forward DFT of a real series.
std::vector<std::complex<double>> fftReal(const std::vector<double>& data);

}  // namespace decoq
