#include "decoq/fft.hpp"

#include <cmath>
#include <cstddef>

namespace decoq {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool isPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, n a power of two.
void fftRadix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

// Bluestein's chirp-z transform: DFT of arbitrary length via a padded
// power-of-two convolution.
void fftBluestein(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  std::vector<std::complex<double>> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the phase argument small
    const std::size_t k2 = (k * k) % (2 * n);
    const double ang = -kTwoPi * static_cast<double>(k2) / (2.0 * n);
    chirp[k] = {std::cos(ang), std::sin(ang)};
  }

  std::vector<std::complex<double>> x(m, {0.0, 0.0}), y(m, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
  y[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(chirp[k]);

  fftRadix2(x, false);
  fftRadix2(y, false);
  for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
  fftRadix2(x, true);

  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
}

}  // namespace

void fft(std::vector<std::complex<double>>& data) {
  if (data.size() < 2) return;
  if (isPowerOfTwo(data.size())) {
    fftRadix2(data, false);
  } else {
    fftBluestein(data);
  }
}

std::vector<std::complex<double>> fftReal(const std::vector<double>& data) {
  std::vector<std::complex<double>> c(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) c[i] = {data[i], 0.0};
  fft(c);
  return c;
}

}  // namespace decoq
