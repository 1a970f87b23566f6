#include "decoq/spectrum_analysis.hpp"

#include <cmath>
#include <complex>

#include "decoq/fft.hpp"
#include "decoq/rng.hpp"
#include "doctest.h"

using namespace decoq;

TEST_CASE("fft matches the direct DFT for power-of-two and odd lengths") {
  SplitMix64 rng(0xff70);
  for (int n : {16, 12, 37}) {
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) v = {rng.normal(), rng.normal()};
    auto got = x;
    fft(got);
    for (int k = 0; k < n; ++k) {
      std::complex<double> ref(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        const double ang = -2.0 * M_PI * k * j / n;
        ref += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
      }
      CHECK(std::abs(got[k] - ref) < 1e-9 * std::sqrt(static_cast<double>(n)));
    }
  }
}

TEST_CASE("pure sinusoid concentrates in one dominant line") {
  const int n = 2048;
  const double dt = 0.01;
  const double f0 = 12.5;  // on-bin: 12.5 = k/(n dt) with k = 256
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = 0.7 * std::sin(2.0 * M_PI * f0 * i * dt) + 0.2;

  const PowerSpectrum ps = powerSpectrum(x, dt);
  const auto peaks = dominantPeaks(ps);
  REQUIRE(!peaks.empty());
  CHECK(peaks[0].frequency == doctest::Approx(f0).epsilon(1e-6));

  double total = 0.0;
  for (double p : ps.powers) total += p;
  CHECK(peaks[0].power / total > 0.99);
}

TEST_CASE("Parseval: spectral power equals the series variance") {
  SplitMix64 rng(0x9a);
  std::vector<double> x(600);
  for (auto& v : x) v = rng.normal() + 3.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= x.size();
  double variance = 0.0;
  for (double v : x) variance += (v - mean) * (v - mean);
  variance /= x.size();

  const PowerSpectrum ps = powerSpectrum(x, 0.5);
  double total = 0.0;
  for (double p : ps.powers) total += p;
  CHECK(total == doctest::Approx(variance).epsilon(1e-6));
}

TEST_CASE("white noise is spectrally flat") {
  const int n = 1024;
  const int trials = 24;
  SplitMix64 rng(0x510c);
  std::vector<double> avg(n / 2, 0.0);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    const PowerSpectrum ps = powerSpectrum(x, 1.0);
    for (std::size_t k = 0; k < avg.size(); ++k) avg[k] += ps.powers[k];
  }
  PowerSpectrum averaged;
  averaged.frequencies.assign(avg.size(), 0.0);
  averaged.powers = avg;
  const double h = spectralEntropy(averaged);
  const double hmax = std::log(static_cast<double>(avg.size()));
  CHECK(h > 0.95 * hmax);
  CHECK(h <= hmax + 1e-12);
}

TEST_CASE("two incommensurate tones give exactly two dominant lines") {
  const int n = 4096;
  const double dt = 0.01;
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    const double t = i * dt;
    x[i] = std::sin(2.0 * M_PI * 7.3 * t) + 0.8 * std::sin(2.0 * M_PI * 19.1 * t);
  }
  const auto peaks = dominantPeaks(powerSpectrum(x, dt), 5e-3);
  // Keep lines holding at least 1% of the total.
  double total = 0.0;
  for (const auto& p : peaks) total += p.power;
  int strong = 0;
  for (const auto& p : peaks) {
    if (p.power > 0.01 * total) ++strong;
  }
  CHECK(strong == 2);
}

TEST_CASE("input validation") {
  std::vector<double> shorty(8, 1.0);
  CHECK_THROWS_AS(powerSpectrum(shorty, 1.0), InvalidInput);

  std::vector<double> times = {0.0, 1.0, 2.5, 3.0, 4.0, 5.0, 6.0, 7.0,
                               8.0, 9.0, 10.0, 11.0, 12.0, 13.0, 14.0, 15.0};
  std::vector<double> vals(16, 0.0);
  CHECK_THROWS_AS(powerSpectrum(times, vals), InvalidInput);
}
