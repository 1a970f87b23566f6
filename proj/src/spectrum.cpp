#include "decoq/spectrum_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "decoq/fft.hpp"

namespace decoq {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

PowerSpectrum powerSpectrum(const std::vector<double>& series, double dt) {
  const std::size_t n = series.size();
  if (n < 16) throw InvalidInput("powerSpectrum: need at least 16 samples");
  if (!(dt > 0.0)) throw InvalidInput("powerSpectrum: dt must be positive");

  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(n);

  double variance = 0.0;
  std::vector<double> tapered(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xc = series[i] - mean;
    variance += xc * xc;
    const double w = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / (n - 1)));
    tapered[i] = w * xc;
  }
  variance /= static_cast<double>(n);

  const auto spec = fftReal(tapered);
  const std::size_t nbins = n / 2;  // k = 1 .. n/2 (mean already removed)
  PowerSpectrum ps;
  ps.frequencies.resize(nbins);
  ps.powers.resize(nbins);
  double total = 0.0;
  for (std::size_t k = 1; k <= nbins; ++k) {
    double p = std::norm(spec[k]);
    if (k < n - k) p += std::norm(spec[n - k]);  // fold the negative branch
    ps.frequencies[k - 1] = static_cast<double>(k) / (static_cast<double>(n) * dt);
    ps.powers[k - 1] = p;
    total += p;
  }
  // Parseval convention: total spectral power equals the series variance.
  if (total > 0.0 && variance > 0.0) {
    const double scale = variance / total;
    for (double& p : ps.powers) p *= scale;
  } else {
    std::fill(ps.powers.begin(), ps.powers.end(), 0.0);
  }
  return ps;
}

PowerSpectrum powerSpectrum(const std::vector<double>& times,
                            const std::vector<double>& series) {
  if (times.size() != series.size() || times.size() < 16) {
    throw InvalidInput("powerSpectrum: need >= 16 matched samples");
  }
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw InvalidInput("powerSpectrum: timestamps must increase");
  for (std::size_t i = 2; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
      throw InvalidInput("powerSpectrum: non-uniform timestamps");
    }
  }
  return powerSpectrum(series, dt);
}

double spectralEntropy(const PowerSpectrum& ps) {
  double total = 0.0;
  for (double p : ps.powers) total += p;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double p : ps.powers) {
    const double q = p / total;
    if (q > 0.0) h -= q * std::log(q);
  }
  return h;
}

std::vector<SpectralPeak> dominantPeaks(const PowerSpectrum& ps, double min_fraction) {
  const std::size_t n = ps.powers.size();
  std::vector<SpectralPeak> peaks;
  if (n == 0) return peaks;
  double total = 0.0, pmax = 0.0;
  for (double p : ps.powers) {
    total += p;
    pmax = std::max(pmax, p);
  }
  if (total <= 0.0) return peaks;

  std::vector<bool> used(n, false);
  // Greedy: take the strongest unused bin, absorb its Hann main lobe.
  while (true) {
    std::size_t best = n;
    double bestp = min_fraction * pmax;
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i] && ps.powers[i] > bestp) {
        best = i;
        bestp = ps.powers[i];
      }
    }
    if (best == n) break;
    SpectralPeak peak{ps.frequencies[best], 0.0};
    const std::size_t lo = best >= 2 ? best - 2 : 0;
    const std::size_t hi = std::min(n - 1, best + 2);
    for (std::size_t i = lo; i <= hi; ++i) {
      if (!used[i]) {
        peak.power += ps.powers[i];
        used[i] = true;
      }
    }
    peaks.push_back(peak);
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const SpectralPeak& a, const SpectralPeak& b) { return a.power > b.power; });
  return peaks;
}

}  // namespace decoq
