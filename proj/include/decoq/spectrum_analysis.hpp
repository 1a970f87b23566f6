#pragma once

#include <vector>

#include "decoq/errors.hpp"

namespace decoq {

/// One-sided power spectrum of a uniformly sampled real series.
struct PowerSpectrum {
  std::vector<double> frequencies;  // cycles per time unit, k / (n dt)
  std::vector<double> powers;       // rescaled so the total equals the series variance
};

/// Hann-tapered one-sided periodogram with the mean removed. Powers are
/// normalized so that sum(powers) equals the biased sample variance of the
/// mean-removed series (Parseval convention). Needs >= 16 samples.
PowerSpectrum powerSpectrum(const std::vector<double>& series, double dt);

/// powerSpectrum for timestamped samples; rejects non-uniform spacing.
PowerSpectrum powerSpectrum(const std::vector<double>& times,
                            const std::vector<double>& series);

/// Shannon entropy of the bin-normalized spectrum, in nats; <= ln(#bins).
double spectralEntropy(const PowerSpectrum& ps);

struct SpectralPeak {
  double frequency;
  double power;  // integrated over the peak's main lobe (+/- 2 bins)
};

/// Local maxima merged with their Hann main lobe, strongest first.
std::vector<SpectralPeak> dominantPeaks(const PowerSpectrum& ps,
                                        double min_fraction = 1e-3);

}  // namespace decoq
