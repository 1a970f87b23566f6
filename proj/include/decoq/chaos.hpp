#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "decoq/ode.hpp"
#include "decoq/spectrum_analysis.hpp"
#include "decoq/tdhf.hpp"

namespace decoq {

/// One-field sector of the TDHF flow (no environment): variables
/// (phi, pi, g, sigma) under Eqs. of motion with the coupling removed.
struct SystemState {
  double phi = 0.0;
  double pi = 0.0;
  double g = 0.5;
  double s = 0.0;
};

struct ChaosRunSpec {
  PotentialSpec v;
  double hbar = 1.0;
  double rtol = 1e-10;
  double atol = 1e-12;
};

/// Energy of the one-field sector (mean field plus Gaussian fluctuation).
double sectorEnergy(const SystemState& s, const PotentialSpec& v, double hbar);

/// Deterministic on-shell preparation: phi at the left static minimum,
/// sigma = 0, g at the static width, pi >= 0 chosen to match the energy.
SystemState onShellState(const PotentialSpec& v, double hbar, double energy);

/// Dense one-field trajectory.
class SystemTrajectory {
 public:
  double startTime() const { return dense_.startTime(); }
  double endTime() const { return dense_.endTime(); }
  SystemState stateAt(double t) const;
  const Trajectory& dense() const { return dense_; }

 private:
  friend SystemTrajectory runSystem(const SystemState&, const ChaosRunSpec&, double);
  Trajectory dense_;
};

SystemTrajectory runSystem(const SystemState& s0, const ChaosRunSpec& spec,
                           double t_max);

struct SectionSpec {
  enum class Event { SigmaZero, GExtremum, Custom };
  Event event = Event::SigmaZero;
  int direction = +1;
  std::function<double(const SystemState&)> custom;
};

struct SectionPoint {
  double t;
  double phi;
  double pi;
};

struct SectionResult {
  std::vector<SectionPoint> points;
  bool complete;  // false when fewer than the requested crossings were found
  double maxEnergyDrift;
};

/// (phi, pi) at the first n_crossings directed section crossings, refined on
/// the dense output.
SectionResult poincareSection(const SystemState& s0, const ChaosRunSpec& spec,
                              const SectionSpec& section, int n_crossings,
                              double t_max);

/// Gaussian density-matrix diagonal rho(x*, x*; t) = exp(-(x*-phi)^2 / 2g)
/// / sqrt(2 pi g) on a uniform time grid.
std::vector<double> densityDiagonalSeries(const SystemTrajectory& traj, double x_star,
                                          int n_samples);
std::vector<double> densityDiagonalSeries(const TdhfTrajectory& traj, double x_star);

enum class MotionClass { Regular, Chaotic, Indeterminate };

/// Relative-spectral-entropy thresholds, calibrated once on a tapered
/// sinusoid (line floor, ~0.15) and seeded white noise (broadband ceiling,
/// ~0.94) and frozen here.
struct ClassifierThresholds {
  double regular_below = 0.25;
  double chaotic_above = 0.275;
};

/// Recompute the anchor entropies (deterministic) and derive thresholds at
/// fixed fractions of the line-to-noise span; a consistency check for the
/// frozen defaults.
ClassifierThresholds calibrateClassifier(std::uint64_t seed = 7);

struct SpectrumReport {
  PowerSpectrum spectrum;
  double spectral_entropy;           // nats
  double relative_spectral_entropy;  // divided by ln(#bins)
  std::vector<SpectralPeak> dominant_lines;
  MotionClass classification;
};

/// Classify a uniformly sampled observable series (>= 1024 samples; the
/// caller supplies enough fundamental periods).
SpectrumReport classifySpectrum(const std::vector<double>& series, double dt,
                                const ClassifierThresholds& thresholds = {});

struct LyapunovEstimate {
  double lambda;
  bool converged;
};

/// Largest Lyapunov exponent by tangent-space evolution with periodic
/// renormalization.
LyapunovEstimate lyapunovExponent(const SystemState& s0, const ChaosRunSpec& spec,
                                  double horizon, int renorm_steps = 200);

struct SweepRow {
  double energy;
  double spectral_entropy;  // relative
  double lyapunov;
  bool lyapunov_converged;
  MotionClass label;
  std::string error;  // empty on success
};

struct SweepOptions {
  int n_samples = 4096;
  double periods = 60.0;          // sampling horizon in fundamental periods
  double lyapunov_horizon = 0.0;  // 0: same as the sampling horizon
  ClassifierThresholds thresholds;
  double x_star = 0.0;
  int workers = 1;
  double rtol = 1e-10;
  double atol = 1e-12;
};

/// One row per energy: spectral classification plus Lyapunov estimate from a
/// deterministic on-shell state. Per-row failures are recorded, the sweep
/// continues. At hbar = 0 the classifier runs on the mean field itself.
std::vector<SweepRow> energySweep(const PotentialSpec& v, double hbar,
                                  const std::vector<double>& energies,
                                  const SweepOptions& options = {});

}  // namespace decoq
