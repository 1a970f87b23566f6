#pragma once

#include <array>
#include <utility>
#include <vector>

#include "decoq/entropy.hpp"
#include "decoq/ode.hpp"

namespace decoq {

/// Anharmonic potential v(phi) = -(muSq/2) phi^2 + (lambda/4!) phi^4.
/// muSq > 0 with lambda > 0 is the double well; muSq < 0, lambda = 0 is the
/// harmonic oscillator of frequency sqrt(-muSq).
struct PotentialSpec {
  double muSq = -1.0;
  double lambda = 0.0;

  double v(double phi) const;
  double d1(double phi) const;
  double d2(double phi) const;
  double d3(double phi) const;
  double d4() const { return lambda; }
};

/// Bilinear system-environment coupling V(phi1, phi2) = -mu12Sq phi1 phi2.
struct CouplingSpec {
  double mu12Sq = 0.0;
};

/// Which correlation enters the (1/2)(G1^-1 + G2^-1) restoring term of the
/// Sigma_12 flow. Cross couples it to G_12, closing a rotational pair that
/// the short-time expansions, the memory-integral representation and energy
/// conservation all require; Self couples it to Sigma_12 itself, which makes
/// the pair hyperbolic and is kept only for comparison runs.
enum class Sigma12Coupling { Cross, Self };

/// Variational parameters of the homogeneous two-field Gaussian ansatz.
/// Environment mean fields are pinned to zero structurally.
struct TdhfState {
  double phi1 = 0.0;
  double pi1 = 0.0;
  double g1 = 0.5;
  double s1 = 0.0;
  double g2 = 0.5;
  double s2 = 0.0;
  double g12 = 0.0;
  double s12 = 0.0;
  double hbar = 1.0;  // >= 0; zero recovers the classical mean-field limit

  CorrelationBlock correlationBlock() const { return {g1, g2, g12, s12}; }
};

struct TdhfParams {
  PotentialSpec v1;
  PotentialSpec v2;
  CouplingSpec coupling;
  Sigma12Coupling sigma12_coupling = Sigma12Coupling::Cross;
};

/// Time derivative of (phi1, pi1, g1, s1, g2, s2, g12, s12).
/// Throws InvalidInput when a width is non-positive.
std::array<double, 8> tdhfRhs(const TdhfState& state, const TdhfParams& params);

/// Conserved energy of the homogeneous two-field effective action (exact
/// correlation dressing; reduces to the familiar single-field form
/// (1/2)Pi^2 + v + hbar[2 Sigma^2 G + 1/(8G) + v''(phi) G / 2]
/// + hbar^2 v'''' G^2 / 8 when the correlations vanish).
double conservedEnergy(const TdhfState& state, const TdhfParams& params);

struct TdhfSample {
  double t;
  TdhfState state;
  double energy;
  double y;        // correlation parameter of the single homogeneous mode
  double entropy;  // S_S
  double gEff;     // pointer-state width
};

struct TdhfDiagnostics {
  double energyDrift = 0.0;  // max |E(t) - E(0)| / max(|E(0)|, 1e-300)
  double maxY = 0.0;
  bool smallCorrelationAdvisory = false;  // set when max Y exceeds 0.1
};

/// Integrated run with dense output retained for resampling.
class TdhfTrajectory {
 public:
  const std::vector<TdhfSample>& samples() const { return samples_; }
  const TdhfDiagnostics& diagnostics() const { return diagnostics_; }
  const TdhfParams& params() const { return params_; }
  double startTime() const { return dense_.startTime(); }
  double endTime() const { return dense_.endTime(); }

  TdhfState stateAt(double t) const;
  TdhfSample sampleAt(double t) const;

 private:
  friend TdhfTrajectory evolveTdhf(const TdhfState&, const TdhfParams&, double,
                                   double, double, double, int);
  Trajectory dense_;
  std::vector<TdhfSample> samples_;
  TdhfDiagnostics diagnostics_;
  TdhfParams params_;
  double hbar_ = 1.0;
};

/// Integrate the equations of motion over [t0, t1] and record n_out uniform
/// samples (entropy, energy, pointer width per sample). Positivity violations
/// abort with IntegrationFailure.
TdhfTrajectory evolveTdhf(const TdhfState& s0, const TdhfParams& params, double t0,
                          double t1, double rtol = 1e-10, double atol = 1e-12,
                          int n_out = 201);

/// Leading short-time expansions of the cross-correlations, all right-hand
/// sides frozen at t = 0. Returns (g12(t), s12(t)).
std::pair<double, double> shortTimeCorrelations(const TdhfState& s0,
                                                const CouplingSpec& c, double t);

/// Max absolute defect of the memory-integral representation of G12(t)
/// against the stored trajectory, by composite trapezoidal quadrature on the
/// sample grid. Requires >= 100 samples.
double formalSolutionResidual(const TdhfTrajectory& traj);

/// Analytic small-correlation decoherence time:
/// 1/tau = 4 (Sigma1 + Sigma2) + 4 mu12Sq Sigma12 / (G12^2 + Sigma12^2).
/// Throws DomainError when both initial correlations vanish (the tau ~ t/2
/// regime applies there instead).
double decoherenceTimeAnalytic(const TdhfState& s0, const CouplingSpec& c);

/// Small-entropy-branch decoherence time: log-slope of the single-mode
/// correlation parameter Y resampled over [t_lo, t_hi].
double decoherenceTimeNumeric(const TdhfTrajectory& traj, double t_lo, double t_hi,
                              int n_fit = 33);

/// Static variational minimum of one sector at fixed hbar.
struct StaticMinimum {
  double phi;
  double g;
  double energy;
};
StaticMinimum staticMinimum(const PotentialSpec& v, double hbar);

/// Solve for muSq > 0 such that the static double-well minimum sits at
/// target_e_min (default -24.3) for the given lambda and hbar.
struct DoubleWellCalibration {
  double muSq;
  double lambda;
  double hbar;
  StaticMinimum minimum;
};
DoubleWellCalibration calibrateDoubleWell(double lambda, double hbar,
                                          double target_e_min = -24.3);

}  // namespace decoq
