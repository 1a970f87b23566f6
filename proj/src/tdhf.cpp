#include "decoq/tdhf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace decoq {

double PotentialSpec::v(double phi) const {
  const double p2 = phi * phi;
  return -0.5 * muSq * p2 + lambda / 24.0 * p2 * p2;
}
double PotentialSpec::d1(double phi) const {
  return -muSq * phi + lambda / 6.0 * phi * phi * phi;
}
double PotentialSpec::d2(double phi) const { return -muSq + 0.5 * lambda * phi * phi; }
double PotentialSpec::d3(double phi) const { return lambda * phi; }

namespace {

void packState(const TdhfState& s, StateVector& y) {
  y.resize(8);
  y << s.phi1, s.pi1, s.g1, s.s1, s.g2, s.s2, s.g12, s.s12;
}

TdhfState unpackState(const StateVector& y, double hbar) {
  TdhfState s;
  s.phi1 = y[0];
  s.pi1 = y[1];
  s.g1 = y[2];
  s.s1 = y[3];
  s.g2 = y[4];
  s.s2 = y[5];
  s.g12 = y[6];
  s.s12 = y[7];
  s.hbar = hbar;
  return s;
}

std::array<double, 8> rhsImpl(const TdhfState& s, const TdhfParams& p) {
  if (!(s.g1 > 0.0) || !(s.g2 > 0.0)) {
    throw InvalidInput("tdhfRhs: widths G1, G2 must stay positive");
  }
  const double mu2 = p.coupling.mu12Sq;
  const double sumS = s.s1 + s.s2;
  const double sumInvG = 1.0 / s.g1 + 1.0 / s.g2;

  std::array<double, 8> d{};
  d[0] = s.pi1;
  d[1] = -p.v1.d1(s.phi1) - 0.5 * s.hbar * p.v1.d3(s.phi1) * s.g1;
  d[2] = 4.0 * s.s1 * s.g1;
  d[3] = -2.0 * s.s1 * s.s1 + 0.125 / (s.g1 * s.g1) - 0.5 * p.v1.d2(s.phi1) -
         0.25 * s.hbar * p.v1.d4() * s.g1 - mu2 * s.g2 * s.g12;
  d[4] = 4.0 * s.s2 * s.g2;
  // Environment mean fields are pinned to zero; its potential enters through
  // the derivatives at phi = 0.
  d[5] = -2.0 * s.s2 * s.s2 + 0.125 / (s.g2 * s.g2) - 0.5 * p.v2.d2(0.0) -
         0.25 * s.hbar * p.v2.d4() * s.g2 - mu2 * s.g1 * s.g12;
  d[6] = -2.0 * sumS * s.g12 - 0.5 * sumInvG * s.s12;
  const double restoring =
      (p.sigma12_coupling == Sigma12Coupling::Self) ? s.s12 : s.g12;
  d[7] = -2.0 * sumS * s.s12 + 0.5 * sumInvG * restoring + 2.0 * mu2;
  return d;
}

}  // namespace

std::array<double, 8> tdhfRhs(const TdhfState& state, const TdhfParams& params) {
  return rhsImpl(state, params);
}

double conservedEnergy(const TdhfState& s, const TdhfParams& p) {
  if (!(s.g1 > 0.0) || !(s.g2 > 0.0)) {
    throw InvalidInput("conservedEnergy: widths must be positive");
  }
  const double gg = s.g1 * s.g2;
  const double dFac = 1.0 - gg * s.g12 * s.g12;   // A - B
  const double sFac = 1.0 + gg * s.s12 * s.s12;   // A + B
  if (dFac <= 0.0) {
    throw NonPhysicalCorrelation("conservedEnergy: correlations outside positivity");
  }
  const double st1 = s.s1 - 0.25 * s.g2 * s.g12 * s.s12;
  const double st2 = s.s2 - 0.25 * s.g1 * s.g12 * s.s12;
  const double gb1 = s.g1 / dFac;
  const double gb2 = s.g2 / dFac;

  double e = 0.5 * s.pi1 * s.pi1 + p.v1.v(s.phi1);
  e += s.hbar * (2.0 * st1 * st1 * gb1 + 0.125 * sFac / s.g1 +
                 0.5 * p.v1.d2(s.phi1) * gb1);
  e += s.hbar * (2.0 * st2 * st2 * gb2 + 0.125 * sFac / s.g2 +
                 0.5 * p.v2.d2(0.0) * gb2);
  e += s.hbar * s.hbar * 0.125 * (p.v1.d4() * gb1 * gb1 + p.v2.d4() * gb2 * gb2);
  e += s.hbar * p.coupling.mu12Sq * gg * s.g12 / dFac;
  return e;
}

TdhfState TdhfTrajectory::stateAt(double t) const {
  return unpackState(dense_.evaluate(t), hbar_);
}

TdhfSample TdhfTrajectory::sampleAt(double t) const {
  const TdhfState s = stateAt(t);
  TdhfSample sample;
  sample.t = t;
  sample.state = s;
  sample.energy = conservedEnergy(s, params_);
  sample.y = computeY(s.correlationBlock());
  sample.entropy = modeEntropy(sample.y);
  sample.gEff = pointerWidth(s.correlationBlock());
  return sample;
}

TdhfTrajectory evolveTdhf(const TdhfState& s0, const TdhfParams& params, double t0,
                          double t1, double rtol, double atol, int n_out) {
  if (!(s0.g1 > 0.0) || !(s0.g2 > 0.0)) {
    throw InvalidInput("evolveTdhf: initial widths must be positive");
  }
  if (s0.hbar < 0.0) throw InvalidInput("evolveTdhf: hbar must be non-negative");
  if (n_out < 2) throw InvalidInput("evolveTdhf: need n_out >= 2");

  OdeProblem prob;
  prob.dimension = 8;
  prob.t0 = t0;
  prob.t1 = t1;
  prob.rtol = rtol;
  prob.atol = atol;
  const double hbar = s0.hbar;
  prob.rhs = [&params, hbar](double t, const StateVector& y, StateVector& dydt) {
    if (!(y[2] > 0.0) || !(y[4] > 0.0)) {
      throw IntegrationFailure("tdhf: width positivity violated", t);
    }
    const auto d = rhsImpl(unpackState(y, hbar), params);
    dydt.resize(8);
    for (int i = 0; i < 8; ++i) dydt[i] = d[i];
  };

  StateVector y0;
  packState(s0, y0);

  TdhfTrajectory traj;
  traj.params_ = params;
  traj.hbar_ = hbar;
  traj.dense_ = integrate(prob, y0);

  traj.samples_.reserve(n_out);
  double e0 = 0.0;
  for (int i = 0; i < n_out; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / (n_out - 1);
    TdhfSample sample;
    try {
      sample = traj.sampleAt(t);
    } catch (const NonPhysicalCorrelation&) {
      throw IntegrationFailure("tdhf: Gaussian positivity violated at sample", t);
    }
    if (i == 0) e0 = sample.energy;
    traj.diagnostics_.energyDrift =
        std::max(traj.diagnostics_.energyDrift,
                 std::abs(sample.energy - e0) / std::max(std::abs(e0), 1e-300));
    traj.diagnostics_.maxY = std::max(traj.diagnostics_.maxY, sample.y);
    traj.samples_.push_back(std::move(sample));
  }
  traj.diagnostics_.smallCorrelationAdvisory = traj.diagnostics_.maxY > 0.1;
  return traj;
}

std::pair<double, double> shortTimeCorrelations(const TdhfState& s0,
                                                const CouplingSpec& c, double t) {
  if (!(s0.g1 > 0.0) || !(s0.g2 > 0.0)) {
    throw InvalidInput("shortTimeCorrelations: widths must be positive");
  }
  const double sumS = s0.s1 + s0.s2;
  const double sumInvG = 1.0 / s0.g1 + 1.0 / s0.g2;
  const double mu2 = c.mu12Sq;
  const double g12 =
      s0.g12 - 2.0 * (sumS * s0.g12 + 0.25 * sumInvG * s0.s12) * t -
      0.5 * mu2 * sumInvG * t * t;
  const double s12 =
      s0.s12 + 2.0 * (mu2 - sumS * s0.s12 + 0.25 * sumInvG * s0.g12) * t -
      2.0 * mu2 * sumS * t * t;
  return {g12, s12};
}

double formalSolutionResidual(const TdhfTrajectory& traj) {
  const auto& samples = traj.samples();
  const std::size_t n = samples.size();
  if (n < 100) {
    throw InvalidInput("formalSolutionResidual: need >= 100 trajectory samples");
  }
  // Cumulative damping exponent Phi(t) = int_0^t (Sigma1 + Sigma2).
  std::vector<double> phi(n, 0.0), kern(n), s12k(n);
  for (std::size_t i = 0; i < n; ++i) {
    const TdhfState& s = samples[i].state;
    kern[i] = s.s1 + s.s2;
    s12k[i] = s.s12 * (1.0 / s.g1 + 1.0 / s.g2);
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double h = samples[i].t - samples[i - 1].t;
    phi[i] = phi[i - 1] + 0.5 * h * (kern[i] + kern[i - 1]);
  }

  const double g12_0 = samples[0].state.g12;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double memory = 0.0;
    for (std::size_t j = 1; j <= i; ++j) {
      const double h = samples[j].t - samples[j - 1].t;
      const double fa = s12k[j - 1] * std::exp(-2.0 * (phi[i] - phi[j - 1]));
      const double fb = s12k[j] * std::exp(-2.0 * (phi[i] - phi[j]));
      memory += 0.5 * h * (fa + fb);
    }
    const double predicted = g12_0 * std::exp(-2.0 * phi[i]) - 0.5 * memory;
    worst = std::max(worst, std::abs(samples[i].state.g12 - predicted));
  }
  return worst;
}

double decoherenceTimeAnalytic(const TdhfState& s0, const CouplingSpec& c) {
  const double norm = s0.g12 * s0.g12 + s0.s12 * s0.s12;
  if (norm <= 0.0) {
    throw DomainError(
        "decoherenceTimeAnalytic: zero initial correlations (tau ~ t/2 regime)");
  }
  const double rate = 4.0 * (s0.s1 + s0.s2) + 4.0 * c.mu12Sq * s0.s12 / norm;
  return 1.0 / rate;
}

double decoherenceTimeNumeric(const TdhfTrajectory& traj, double t_lo, double t_hi,
                              int n_fit) {
  if (!(t_hi > t_lo) || n_fit < 3) {
    throw InvalidInput("decoherenceTimeNumeric: bad fit window");
  }
  // Small-entropy branch of the dynamical time scale. For a single mode the
  // branch reduces to the log-slope of Y itself (Ydot lnY / (Y lnY) = Ydot/Y),
  // which is what the least-squares fitter below measures; the full ln S slope
  // differs from it by a 1/ln Y correction that only dies off logarithmically.
  std::vector<double> ts(n_fit), ys(n_fit);
  for (int i = 0; i < n_fit; ++i) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / (n_fit - 1);
    ts[i] = t;
    ys[i] = traj.sampleAt(t).y;
  }
  return entropyTimescale(ts, ys);
}

namespace {

// Width minimizing the one-sector static energy at fixed phi.
double staticWidth(const PotentialSpec& v, double hbar, double phi) {
  const double curv = v.d2(phi);
  const double lam4 = hbar * v.lambda;  // quartic self-energy slope
  // Solve -1/(8 g^2) + curv/2 + lam4 g / 4 = 0 for g > 0.
  double lo = 1e-12, hi = 1.0;
  const auto f = [&](double g) {
    return -0.125 / (g * g) + 0.5 * curv + 0.25 * lam4 * g;
  };
  while (f(hi) < 0.0 && hi < 1e12) hi *= 2.0;
  if (f(hi) < 0.0) throw DomainError("staticWidth: no stationary width (unbounded)");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double staticEnergyAtPhi(const PotentialSpec& v, double hbar, double phi, double* g_out) {
  if (hbar == 0.0) {
    // Classical limit: the width decouples from the energy; report the
    // harmonic ground-state width where the curvature supports one.
    if (g_out) {
      const double curv = v.d2(phi);
      *g_out = curv > 0.0 ? 0.5 / std::sqrt(curv)
                          : std::numeric_limits<double>::quiet_NaN();
    }
    return v.v(phi);
  }
  const double g = staticWidth(v, hbar, phi);
  if (g_out) *g_out = g;
  return v.v(phi) + hbar * (0.125 / g + 0.5 * v.d2(phi) * g) +
         hbar * hbar * 0.125 * v.lambda * g * g;
}

}  // namespace

StaticMinimum staticMinimum(const PotentialSpec& v, double hbar) {
  if (v.lambda < 0.0) throw InvalidInput("staticMinimum: lambda must be >= 0");
  if (v.lambda == 0.0 && v.muSq >= 0.0) {
    throw InvalidInput("staticMinimum: unbounded potential (lambda = 0, muSq >= 0)");
  }
  double phi_hi = 1.0;
  if (v.lambda > 0.0 && v.muSq > 0.0) {
    phi_hi = 3.0 * std::sqrt(6.0 * v.muSq / v.lambda);
  }
  // Golden-section over phi >= 0 (wells are symmetric).
  const double gr = 0.6180339887498949;
  double a = 0.0, b = phi_hi;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = staticEnergyAtPhi(v, hbar, c1, nullptr);
  double f2 = staticEnergyAtPhi(v, hbar, c2, nullptr);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = staticEnergyAtPhi(v, hbar, c1, nullptr);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = staticEnergyAtPhi(v, hbar, c2, nullptr);
    }
  }
  StaticMinimum out;
  out.phi = 0.5 * (a + b);
  out.energy = staticEnergyAtPhi(v, hbar, out.phi, &out.g);
  return out;
}

DoubleWellCalibration calibrateDoubleWell(double lambda, double hbar,
                                          double target_e_min) {
  if (!(lambda > 0.0)) throw InvalidInput("calibrateDoubleWell: lambda must be positive");
  if (!(target_e_min < 0.0)) {
    throw InvalidInput("calibrateDoubleWell: target minimum must be below the hilltop");
  }
  // E_min decreases monotonically with muSq; bracket then bisect.
  const auto eMin = [&](double muSq) {
    PotentialSpec v{muSq, lambda};
    return staticMinimum(v, hbar).energy;
  };
  double lo = 1e-6, hi = 1.0;
  while (eMin(hi) > target_e_min && hi < 1e8) hi *= 2.0;
  if (eMin(hi) > target_e_min) {
    throw DomainError("calibrateDoubleWell: could not bracket the target depth");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eMin(mid) > target_e_min ? lo : hi) = mid;
  }
  DoubleWellCalibration cal;
  cal.muSq = 0.5 * (lo + hi);
  cal.lambda = lambda;
  cal.hbar = hbar;
  cal.minimum = staticMinimum(PotentialSpec{cal.muSq, lambda}, hbar);
  return cal;
}

}  // namespace decoq
