#include "decoq/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "decoq/rng.hpp"

namespace decoq {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void sectorRhs(const PotentialSpec& v, double hbar, const double* y, double* d) {
  const double phi = y[0], pi = y[1], g = y[2], s = y[3];
  d[0] = pi;
  d[1] = -v.d1(phi) - 0.5 * hbar * v.d3(phi) * g;
  d[2] = 4.0 * s * g;
  d[3] = -2.0 * s * s + 0.125 / (g * g) - 0.5 * v.d2(phi) - 0.25 * hbar * v.d4() * g;
}

// Jacobian of the sector flow, for tangent-space dynamics.
void sectorJacobian(const PotentialSpec& v, double hbar, const double* y,
                    double jac[4][4]) {
  const double phi = y[0], g = y[2], s = y[3];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) jac[i][j] = 0.0;
  jac[0][1] = 1.0;
  jac[1][0] = -v.d2(phi) - 0.5 * hbar * v.d4() * g;
  jac[1][2] = -0.5 * hbar * v.d3(phi);
  jac[2][2] = 4.0 * s;
  jac[2][3] = 4.0 * g;
  jac[3][0] = -0.5 * v.d3(phi);
  jac[3][2] = -0.25 / (g * g * g) - 0.25 * hbar * v.d4();
  jac[3][3] = -4.0 * s;
}

SystemState unpack(const StateVector& y) { return {y[0], y[1], y[2], y[3]}; }

double fundamentalPeriod(const PotentialSpec& v, double hbar) {
  // Harmonic frequency at the well bottom.
  const StaticMinimum min = staticMinimum(v, hbar);
  double curv = v.d2(min.phi);
  if (!(curv > 0.0)) curv = std::abs(v.muSq);
  if (!(curv > 0.0)) curv = 1.0;
  return kTwoPi / std::sqrt(curv);
}

}  // namespace

double sectorEnergy(const SystemState& s, const PotentialSpec& v, double hbar) {
  if (!(s.g > 0.0)) throw InvalidInput("sectorEnergy: width must be positive");
  return 0.5 * s.pi * s.pi + v.v(s.phi) +
         hbar * (2.0 * s.s * s.s * s.g + 0.125 / s.g + 0.5 * v.d2(s.phi) * s.g) +
         hbar * hbar * 0.125 * v.d4() * s.g * s.g;
}

SystemState onShellState(const PotentialSpec& v, double hbar, double energy) {
  const StaticMinimum min = staticMinimum(v, hbar);
  SystemState s;
  s.phi = -min.phi;  // left well
  s.g = min.g;
  s.s = 0.0;
  s.pi = 0.0;
  const double rest = sectorEnergy(s, v, hbar);
  if (energy < rest - 1e-12 * std::max(1.0, std::abs(rest))) {
    throw DomainError("onShellState: requested energy below the static minimum");
  }
  s.pi = std::sqrt(std::max(0.0, 2.0 * (energy - rest)));
  return s;
}

SystemState SystemTrajectory::stateAt(double t) const { return unpack(dense_.evaluate(t)); }

SystemTrajectory runSystem(const SystemState& s0, const ChaosRunSpec& spec,
                           double t_max) {
  if (!(s0.g > 0.0)) throw InvalidInput("runSystem: width must be positive");
  OdeProblem prob;
  prob.dimension = 4;
  prob.t0 = 0.0;
  prob.t1 = t_max;
  prob.rtol = spec.rtol;
  prob.atol = spec.atol;
  const PotentialSpec v = spec.v;
  const double hbar = spec.hbar;
  prob.rhs = [v, hbar](double t, const StateVector& y, StateVector& dydt) {
    if (!(y[2] > 0.0)) throw IntegrationFailure("runSystem: width collapsed", t);
    dydt.resize(4);
    sectorRhs(v, hbar, y.data(), dydt.data());
  };
  StateVector y0(4);
  y0 << s0.phi, s0.pi, s0.g, s0.s;
  SystemTrajectory traj;
  traj.dense_ = integrate(prob, y0);
  return traj;
}

SectionResult poincareSection(const SystemState& s0, const ChaosRunSpec& spec,
                              const SectionSpec& section, int n_crossings,
                              double t_max) {
  if (n_crossings < 1) throw InvalidInput("poincareSection: need n_crossings >= 1");
  const SystemTrajectory traj = runSystem(s0, spec, t_max);

  std::function<double(const StateVector&)> event;
  switch (section.event) {
    case SectionSpec::Event::SigmaZero:
    case SectionSpec::Event::GExtremum:
      // dG/dt = 4 Sigma G, so G-extrema coincide with Sigma = 0 crossings.
      event = [](const StateVector& y) { return y[3]; };
      break;
    case SectionSpec::Event::Custom:
      if (!section.custom) throw InvalidInput("poincareSection: custom event missing");
      event = [fn = section.custom](const StateVector& y) { return fn(unpack(y)); };
      break;
  }

  const auto crossings = locateEvent(traj.dense(), event, section.direction);
  SectionResult result;
  result.complete = static_cast<int>(crossings.size()) >= n_crossings;
  const double e0 = sectorEnergy(s0, spec.v, spec.hbar);
  result.maxEnergyDrift = 0.0;
  const int keep = std::min<int>(n_crossings, static_cast<int>(crossings.size()));
  result.points.reserve(keep);
  for (int i = 0; i < keep; ++i) {
    const SystemState s = unpack(crossings[i].state);
    const double drift =
        std::abs(sectorEnergy(s, spec.v, spec.hbar) - e0) / std::max(std::abs(e0), 1e-300);
    result.maxEnergyDrift = std::max(result.maxEnergyDrift, drift);
    result.points.push_back({crossings[i].t, s.phi, s.pi});
  }
  return result;
}

std::vector<double> densityDiagonalSeries(const SystemTrajectory& traj, double x_star,
                                          int n_samples) {
  if (n_samples < 2) throw InvalidInput("densityDiagonalSeries: need >= 2 samples");
  std::vector<double> out(n_samples);
  const double t0 = traj.startTime(), t1 = traj.endTime();
  for (int i = 0; i < n_samples; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / (n_samples - 1);
    const SystemState s = traj.stateAt(t);
    const double dx = x_star - s.phi;
    out[i] = std::exp(-0.5 * dx * dx / s.g) / std::sqrt(kTwoPi * s.g);
  }
  return out;
}

std::vector<double> densityDiagonalSeries(const TdhfTrajectory& traj, double x_star) {
  const auto& samples = traj.samples();
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double g = samples[i].state.g1;
    const double dx = x_star - samples[i].state.phi1;
    out[i] = std::exp(-0.5 * dx * dx / g) / std::sqrt(kTwoPi * g);
  }
  return out;
}

ClassifierThresholds calibrateClassifier(std::uint64_t seed) {
  const int n = 1024;
  std::vector<double> sine(n), noise(n);
  SplitMix64 rng(seed);
  for (int i = 0; i < n; ++i) {
    sine[i] = std::sin(2.0 * M_PI * 0.05 * i);
    noise[i] = rng.normal();
  }
  const auto entropyOf = [](const std::vector<double>& s) {
    const PowerSpectrum ps = powerSpectrum(s, 1.0);
    return spectralEntropy(ps) / std::log(static_cast<double>(ps.powers.size()));
  };
  const double line = entropyOf(sine);
  const double broad = entropyOf(noise);
  ClassifierThresholds out;
  out.regular_below = line + 0.125 * (broad - line);
  out.chaotic_above = line + 0.16 * (broad - line);
  return out;
}

SpectrumReport classifySpectrum(const std::vector<double>& series, double dt,
                                const ClassifierThresholds& thresholds) {
  if (series.size() < 1024) {
    throw InvalidInput("classifySpectrum: need >= 1024 uniform samples");
  }
  SpectrumReport report;
  report.spectrum = powerSpectrum(series, dt);
  report.spectral_entropy = spectralEntropy(report.spectrum);
  const double hmax = std::log(static_cast<double>(report.spectrum.powers.size()));
  report.relative_spectral_entropy =
      hmax > 0.0 ? report.spectral_entropy / hmax : 0.0;
  report.dominant_lines = dominantPeaks(report.spectrum);
  if (report.relative_spectral_entropy < thresholds.regular_below) {
    report.classification = MotionClass::Regular;
  } else if (report.relative_spectral_entropy > thresholds.chaotic_above) {
    report.classification = MotionClass::Chaotic;
  } else {
    report.classification = MotionClass::Indeterminate;
  }
  return report;
}

LyapunovEstimate lyapunovExponent(const SystemState& s0, const ChaosRunSpec& spec,
                                  double horizon, int renorm_steps) {
  if (!(horizon > 0.0) || renorm_steps < 10) {
    throw InvalidInput("lyapunovExponent: need positive horizon, >= 10 renorms");
  }
  const PotentialSpec v = spec.v;
  const double hbar = spec.hbar;
  // At hbar = 0 the mean field closes on itself and is the 2-dof classical
  // system; the tangent dynamics runs there. Otherwise the full sector flow
  // with its 4-dimensional tangent space is used.
  const int dim = hbar > 0.0 ? 4 : 2;

  OdeProblem prob;
  prob.dimension = 2 * dim;  // state + tangent
  prob.rtol = spec.rtol;
  prob.atol = spec.atol;
  if (dim == 4) {
    prob.rhs = [v, hbar](double t, const StateVector& y, StateVector& dydt) {
      if (!(y[2] > 0.0)) throw IntegrationFailure("lyapunov: width collapsed", t);
      dydt.resize(8);
      sectorRhs(v, hbar, y.data(), dydt.data());
      double jac[4][4];
      sectorJacobian(v, hbar, y.data(), jac);
      for (int i = 0; i < 4; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) acc += jac[i][j] * y[4 + j];
        dydt[4 + i] = acc;
      }
    };
  } else {
    prob.rhs = [v](double, const StateVector& y, StateVector& dydt) {
      dydt.resize(4);
      dydt[0] = y[1];
      dydt[1] = -v.d1(y[0]);
      dydt[2] = y[3];
      dydt[3] = -v.d2(y[0]) * y[2];
    };
  }

  StateVector y(2 * dim);
  if (dim == 4) {
    y << s0.phi, s0.pi, s0.g, s0.s, 0.5, 0.5, 0.5, 0.5;
  } else {
    y << s0.phi, s0.pi, 0.5, 0.5;
  }
  y.tail(dim).normalize();

  const double dt = horizon / renorm_steps;
  double logsum = 0.0;
  std::vector<double> times(renorm_steps), cumlog(renorm_steps);
  for (int k = 0; k < renorm_steps; ++k) {
    prob.t0 = 0.0;
    prob.t1 = dt;  // autonomous flow: restart the clock each leg
    const Trajectory leg = integrate(prob, y);
    y = leg.evaluate(dt);
    const double growth = y.tail(dim).norm();
    logsum += std::log(std::max(growth, 1e-300));
    times[k] = (k + 1) * dt;
    cumlog[k] = logsum;
    y.tail(dim) /= growth;
  }

  // Regular tori grow tangent vectors algebraically; fitting
  // L(t) = a + b ln t + lambda t strips that shear so lambda vanishes for
  // regular motion. On sticky chaotic orbits the fit can misassign long
  // regular episodes, so the late-window secant (which decays like ln(T)/T
  // for tori but stays at the exponential rate for chaos) acts as a floor.
  const auto fitRate = [&](int from) {
    Eigen::MatrixXd m(renorm_steps - from, 3);
    Eigen::VectorXd rhs(renorm_steps - from);
    for (int k = from; k < renorm_steps; ++k) {
      m(k - from, 0) = 1.0;
      m(k - from, 1) = std::log(times[k]);
      m(k - from, 2) = times[k];
      rhs(k - from) = cumlog[k];
    }
    return m.colPivHouseholderQr().solve(rhs)(2);
  };

  const int third = 2 * renorm_steps / 3;
  const double lateSecant = (cumlog[renorm_steps - 1] - cumlog[third]) /
                            (times[renorm_steps - 1] - times[third]);
  const double fullAverage = cumlog[renorm_steps - 1] / times[renorm_steps - 1];

  LyapunovEstimate est;
  est.lambda = std::max(fitRate(renorm_steps / 4), lateSecant);
  est.converged =
      std::abs(lateSecant - fullAverage) <= 0.2 * std::max(std::abs(fullAverage), 1e-3);
  return est;
}

std::vector<SweepRow> energySweep(const PotentialSpec& v, double hbar,
                                  const std::vector<double>& energies,
                                  const SweepOptions& options) {
  std::vector<SweepRow> rows(energies.size());
  const double period = fundamentalPeriod(v, hbar);
  const double horizon = options.periods * period;
  const double lyap_horizon =
      options.lyapunov_horizon > 0.0 ? options.lyapunov_horizon : horizon;

  const auto runRow = [&](std::size_t idx) {
    SweepRow& row = rows[idx];
    row.energy = energies[idx];
    try {
      ChaosRunSpec spec{v, hbar, options.rtol, options.atol};
      const SystemState s0 = onShellState(v, hbar, energies[idx]);
      const SystemTrajectory traj = runSystem(s0, spec, horizon);
      // Classification runs on the mean field. The density diagonal (the
      // emitted spectrum product) maps deep-well oscillations through an
      // exponential, turning single-frequency orbits into wide harmonic
      // combs that inflate the spectral entropy of perfectly regular motion.
      std::vector<double> series(options.n_samples);
      for (int i = 0; i < options.n_samples; ++i) {
        const double t = horizon * static_cast<double>(i) / (options.n_samples - 1);
        series[i] = traj.stateAt(t).phi;
      }
      const double dt = horizon / (options.n_samples - 1);
      const SpectrumReport report = classifySpectrum(series, dt, options.thresholds);
      row.spectral_entropy = report.relative_spectral_entropy;
      row.label = report.classification;
      const LyapunovEstimate lyap = lyapunovExponent(s0, spec, lyap_horizon);
      row.lyapunov = lyap.lambda;
      row.lyapunov_converged = lyap.converged;
    } catch (const std::exception& err) {
      row.error = err.what();
      row.label = MotionClass::Indeterminate;
      row.spectral_entropy = std::numeric_limits<double>::quiet_NaN();
      row.lyapunov = std::numeric_limits<double>::quiet_NaN();
      row.lyapunov_converged = false;
    }
  };

  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < energies.size(); ++i) runRow(i);
  } else {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mtx;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          std::size_t idx;
          {
            std::lock_guard<std::mutex> lock(mtx);
            if (next >= rows.size()) return;
            idx = next++;
          }
          runRow(idx);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace decoq
