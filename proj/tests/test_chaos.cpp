#include "decoq/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "decoq/rng.hpp"
#include "doctest.h"

using namespace decoq;

namespace {

const DoubleWellCalibration& calibration() {
  static const DoubleWellCalibration cal = calibrateDoubleWell(1.0, 1.0);
  return cal;
}

PotentialSpec calibratedWell() { return {calibration().muSq, calibration().lambda}; }

// Occupied 50x50 cells over a common bounding box.
int occupancy(const std::vector<SectionPoint>& pts, double xlo, double xhi, double ylo,
              double yhi) {
  std::set<int> cells;
  for (const auto& p : pts) {
    const int ix = std::min(49, std::max(0, static_cast<int>(std::floor(
                                    50.0 * (p.phi - xlo) / (xhi - xlo)))));
    const int iy = std::min(49, std::max(0, static_cast<int>(std::floor(
                                    50.0 * (p.pi - ylo) / (yhi - ylo)))));
    cells.insert(50 * ix + iy);
  }
  return static_cast<int>(cells.size());
}

}  // namespace

TEST_CASE("on-shell preparation hits the requested energy") {
  const PotentialSpec v = calibratedWell();
  for (double e : {-24.0, -10.0, 2.0}) {
    const SystemState s = onShellState(v, 1.0, e);
    CHECK(sectorEnergy(s, v, 1.0) == doctest::Approx(e).epsilon(1e-10));
    CHECK(s.pi >= 0.0);
  }
  CHECK_THROWS_AS(onShellState(v, 1.0, -25.0), DomainError);
}

TEST_CASE("density diagonal of a static state is constant") {
  const PotentialSpec v = calibratedWell();
  SystemState s0;
  s0.phi = calibration().minimum.phi;
  s0.g = calibration().minimum.g;
  const SystemTrajectory traj = runSystem(s0, {v, 1.0, 1e-10, 1e-12}, 5.0);
  const auto series = densityDiagonalSeries(traj, 0.0, 64);
  for (double x : series) CHECK(x == doctest::Approx(series[0]).epsilon(1e-8));
}

TEST_CASE("density diagonal of a coherent state is periodic with harmonics") {
  const double omega = 2.0;
  PotentialSpec h{-omega * omega, 0.0};
  SystemState s0{0.5, 0.0, 0.5 / omega, 0.0};
  const double horizon = 2.0 * M_PI / omega * 200.0;
  const SystemTrajectory traj = runSystem(s0, {h, 1.0, 1e-10, 1e-12}, horizon);
  const int n = 2048;
  const auto series = densityDiagonalSeries(traj, 0.3, n);
  const auto report = classifySpectrum(series, horizon / (n - 1));
  CHECK(report.classification == MotionClass::Regular);
  REQUIRE(!report.dominant_lines.empty());
  const double f0 = omega / (2.0 * M_PI);
  // Strongest line at the fundamental or one of its low harmonics.
  const double ratio = report.dominant_lines[0].frequency / f0;
  CHECK(std::abs(ratio - std::round(ratio)) < 0.05);
  CHECK(std::round(ratio) <= 3);
}

TEST_CASE("density diagonal stays normalized") {
  const PotentialSpec v = calibratedWell();
  const SystemState s0 = onShellState(v, 1.0, -5.0);
  const SystemTrajectory traj = runSystem(s0, {v, 1.0, 1e-10, 1e-12}, 10.0);
  for (double t : {0.0, 2.7, 8.1}) {
    const SystemState s = traj.stateAt(t);
    // Quadrature of the Gaussian over x at fixed t.
    const double lo = s.phi - 12.0 * std::sqrt(s.g), hi = s.phi + 12.0 * std::sqrt(s.g);
    const int panels = 4000;
    double acc = 0.0;
    for (int i = 0; i <= panels; ++i) {
      const double x = lo + (hi - lo) * i / panels;
      const double w = (i == 0 || i == panels) ? 0.5 : 1.0;
      const double dx = x - s.phi;
      acc += w * std::exp(-0.5 * dx * dx / s.g) / std::sqrt(2.0 * M_PI * s.g);
    }
    acc *= (hi - lo) / panels;
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("classifier anchors: line floor and noise ceiling") {
  const int n = 1024;
  std::vector<double> sine(n), noise(n);
  SplitMix64 rng(7);
  for (int i = 0; i < n; ++i) {
    sine[i] = std::sin(2.0 * M_PI * 0.05 * i);
    noise[i] = rng.normal();
  }
  const auto rs = classifySpectrum(sine, 1.0);
  CHECK(rs.classification == MotionClass::Regular);
  CHECK(rs.relative_spectral_entropy < 0.2);

  const auto rn = classifySpectrum(noise, 1.0);
  CHECK(rn.classification == MotionClass::Chaotic);
  CHECK(rn.relative_spectral_entropy > 0.85);

  std::vector<double> tooShort(512, 1.0);
  CHECK_THROWS_AS(classifySpectrum(tooShort, 1.0), InvalidInput);
}

TEST_CASE("harmonic flow has a vanishing Lyapunov exponent") {
  PotentialSpec h{-4.0, 0.0};
  const SystemState s0{0.6, 0.0, 0.25, 0.0};
  const auto est = lyapunovExponent(s0, {h, 1.0, 1e-11, 1e-13}, 600.0, 300);
  CHECK(std::abs(est.lambda) < 1e-3);
}

TEST_CASE("classical double well is regular at all bounded energies") {
  // The shear floor of the estimator decays like ln(T)/T; the 1e-3 scale
  // needs a few thousand time units of horizon.
  const PotentialSpec v = calibratedWell();
  for (double e : {-20.0, -3.0, 30.0}) {
    const SystemState s0 = onShellState(v, 0.0, e);
    const auto est = lyapunovExponent(s0, {v, 0.0, 1e-11, 1e-13}, 4000.0, 800);
    CHECK(std::abs(est.lambda) < 1e-3);
  }
}

TEST_CASE("chaotic band carries a positive exponent and a broadband label") {
  const PotentialSpec v = calibratedWell();
  const SystemState s0 = onShellState(v, 1.0, -3.0);
  const ChaosRunSpec spec{v, 1.0, 1e-10, 1e-12};
  const double horizon = 128.0 * 2.22;
  const auto est = lyapunovExponent(s0, spec, horizon);
  CHECK(est.lambda > 0.02);

  const SystemTrajectory traj = runSystem(s0, spec, horizon);
  const int n = 1024;
  std::vector<double> phi(n);
  for (int i = 0; i < n; ++i) phi[i] = traj.stateAt(horizon * i / (n - 1.0)).phi;
  const auto report = classifySpectrum(phi, horizon / (n - 1));
  CHECK(report.classification == MotionClass::Chaotic);
}

TEST_CASE("Poincare section: harmonic points lie on one closed curve") {
  const double omega = 2.0;
  PotentialSpec h{-omega * omega, 0.0};
  // Width displaced from the static value so the section surface is crossed.
  const SystemState s0{0.8, 0.0, 0.4, 0.0};
  const auto res = poincareSection(s0, {h, 1.0, 1e-11, 1e-13}, {}, 200, 800.0);
  REQUIRE(res.complete);
  CHECK(res.maxEnergyDrift < 1e-6);

  // The mean field decouples for lambda = 0: every section point sits on the
  // same mean-field energy ellipse.
  double emean = 0.0;
  for (const auto& p : res.points) {
    emean += 0.5 * p.pi * p.pi + 0.5 * omega * omega * p.phi * p.phi;
  }
  emean /= static_cast<double>(res.points.size());
  double worst = 0.0;
  for (const auto& p : res.points) {
    const double r = std::sqrt(
        (0.5 * p.pi * p.pi + 0.5 * omega * omega * p.phi * p.phi) / emean);
    worst = std::max(worst, std::abs(r - 1.0));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("stochastic filling: chaotic occupancy exceeds 10x the regular one") {
  const PotentialSpec v = calibratedWell();
  const ChaosRunSpec spec{v, 1.0, 1e-10, 1e-12};
  const auto regular =
      poincareSection(onShellState(v, 1.0, -22.0), spec, {}, 800, 2500.0);
  const auto chaotic =
      poincareSection(onShellState(v, 1.0, -3.68601), spec, {}, 800, 2500.0);
  REQUIRE(regular.complete);
  REQUIRE(chaotic.complete);
  CHECK(regular.maxEnergyDrift < 1e-6);
  CHECK(chaotic.maxEnergyDrift < 1e-6);

  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto* set : {&regular.points, &chaotic.points}) {
    for (const auto& p : *set) {
      xlo = std::min(xlo, p.phi);
      xhi = std::max(xhi, p.phi);
      ylo = std::min(ylo, p.pi);
      yhi = std::max(yhi, p.pi);
    }
  }
  const int occRegular = occupancy(regular.points, xlo, xhi, ylo, yhi);
  const int occChaotic = occupancy(chaotic.points, xlo, xhi, ylo, yhi);
  CHECK(occChaotic > 10 * occRegular);
}

TEST_CASE("incomplete sections are flagged") {
  const PotentialSpec v = calibratedWell();
  const auto res = poincareSection(onShellState(v, 1.0, -20.0), {v, 1.0, 1e-10, 1e-12},
                                   {}, 5000, 20.0);
  CHECK(!res.complete);
}

TEST_CASE("energy sweep reproduces the regular-chaotic-regular pattern") {
  const PotentialSpec v = calibratedWell();
  SweepOptions opt;
  opt.n_samples = 1024;
  opt.periods = 128.0;
  const std::vector<double> grid = {-24.0, -20.0, -14.0, -4.0, -3.0,
                                    0.5,   5.0,   25.0,  150.0};
  const auto rows = energySweep(v, 1.0, grid, opt);
  REQUIRE(rows.size() == grid.size());
  for (const auto& r : rows) CHECK(r.error.empty());

  CHECK(rows.front().label == MotionClass::Regular);
  CHECK(rows.back().label == MotionClass::Regular);
  int chaotic = 0;
  for (const auto& r : rows) {
    if (r.label == MotionClass::Chaotic) ++chaotic;
  }
  CHECK(chaotic >= 2);

  // Classifier label and Lyapunov sign agree away from the thresholds.
  int agree = 0, decided = 0;
  for (const auto& r : rows) {
    if (r.label == MotionClass::Indeterminate) continue;
    ++decided;
    const bool lyapChaotic = r.lyapunov > 0.02;
    if ((r.label == MotionClass::Chaotic) == lyapChaotic) ++agree;
  }
  REQUIRE(decided > 0);
  CHECK(static_cast<double>(agree) / decided >= 0.9);
}

TEST_CASE("classical sweep has no chaotic rows") {
  const PotentialSpec v = calibratedWell();
  SweepOptions opt;
  opt.n_samples = 1024;
  opt.periods = 128.0;
  const auto rows = energySweep(v, 0.0, {-24.0, -14.0, -3.0, 0.5, 30.0}, opt);
  for (const auto& r : rows) {
    CHECK(r.error.empty());
    CHECK(r.label != MotionClass::Chaotic);
    CHECK(std::abs(r.lyapunov) < 5e-2);
  }
}

TEST_CASE("per-row sweep failures are recorded without aborting") {
  const PotentialSpec v = calibratedWell();
  SweepOptions opt;
  opt.n_samples = 1024;
  opt.periods = 16.0;
  const auto rows = energySweep(v, 1.0, {-30.0, -20.0}, opt);  // first is below E_min
  REQUIRE(rows.size() == 2);
  CHECK(!rows[0].error.empty());
  CHECK(rows[1].error.empty());
}

TEST_CASE("classification is stable under sample doubling away from thresholds") {
  const PotentialSpec v = calibratedWell();
  for (double e : {-24.0, -3.68601}) {
    SweepOptions opt;
    opt.periods = 128.0;
    opt.n_samples = 1024;
    const auto a = energySweep(v, 1.0, {e}, opt);
    opt.n_samples = 2048;
    const auto b = energySweep(v, 1.0, {e}, opt);
    CHECK(a[0].label == b[0].label);
  }
}

TEST_CASE("directed crossings on a chaotic run are half of all sign flips") {
  const PotentialSpec v = calibratedWell();
  const SystemState s0 = onShellState(v, 1.0, -3.0);
  const SystemTrajectory traj = runSystem(s0, {v, 1.0, 1e-10, 1e-12}, 120.0);
  const auto eventFn = [](const StateVector& y) { return y[3]; };  // Sigma = 0

  int flips = 0;
  double prev = eventFn(traj.dense().evaluate(0.0));
  for (int i = 1; i <= 240000; ++i) {
    const double t = 120.0 * i / 240000.0;
    const double f = eventFn(traj.dense().evaluate(t));
    if (prev != 0.0 && f != 0.0 && prev * f < 0.0) ++flips;
    if (f != 0.0) prev = f;
  }

  const auto both = locateEvent(traj.dense(), eventFn, 0);
  const auto rising = locateEvent(traj.dense(), eventFn, +1);
  CHECK(static_cast<int>(both.size()) == flips);
  CHECK(std::abs(static_cast<int>(rising.size()) - flips / 2) <= 1);
}

TEST_CASE("regular section points are stable under tolerance refinement") {
  const PotentialSpec v = calibratedWell();
  const SystemState s0 = onShellState(v, 1.0, -22.0);
  const auto coarse = poincareSection(s0, {v, 1.0, 1e-10, 1e-12}, {}, 100, 400.0);
  const auto fine = poincareSection(s0, {v, 1.0, 1e-11, 1e-13}, {}, 100, 400.0);
  REQUIRE(coarse.complete);
  REQUIRE(fine.complete);
  double diameter = 0.0;
  for (const auto& p : coarse.points) {
    diameter = std::max(diameter, std::hypot(p.phi - coarse.points[0].phi,
                                             p.pi - coarse.points[0].pi));
  }
  // Point-to-set distance: every coarse point has a fine neighbor.
  double worst = 0.0;
  for (const auto& p : coarse.points) {
    double best = 1e300;
    for (const auto& q : fine.points) {
      best = std::min(best, std::hypot(p.phi - q.phi, p.pi - q.pi));
    }
    worst = std::max(worst, best);
  }
  CHECK(worst < 1e-4 * diameter);
}

TEST_CASE("density diagonal from a coupled-pair trajectory") {
  TdhfParams params;
  params.v1 = {-4.0, 0.0};
  params.v2 = {-1.0, 0.0};
  TdhfState s0;
  s0.phi1 = 0.5;
  s0.g1 = 0.25;
  s0.g2 = 0.5;
  const TdhfTrajectory traj = evolveTdhf(s0, params, 0.0, 1.0, 1e-10, 1e-12, 33);
  const auto series = densityDiagonalSeries(traj, 0.3);
  REQUIRE(series.size() == traj.samples().size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = traj.samples()[i].state;
    const double dx = 0.3 - s.phi1;
    const double expected =
        std::exp(-0.5 * dx * dx / s.g1) / std::sqrt(2.0 * M_PI * s.g1);
    CHECK(series[i] == doctest::Approx(expected).epsilon(1e-12));
  }
}
