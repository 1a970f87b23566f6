#include "decoq/ode.hpp"

#include <cmath>

#include "doctest.h"

using namespace decoq;

namespace {

OdeProblem harmonic(double t1, double rtol = 1e-10, double atol = 1e-12) {
  OdeProblem p;
  p.dimension = 2;
  p.t0 = 0.0;
  p.t1 = t1;
  p.rtol = rtol;
  p.atol = atol;
  p.rhs = [](double, const StateVector& y, StateVector& d) {
    d.resize(2);
    d[0] = y[1];
    d[1] = -y[0];
  };
  return p;
}

}  // namespace

TEST_CASE("harmonic oscillator closes its orbit") {
  StateVector y0(2);
  y0 << 1.0, 0.0;
  const double period = 2.0 * M_PI;
  const Trajectory traj = integrate(harmonic(period), y0);
  const StateVector yf = traj.evaluate(period);
  CHECK(std::abs(yf[0] - 1.0) < 1e-8);
  CHECK(std::abs(yf[1]) < 1e-8);

  // Dense output against the analytic solution inside the span.
  for (double t : {0.3, 1.7, 4.4, 6.0}) {
    const StateVector y = traj.evaluate(t);
    CHECK(y[0] == doctest::Approx(std::cos(t)).epsilon(1e-8));
    CHECK(y[1] == doctest::Approx(-std::sin(t)).epsilon(1e-8));
  }
}

TEST_CASE("fixed-step error scales at the method order") {
  StateVector y0(2);
  y0 << 1.0, 0.0;
  const double t1 = 2.0;

  const auto globalError = [&](double h) {
    OdeProblem p = harmonic(t1);
    p.fixed_step = h;
    const Trajectory traj = integrate(p, y0);
    const StateVector yf = traj.evaluate(t1);
    return std::abs(yf[0] - std::cos(t1)) + std::abs(yf[1] + std::sin(t1));
  };

  const double e1 = globalError(0.1);
  const double e2 = globalError(0.05);
  const double order = std::log2(e1 / e2);
  CHECK(order > 4.0);   // 5th order +/- 20%
  CHECK(order < 6.0);
}

TEST_CASE("tolerance tightening reduces the global error") {
  StateVector y0(2);
  y0 << 1.0, 0.0;
  const double t1 = 20.0;
  const auto err = [&](double rtol) {
    const Trajectory traj = integrate(harmonic(t1, rtol, rtol * 1e-2), y0);
    return std::abs(traj.evaluate(t1)[0] - std::cos(t1));
  };
  const double coarse = err(1e-6);
  const double fine = err(1e-8);
  CHECK(fine < coarse);
  CHECK(fine < 1e-7);
}

TEST_CASE("non-finite right-hand side aborts with the last good time") {
  OdeProblem p;
  p.dimension = 1;
  p.t0 = 0.0;
  p.t1 = 2.0;
  p.rhs = [](double t, const StateVector& y, StateVector& d) {
    d.resize(1);
    d[0] = t < 1.0 ? y[0] : std::nan("");
  };
  StateVector y0(1);
  y0 << 1.0;
  CHECK_THROWS_AS(integrate(p, y0), IntegrationFailure);
}

TEST_CASE("event location finds sine crossings") {
  OdeProblem p;
  p.dimension = 1;
  p.t0 = 0.0;
  p.t1 = 10.0;
  p.rhs = [](double, const StateVector&, StateVector& d) {
    d.resize(1);
    d[0] = 1.0;
  };
  StateVector y0(1);
  y0 << 0.0;
  const Trajectory traj = integrate(p, y0);

  const auto eventFn = [](const StateVector& y) { return std::sin(y[0]); };

  const auto all = locateEvent(traj, eventFn, 0);
  REQUIRE(all.size() == 3);
  CHECK(all[0].t == doctest::Approx(M_PI).epsilon(1e-8));
  CHECK(all[1].t == doctest::Approx(2.0 * M_PI).epsilon(1e-8));
  CHECK(all[2].t == doctest::Approx(3.0 * M_PI).epsilon(1e-8));

  const auto rising = locateEvent(traj, eventFn, +1);
  REQUIRE(rising.size() == 1);
  CHECK(rising[0].t == doctest::Approx(2.0 * M_PI).epsilon(1e-8));

  const auto falling = locateEvent(traj, eventFn, -1);
  REQUIRE(falling.size() == 2);
  CHECK(falling[0].t == doctest::Approx(M_PI).epsilon(1e-8));
}

TEST_CASE("directed crossings are half of all sign flips") {
  // Oscillatory flow with many crossings of x = 0.25.
  StateVector y0(2);
  y0 << 1.0, 0.0;
  const Trajectory traj = integrate(harmonic(50.0), y0);
  const auto eventFn = [](const StateVector& y) { return y[0] - 0.25; };

  // Brute-force sign scan on a fine uniform grid.
  int flips = 0;
  double prev = eventFn(traj.evaluate(0.0));
  for (int i = 1; i <= 200000; ++i) {
    const double t = 50.0 * i / 200000.0;
    const double f = eventFn(traj.evaluate(t));
    if ((prev <= 0.0 && f > 0.0) || (prev > 0.0 && f <= 0.0)) ++flips;
    prev = f;
  }

  const auto rising = locateEvent(traj, eventFn, +1);
  const auto both = locateEvent(traj, eventFn, 0);
  CHECK(static_cast<int>(both.size()) == flips);
  CHECK(static_cast<int>(rising.size()) == flips / 2);
}

TEST_CASE("event times refine under tolerance tightening") {
  StateVector y0(2);
  y0 << 1.0, 0.0;
  const auto crossingAt = [&](double rtol) {
    const Trajectory traj = integrate(harmonic(4.0, rtol, rtol * 1e-2), y0);
    const auto ev = locateEvent(traj, [](const StateVector& y) { return y[0]; }, 0);
    REQUIRE(!ev.empty());
    return ev[0].t;
  };
  const double exact = M_PI / 2.0;
  const double coarse = std::abs(crossingAt(1e-6) - exact);
  const double fine = std::abs(crossingAt(1e-10) - exact);
  CHECK(fine <= coarse + 1e-12);
  CHECK(fine < 1e-9);
}
