#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "decoq/errors.hpp"

namespace decoq {

using StateVector = Eigen::VectorXd;
using OdeRhs = std::function<void(double t, const StateVector& y, StateVector& dydt)>;

struct OdeProblem {
  int dimension = 0;
  OdeRhs rhs;
  double t0 = 0.0;
  double t1 = 1.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.0;    // 0: unrestricted
  double fixed_step = 0.0;  // >0 disables adaptivity (order tests)
};

/// Dense-output trajectory of an embedded Dormand-Prince 5(4) integration.
/// Continuous evaluation anywhere in [t0, t1] through the per-step
/// interpolation polynomials.
class Trajectory {
 public:
  double startTime() const { return t0_; }
  double endTime() const { return t1_; }
  std::size_t stepCount() const { return steps_.size(); }

  /// State at any t within the integration span (4th-order interpolant).
  StateVector evaluate(double t) const;

  /// Step end points (t0, then each accepted step end).
  std::vector<double> nodeTimes() const;

  /// Uniformly spaced samples over [t0, t1], n >= 2.
  std::vector<std::pair<double, StateVector>> sampleUniform(int n) const;

 private:
  friend Trajectory integrate(const OdeProblem&, const StateVector&);

  struct Step {
    double t;
    double h;
    StateVector rcont1, rcont2, rcont3, rcont4, rcont5;
  };

  double t0_ = 0.0;
  double t1_ = 0.0;
  std::vector<Step> steps_;
};

/// Integrate an initial value problem and keep dense output for the whole span.
Trajectory integrate(const OdeProblem& problem, const StateVector& y0);

struct EventCrossing {
  double t;
  StateVector state;
};

/// Sign-change crossings of eventFn along the trajectory, refined by bisection
/// on the dense output to 1e-10 of the span. direction > 0 keeps rising
/// crossings, < 0 falling, 0 both.
std::vector<EventCrossing> locateEvent(
    const Trajectory& traj, const std::function<double(const StateVector&)>& eventFn,
    int direction, int subsamples_per_step = 8);

}  // namespace decoq
