#include "decoq/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace decoq {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

bool finite(const StateVector& v) { return v.allFinite(); }

}  // namespace

StateVector Trajectory::evaluate(double t) const {
  if (steps_.empty()) throw InvalidInput("Trajectory: empty");
  const double lo = std::min(t0_, t1_), hi = std::max(t0_, t1_);
  if (t < lo - 1e-12 * (hi - lo + 1.0) || t > hi + 1e-12 * (hi - lo + 1.0)) {
    throw InvalidInput("Trajectory::evaluate: time outside integration span");
  }
  // Steps are stored in integration order; forward integration only here.
  auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                             [](double value, const Step& s) { return value < s.t; });
  std::size_t idx = (it == steps_.begin()) ? 0 : static_cast<std::size_t>(it - steps_.begin() - 1);
  if (idx >= steps_.size()) idx = steps_.size() - 1;
  const Step& s = steps_[idx];
  const double theta = std::clamp((t - s.t) / s.h, 0.0, 1.0);
  const double th1 = 1.0 - theta;
  return s.rcont1 +
         theta * (s.rcont2 + th1 * (s.rcont3 + theta * (s.rcont4 + th1 * s.rcont5)));
}

std::vector<double> Trajectory::nodeTimes() const {
  std::vector<double> out;
  out.reserve(steps_.size() + 1);
  for (const Step& s : steps_) out.push_back(s.t);
  out.push_back(t1_);
  return out;
}

std::vector<std::pair<double, StateVector>> Trajectory::sampleUniform(int n) const {
  if (n < 2) throw InvalidInput("Trajectory::sampleUniform: need n >= 2");
  std::vector<std::pair<double, StateVector>> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = t0_ + (t1_ - t0_) * static_cast<double>(i) / (n - 1);
    out.emplace_back(t, evaluate(t));
  }
  return out;
}

Trajectory integrate(const OdeProblem& p, const StateVector& y0) {
  if (p.dimension <= 0 || y0.size() != p.dimension) {
    throw InvalidInput("integrate: dimension mismatch");
  }
  if (!(p.rtol > 0.0) || !(p.atol > 0.0)) {
    throw InvalidInput("integrate: tolerances must be positive");
  }
  if (!(p.t1 > p.t0)) throw InvalidInput("integrate: requires t1 > t0");

  const double span = p.t1 - p.t0;
  const double hmin = 16.0 * std::numeric_limits<double>::epsilon() *
                      std::max({std::abs(p.t0), std::abs(p.t1), span});

  Trajectory traj;
  traj.t0_ = p.t0;
  traj.t1_ = p.t1;

  StateVector y = y0;
  StateVector k1(p.dimension), k2(p.dimension), k3(p.dimension), k4(p.dimension),
      k5(p.dimension), k6(p.dimension), k7(p.dimension), ytmp(p.dimension),
      ynew(p.dimension);

  double t = p.t0;
  p.rhs(t, y, k1);
  if (!finite(k1)) throw IntegrationFailure("integrate: RHS not finite at start", t);

  double h;
  if (p.fixed_step > 0.0) {
    h = p.fixed_step;
  } else {
    const double ynorm = std::max(y.cwiseAbs().maxCoeff(), 1e-8);
    const double fnorm = std::max(k1.cwiseAbs().maxCoeff(), 1e-8);
    h = std::min(0.01 * ynorm / fnorm, span / 10.0);
    h = std::max(h, hmin * 64.0);
  }
  if (p.max_step > 0.0) h = std::min(h, p.max_step);

  const bool adaptive = p.fixed_step <= 0.0;
  bool have_k1 = true;

  while (t < p.t1) {
    h = std::min(h, p.t1 - t);
    if (adaptive && h < hmin) {
      throw IntegrationFailure("integrate: step size underflow", t);
    }
    if (!have_k1) {
      p.rhs(t, y, k1);
      if (!finite(k1)) throw IntegrationFailure("integrate: RHS not finite", t);
    }

    ytmp = y + h * (a21 * k1);
    p.rhs(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    p.rhs(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    p.rhs(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    p.rhs(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    p.rhs(t + h, ytmp, k6);
    ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    p.rhs(t + h, ynew, k7);

    if (!finite(k2) || !finite(k3) || !finite(k4) || !finite(k5) || !finite(k6) ||
        !finite(k7) || !finite(ynew)) {
      throw IntegrationFailure("integrate: RHS not finite", t);
    }

    double err = 0.0;
    for (int i = 0; i < p.dimension; ++i) {
      const double sk =
          p.atol + p.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
      err += (ei / sk) * (ei / sk);
    }
    err = std::sqrt(err / p.dimension);

    if (adaptive && err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      have_k1 = true;  // k1 still valid at unchanged (t, y)
      continue;
    }

    Trajectory::Step step;
    step.t = t;
    step.h = h;
    step.rcont1 = y;
    step.rcont2 = ynew - y;
    step.rcont3 = h * k1 - step.rcont2;
    step.rcont4 = step.rcont2 - h * k7 - step.rcont3;
    step.rcont5 =
        h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
    traj.steps_.push_back(std::move(step));

    t += h;
    y.swap(ynew);
    k1.swap(k7);  // FSAL
    have_k1 = true;

    if (adaptive) {
      const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
      h *= fac;
      if (p.max_step > 0.0) h = std::min(h, p.max_step);
    }
  }

  traj.t1_ = t;
  return traj;
}

std::vector<EventCrossing> locateEvent(
    const Trajectory& traj, const std::function<double(const StateVector&)>& eventFn,
    int direction, int subsamples_per_step) {
  std::vector<EventCrossing> out;
  const double span = traj.endTime() - traj.startTime();
  const double ttol = 1e-10 * std::abs(span);
  const int m = std::max(2, subsamples_per_step);

  const auto refine = [&](double ta, double tb, double fa) {
    while (tb - ta > ttol) {
      const double tm = 0.5 * (ta + tb);
      const double fm = eventFn(traj.evaluate(tm));
      if ((fa <= 0.0 && fm <= 0.0) || (fa > 0.0 && fm > 0.0)) {
        ta = tm;
        fa = fm;
      } else {
        tb = tm;
      }
    }
    return 0.5 * (ta + tb);
  };

  // Baseline is the last sample with a nonzero event value; exact zeros at
  // the grid (in particular the very first point) are not crossings.
  const std::vector<double> nodes = traj.nodeTimes();
  double tbase = nodes.front();
  double fbase = eventFn(traj.evaluate(tbase));
  for (std::size_t s = 0; s + 1 < nodes.size(); ++s) {
    const double ta = nodes[s], tb = nodes[s + 1];
    for (int j = 1; j <= m; ++j) {
      const double tj = ta + (tb - ta) * static_cast<double>(j) / m;
      const double fj = eventFn(traj.evaluate(tj));
      if (fj == 0.0) continue;
      if (fbase != 0.0 && fbase * fj < 0.0) {
        const bool rising = fj > 0.0;
        if (direction == 0 || (direction > 0 && rising) || (direction < 0 && !rising)) {
          const double tc = refine(tbase, tj, fbase);
          out.push_back({tc, traj.evaluate(tc)});
        }
      }
      tbase = tj;
      fbase = fj;
    }
  }
  return out;
}

}  // namespace decoq
