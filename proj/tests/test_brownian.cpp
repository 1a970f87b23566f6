#include "decoq/brownian.hpp"

#include <cmath>

#include "doctest.h"

using namespace decoq;

namespace {

std::vector<BathMode> defaultBath(double g, int n = 64, double omega = 1.0) {
  BathSpec spec;
  spec.bigOmega = omega;
  spec.g = g;
  spec.nModes = n;
  spec.shapeF = shapeFlat();
  return discretizeBath(spec);
}

}  // namespace

TEST_CASE("ground initial state is a pure minimal packet") {
  const ParticleInit p{1.0, 1.0, 0.3};
  const BrownianSystem sys(p.mass, defaultBath(0.4, 32));
  const FullGaussianState s0 = sys.groundInitialState(p);

  CHECK(gaussianPurity(s0.cov) == doctest::Approx(1.0).epsilon(1e-9));

  const auto obs = particleObservables(s0, p.mass, true);
  CHECK(obs.width == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(obs.velocity == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(obs.sVN == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(obs.sLin == doctest::Approx(0.0).epsilon(1e-9));

  // Minimal uncertainty: sigma_x sigma_p = 1/2.
  const int n = sys.totalModes();
  const double sx = std::sqrt(s0.cov.elements()(0, 0));
  const double sp = std::sqrt(s0.cov.elements()(n, n));
  CHECK(sx * sp == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("free particle spreads by the closed-form law") {
  const ParticleInit p{2.0, 0.7, 1.1};
  const BrownianSystem sys(p.mass, defaultBath(0.0));
  CHECK(sys.bathModes() == 0);  // massless modes dropped
  const FullGaussianState s0 = sys.groundInitialState(p);
  const auto prep = sys.prepare(s0);
  for (double t : {0.0, 0.4, 1.3, 3.0}) {
    const auto obs = sys.observablesAt(prep, t);
    const double expected =
        std::sqrt(p.w0 * p.w0 + std::pow(t / (2.0 * p.mass * p.w0), 2.0));
    CHECK(obs.width == doctest::Approx(expected).epsilon(1e-8));
    CHECK(obs.velocity == doctest::Approx(p.v0).epsilon(1e-12));
  }
}

TEST_CASE("coupled dynamics conserves purity and energy") {
  const ParticleInit p{1.0, 0.8, 0.5};
  const auto bath = defaultBath(0.6, 64);
  const BrownianSystem sys(p.mass, bath);
  const FullGaussianState s0 = sys.groundInitialState(p);
  const auto prep = sys.prepare(s0);
  const double e0 = sys.observablesAt(prep, 0.0).energy;
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    const auto obs = sys.observablesAt(prep, t);
    CHECK(obs.purityGlobal == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(obs.energy == doctest::Approx(e0).epsilon(1e-8));
  }
}

TEST_CASE("particle slows down for positive coupling") {
  const ParticleInit p{1.0, 0.8, 1.0};
  const auto bath = defaultBath(0.5, 64);
  const BrownianSystem sys(p.mass, bath);
  const auto prep = sys.prepare(sys.groundInitialState(p));

  // Small-t perturbative oracle: v(t)/v0 = 1 - k t^2 / (2M) with
  // k = sum m_n w_n^2.
  double k = 0.0;
  for (const auto& m : bath) k += m.mass * m.omega * m.omega;

  double prev = 1.0;
  for (double t : {0.02, 0.04, 0.06, 0.08, 0.10}) {
    const auto obs = sys.observablesAt(prep, t);
    const double ratio = obs.velocity / p.v0;
    CHECK(ratio < prev);  // strictly decreasing on the short-time window
    const double oracle = 1.0 - 0.5 * k * t * t / p.mass;
    CHECK(ratio == doctest::Approx(oracle).epsilon(5e-3));
    prev = ratio;
  }
}

TEST_CASE("system and environment entropies stay equal") {
  const ParticleInit p{1.0, 0.5, 0.0};
  const BrownianSystem sys(p.mass, defaultBath(0.8, 48));
  const auto prep = sys.prepare(sys.groundInitialState(p));
  for (double t : {0.3, 0.9, 1.8}) {
    const auto obs = sys.observablesAt(prep, t, /*with_env=*/true);
    CHECK(std::abs(obs.sVN - obs.sEnv) < 1e-6);
    CHECK(obs.sLin <= obs.sVN + 1e-12);
  }
}

TEST_CASE("normal-mode evolution matches the matrix-exponential flow") {
  const ParticleInit p{1.3, 0.9, 0.4};
  const auto bath = defaultBath(0.7, 8);
  const BrownianSystem sys(p.mass, bath);
  const FullGaussianState s0 = sys.groundInitialState(p);

  const double t = 0.83;
  const FullGaussianState viaModes = sys.evolve(s0, t);

  const Matrix q = sys.hamiltonianForm();
  const int n = sys.totalModes();
  const Matrix flow = linearFlow(symplecticForm(n) * q, t);
  const Eigen::VectorXd means = flow * s0.means;
  const Matrix cov = flow * s0.cov.elements() * flow.transpose();

  CHECK((viaModes.means - means).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((viaModes.cov.elements() - cov).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("recurrence time scales with the mode count") {
  const auto bath = defaultBath(0.4, 128, 1.0);
  const BrownianSystem sys(1.0, bath);
  CHECK(sys.recurrenceTime() == doctest::Approx(2.0 * M_PI * 128).epsilon(1e-9));
}

TEST_CASE("negative time is rejected") {
  const ParticleInit p{1.0, 1.0, 0.0};
  const BrownianSystem sys(1.0, defaultBath(0.1, 8));
  CHECK_THROWS_AS(sys.evolve(sys.groundInitialState(p), -0.1), InvalidInput);
}
