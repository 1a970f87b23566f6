#include "decoq/bath.hpp"

#include <cmath>

#include "decoq/brownian.hpp"
#include "doctest.h"

using namespace decoq;

namespace {

// Independent quadrature oracle: adaptive-depth Simpson on [a, b].
double simpsonOracle(const std::function<double(double)>& f, double a, double b,
                     int panels = 20000) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("single-bin bookkeeping") {
  BathSpec spec;
  spec.bigOmega = 2.0;
  spec.g = 0.5;
  spec.nModes = 1;
  spec.shapeF = shapeFlat();
  const auto modes = discretizeBath(spec);
  REQUIRE(modes.size() == 1);
  const double omega = 1.0;  // midpoint of (0, 2]
  CHECK(modes[0].omega == doctest::Approx(omega));
  const double intensity = 0.5 * 8.0 * 1.0;  // g Omega^3 F
  CHECK(modes[0].mass ==
        doctest::Approx(2.0 * intensity * 2.0 / (omega * omega * omega)).epsilon(1e-12));
}

TEST_CASE("zero coupling gives massless modes") {
  BathSpec spec;
  spec.g = 0.0;
  spec.nModes = 16;
  spec.shapeF = shapePower(1.0);
  for (const auto& m : discretizeBath(spec)) CHECK(m.mass == 0.0);
}

TEST_CASE("moments of the spectral density are reproduced") {
  // F = x^3 keeps all three moments k = 0, 1, 2 integrable.
  BathSpec spec;
  spec.bigOmega = 1.7;
  spec.g = 0.9;
  spec.nModes = 256;
  spec.shapeF = shapePower(3.0);
  const auto modes = discretizeBath(spec);

  const auto intensity = [&](double w) {
    return spec.g * std::pow(spec.bigOmega, 3.0) * spec.shapeF(w / spec.bigOmega);
  };
  for (int k = 0; k <= 2; ++k) {
    double discrete = 0.0;
    for (const auto& m : modes) discrete += m.mass * std::pow(m.omega, k);
    const double continuum = simpsonOracle(
        [&](double w) {
          return w < 1e-300 ? 0.0 : 2.0 * intensity(w) * std::pow(w, k - 3.0);
        },
        0.0, spec.bigOmega);
    CHECK(discrete == doctest::Approx(continuum).epsilon(0.01));
  }
}

TEST_CASE("Ohmic-like shape reproduces the g0 moment on a uniform grid") {
  BathSpec spec;
  spec.bigOmega = 1.0;
  spec.g = 2.0;
  spec.nModes = 256;
  spec.shapeF = shapePower(1.0);
  const auto modes = discretizeBath(spec);
  // sum m w^2 / 2 approximates int I(w)/w dw = g Omega^3 here (I = 2w, so
  // the integrand is the constant 2).
  double discrete = 0.0;
  for (const auto& m : modes) discrete += 0.5 * m.mass * m.omega * m.omega;
  const double continuum = simpsonOracle([](double) { return 2.0; }, 0.0, 1.0);
  CHECK(discrete == doctest::Approx(continuum).epsilon(0.01));
  CHECK(g0FromModes(modes, spec.bigOmega) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("negative shape is rejected") {
  BathSpec spec;
  spec.g = 1.0;
  spec.nModes = 8;
  spec.shapeF = [](double x) { return 0.5 - x; };
  CHECK_THROWS_AS(discretizeBath(spec), InvalidInput);
}

TEST_CASE("g0 for simple shapes") {
  BathSpec spec;
  spec.g = 3.0;
  spec.shapeF = shapePower(1.0);
  CHECK(g0Parameter(spec) == doctest::Approx(3.0).epsilon(1e-9));
  spec.shapeF = shapePower(2.0);
  CHECK(g0Parameter(spec) == doctest::Approx(1.5).epsilon(1e-9));
  spec.shapeF = shapeFlat();  // log-divergent at the origin
  CHECK_THROWS_AS(g0Parameter(spec), DomainError);
}

TEST_CASE("tabulated shape matches a high-resolution trapezoid oracle") {
  std::vector<double> xs, fs;
  for (int i = 0; i <= 40; ++i) {
    const double x = static_cast<double>(i) / 40.0;
    xs.push_back(x);
    fs.push_back(x * (1.0 + 0.3 * x));  // linear-in-x near 0: integrable
  }
  BathSpec spec;
  spec.g = 1.0;
  spec.shapeF = shapeFromTable(xs, fs);

  // Trapezoid on the same piecewise-linear interpolant.
  const auto f = spec.shapeF;
  double oracle = 0.0;
  const int nPanels = 400000;
  double prev = f(1e-12) / 1e-12;
  for (int i = 1; i <= nPanels; ++i) {
    const double x = static_cast<double>(i) / nPanels;
    const double cur = f(x) / x;
    oracle += 0.5 * (prev + cur) / nPanels;
    prev = cur;
  }
  CHECK(g0Parameter(spec) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("discrete g0 agrees with the continuum value when it exists") {
  BathSpec spec;
  spec.bigOmega = 2.5;
  spec.g = 0.7;
  spec.nModes = 400;
  spec.shapeF = shapePower(1.0);
  const double cont = g0Parameter(spec);
  const double disc = g0FromModes(discretizeBath(spec), spec.bigOmega);
  CHECK(disc == doctest::Approx(cont).epsilon(5e-3));
}

TEST_CASE("alpha and t+ scaling") {
  ParticleInit p;
  p.mass = 1.0;
  p.w0 = 1.0;
  const AlphaTPlus ref = alphaAndTPlus(p, 1.0, 0.5, 0.0);
  CHECK(ref.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ref.tPlus == doctest::Approx(0.0));

  ParticleInit wide = p;
  wide.w0 = 2.0;
  CHECK(alphaAndTPlus(wide, 1.0, 0.5, 0.0).alpha ==
        doctest::Approx(ref.alpha / 16.0).epsilon(1e-12));

  CHECK(alphaAndTPlus(p, 1.0, 0.5, 2.0).tPlus == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(alphaAndTPlus(p, 1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("log grid covers the cutoff decade structure") {
  BathSpec spec;
  spec.bigOmega = 2.0;
  spec.g = 1.0;
  spec.nModes = 64;
  spec.discretization = BathSpec::Grid::Log;
  spec.logFloor = 1e-3;
  spec.shapeF = shapePower(1.0);
  const auto modes = discretizeBath(spec);
  REQUIRE(modes.size() == 64);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    CHECK(modes[i].omega > 0.0);
    CHECK(modes[i].omega <= spec.bigOmega);
    if (i > 0) CHECK(modes[i].omega > modes[i - 1].omega);
  }
  CHECK(modes.front().omega < 1e-2 * spec.bigOmega);
  // The g0 moment is still reproduced against the continuum value.
  CHECK(g0FromModes(modes, spec.bigOmega) ==
        doctest::Approx(g0Parameter(spec)).epsilon(0.02));
}
