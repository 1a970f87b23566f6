#include "decoq/gaussian.hpp"

#include <cmath>

#include "decoq/rng.hpp"
#include "doctest.h"

using namespace decoq;

namespace {

// Random symplectic from per-mode rotations, squeezers and an orthogonal
// position/momentum mixer (same O on both blocks).
Matrix randomSymplectic(SplitMix64& rng, int n) {
  Matrix s = Matrix::Identity(2 * n, 2 * n);
  const auto applyModeOp = [&](int k, double c00, double c01, double c10, double c11) {
    Matrix op = Matrix::Identity(2 * n, 2 * n);
    op(k, k) = c00;
    op(k, n + k) = c01;
    op(n + k, k) = c10;
    op(n + k, n + k) = c11;
    s = op * s;
  };
  for (int k = 0; k < n; ++k) {
    const double th = rng.uniform(0.0, 2.0 * M_PI);
    applyModeOp(k, std::cos(th), std::sin(th), -std::sin(th), std::cos(th));
    const double r = rng.uniform(-0.8, 0.8);
    applyModeOp(k, std::exp(r), 0.0, 0.0, std::exp(-r));
  }
  if (n > 1) {
    // Givens mixer between modes 0 and 1 applied to both blocks.
    const double th = rng.uniform(0.0, 2.0 * M_PI);
    Matrix op = Matrix::Identity(2 * n, 2 * n);
    for (int blk : {0, n}) {
      op(blk + 0, blk + 0) = std::cos(th);
      op(blk + 0, blk + 1) = std::sin(th);
      op(blk + 1, blk + 0) = -std::sin(th);
      op(blk + 1, blk + 1) = std::cos(th);
    }
    s = op * s;
  }
  return s;
}

}  // namespace

TEST_CASE("symplectic eigenvalues of simple states") {
  Matrix vac(2, 2);
  vac << 0.5, 0.0, 0.0, 0.5;
  const auto nus = symplecticEigenvalues(CovarianceMatrix(vac));
  REQUIRE(nus.size() == 1);
  CHECK(nus[0] == doctest::Approx(0.5).epsilon(1e-12));

  Matrix thermal(2, 2);
  thermal << 2.0, 0.0, 0.0, 2.0;
  CHECK(symplecticEigenvalues(CovarianceMatrix(thermal))[0] ==
        doctest::Approx(2.0).epsilon(1e-12));

  CHECK(isPhysical(CovarianceMatrix(vac)));
  Matrix tooSharp(2, 2);
  tooSharp << 0.1, 0.0, 0.0, 0.1;
  CHECK(!isPhysical(CovarianceMatrix(tooSharp)));
}

TEST_CASE("pure two-mode states have equal reduced eigenvalues") {
  SplitMix64 rng(0x21);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix s = randomSymplectic(rng, 2);
    const Matrix v = s * (0.5 * Matrix::Identity(4, 4)) * s.transpose();
    const CovarianceMatrix cov(v);
    const double nuA = symplecticEigenvalues(cov.reduced({0}))[0];
    const double nuB = symplecticEigenvalues(cov.reduced({1}))[0];
    CHECK(nuA == doctest::Approx(nuB).epsilon(1e-9));
    CHECK(gaussianPurity(cov) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("symplectic eigenvalues are invariant under symplectic conjugation") {
  SplitMix64 rng(0x31);
  Matrix v0 = Matrix::Zero(6, 6);
  v0.diagonal() << 0.5, 1.5, 3.0, 0.5, 1.5, 3.0;
  const CovarianceMatrix base(v0);
  const auto ref = symplecticEigenvalues(base);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix s = randomSymplectic(rng, 3);
    const auto got = symplecticEigenvalues(
        CovarianceMatrix(s * base.elements() * s.transpose()));
    for (std::size_t k = 0; k < ref.size(); ++k) {
      CHECK(got[k] == doctest::Approx(ref[k]).epsilon(1e-8));
    }
  }
}

TEST_CASE("Gaussian entropy from the symplectic eigenvalue") {
  CHECK(gaussianEntropyFromNu(0.5) == doctest::Approx(0.0));
  CHECK(gaussianEntropyFromNu(1.0) == doctest::Approx(0.954771).epsilon(1e-6));
  CHECK(gaussianEntropyFromNu(1.0) ==
        doctest::Approx(1.5 * std::log(1.5) - 0.5 * std::log(0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(gaussianEntropyFromNu(0.2), DomainError);
}

TEST_CASE("linear flow basics") {
  CHECK((linearFlow(Matrix::Zero(3, 3), 2.0) - Matrix::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  // Single oscillator: rotation blocks.
  Matrix h(2, 2);
  h << 1.0, 0.0, 0.0, 1.0;  // H = (x^2 + p^2)/2
  const Matrix a = symplecticForm(1) * h;
  const Matrix s = linearFlow(a, 0.7);
  CHECK(s(0, 0) == doctest::Approx(std::cos(0.7)).epsilon(1e-12));
  CHECK(s(0, 1) == doctest::Approx(std::sin(0.7)).epsilon(1e-12));
  CHECK(s(1, 0) == doctest::Approx(-std::sin(0.7)).epsilon(1e-12));
}

TEST_CASE("ten-oscillator flow is symplectic") {
  SplitMix64 rng(0x41);
  const int n = 10;
  Matrix h = Matrix::Zero(2 * n, 2 * n);
  // Coupled chain: positive-definite position block plus unit masses.
  for (int i = 0; i < n; ++i) {
    h(i, i) = rng.uniform(1.0, 3.0);
    h(n + i, n + i) = 1.0;
    if (i + 1 < n) {
      const double c = rng.uniform(-0.2, 0.2);
      h(i, i + 1) = h(i + 1, i) = c;
      h(i, i) += 0.4;
      h(i + 1, i + 1) += 0.4;
    }
  }
  const Matrix j = symplecticForm(n);
  const Matrix s = linearFlow(j * h, 1.3);
  CHECK((s.transpose() * j * s - j).cwiseAbs().maxCoeff() < 1e-9);
}
