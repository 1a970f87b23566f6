#pragma once

#include <Eigen/Dense>
#include <vector>

#include "decoq/errors.hpp"

namespace decoq {

using Matrix = Eigen::MatrixXd;

/// Symmetric 2n x 2n second-moment matrix of n continuous modes in
/// (x_1..x_n, p_1..p_n) ordering, hbar = 1. Vacuum is diag(1/2, ..., 1/2).
class CovarianceMatrix {
 public:
  static constexpr double kSymTol = 1e-9;
  static constexpr double kPhysTol = 1e-9;

  explicit CovarianceMatrix(Matrix elements);

  int modes() const { return static_cast<int>(elements_.rows()) / 2; }
  const Matrix& elements() const { return elements_; }

  /// Submatrix covariance of the selected modes (indices into 0..n-1).
  CovarianceMatrix reduced(const std::vector<int>& keep) const;

 private:
  Matrix elements_;
};

/// Standard symplectic form J = [[0, I], [-I, 0]] for n modes.
Matrix symplecticForm(int n);

/// Williamson symplectic eigenvalues: the n values nu_j = |eig(iJV)|,
/// deduplicated from the +/- pairs, sorted descending. V must be positive
/// definite.
std::vector<double> symplecticEigenvalues(const CovarianceMatrix& V);

/// Gaussian positivity V + (i/2)J >= 0, i.e. all nu_j >= 1/2 - tol.
bool isPhysical(const CovarianceMatrix& V, double tol = CovarianceMatrix::kPhysTol);

/// Entropy of one mode with symplectic eigenvalue nu >= 1/2:
/// (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2).
double gaussianEntropyFromNu(double nu);

/// Von Neumann entropy of the Gaussian state with covariance V.
double gaussianEntropy(const CovarianceMatrix& V);

/// Purity 1 / (2^n sqrt(det V)).
double gaussianPurity(const CovarianceMatrix& V);

/// Matrix exponential exp(A t) by scaling and squaring. For Hamiltonian
/// generators A = J H the result is symplectic.
Matrix linearFlow(const Matrix& A, double t);

}  // namespace decoq
