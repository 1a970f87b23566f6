#include "decoq/gaussian.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace decoq {

CovarianceMatrix::CovarianceMatrix(Matrix elements) : elements_(std::move(elements)) {
  const auto rows = elements_.rows();
  if (rows == 0 || rows % 2 != 0 || rows != elements_.cols()) {
    throw InvalidInput("CovarianceMatrix: must be square with even dimension");
  }
  const double asym = (elements_ - elements_.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, elements_.cwiseAbs().maxCoeff());
  if (asym > kSymTol * scale) {
    throw InvalidInput("CovarianceMatrix: not symmetric");
  }
  elements_ = 0.5 * (elements_ + elements_.transpose().eval());
}

CovarianceMatrix CovarianceMatrix::reduced(const std::vector<int>& keep) const {
  const int n = modes();
  const int m = static_cast<int>(keep.size());
  if (m == 0) throw InvalidInput("CovarianceMatrix::reduced: empty selection");
  Matrix out(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (keep[i] < 0 || keep[i] >= n || keep[j] < 0 || keep[j] >= n) {
        throw InvalidInput("CovarianceMatrix::reduced: mode index out of range");
      }
      out(i, j) = elements_(keep[i], keep[j]);
      out(i, m + j) = elements_(keep[i], n + keep[j]);
      out(m + i, j) = elements_(n + keep[i], keep[j]);
      out(m + i, m + j) = elements_(n + keep[i], n + keep[j]);
    }
  }
  return CovarianceMatrix(out);
}

Matrix symplecticForm(int n) {
  Matrix J = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    J(i, n + i) = 1.0;
    J(n + i, i) = -1.0;
  }
  return J;
}

std::vector<double> symplecticEigenvalues(const CovarianceMatrix& V) {
  const int n = V.modes();
  Eigen::LLT<Matrix> llt(V.elements());
  if (llt.info() != Eigen::Success) {
    throw InvalidInput("symplecticEigenvalues: V is not positive definite");
  }
  // J V is similar to K = L^T J L (V = L L^T), which is antisymmetric with
  // eigenvalues +-i nu_j; -K^2 is symmetric positive semidefinite with each
  // nu_j^2 doubled, so a symmetric solver does the work.
  const Matrix L = llt.matrixL();
  const Matrix K = L.transpose() * symplecticForm(n) * L;
  Eigen::SelfAdjointEigenSolver<Matrix> es(K * K.transpose(), Eigen::EigenvaluesOnly);
  std::vector<double> sq(2 * n);
  for (int i = 0; i < 2 * n; ++i) sq[i] = std::sqrt(std::max(es.eigenvalues()[i], 0.0));
  std::sort(sq.begin(), sq.end(), std::greater<double>());
  std::vector<double> nus(n);
  for (int j = 0; j < n; ++j) nus[j] = 0.5 * (sq[2 * j] + sq[2 * j + 1]);
  return nus;
}

bool isPhysical(const CovarianceMatrix& V, double tol) {
  for (double nu : symplecticEigenvalues(V)) {
    if (nu < 0.5 - tol) return false;
  }
  return true;
}

double gaussianEntropyFromNu(double nu) {
  if (nu < 0.5) {
    if (nu > 0.5 - CovarianceMatrix::kPhysTol) nu = 0.5;  // round-off guard
    else throw DomainError("gaussianEntropyFromNu: nu below 1/2");
  }
  const double a = nu + 0.5;
  const double b = nu - 0.5;
  return a * std::log(a) - (b > 0.0 ? b * std::log(b) : 0.0);
}

double gaussianEntropy(const CovarianceMatrix& V) {
  double s = 0.0;
  for (double nu : symplecticEigenvalues(V)) s += gaussianEntropyFromNu(nu);
  return s;
}

double gaussianPurity(const CovarianceMatrix& V) {
  // 1 / (2^n sqrt(det V)) = exp(-0.5 logdet(2V)), stable for large n.
  Eigen::LLT<Matrix> llt(2.0 * V.elements());
  if (llt.info() != Eigen::Success) {
    throw InvalidInput("gaussianPurity: V is not positive definite");
  }
  double logdet = 0.0;
  const auto& L = llt.matrixLLT();
  for (int i = 0; i < L.rows(); ++i) logdet += 2.0 * std::log(L(i, i));
  return std::exp(-0.5 * logdet);
}

Matrix linearFlow(const Matrix& A, double t) {
  if (A.rows() != A.cols()) throw InvalidInput("linearFlow: matrix must be square");
  if (!A.allFinite()) throw InvalidInput("linearFlow: matrix must be finite");
  return (A * t).exp();
}

}  // namespace decoq
