#include "decoq/densmat.hpp"

#include <cmath>
#include <sstream>

namespace decoq {

BipartiteState::BipartiteState(ComplexMatrix amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.rows() == 0 || amplitudes_.cols() == 0) {
    throw InvalidInput("BipartiteState: amplitudes must be non-empty");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "BipartiteState: squared norm " << norm2 << " != 1 beyond tolerance";
    throw InvalidInput(os.str());
  }
}

HamiltonianMatrix::HamiltonianMatrix(ComplexMatrix elements)
    : elements_(std::move(elements)) {
  if (elements_.rows() == 0 || elements_.rows() != elements_.cols()) {
    throw InvalidInput("HamiltonianMatrix: matrix must be square and non-empty");
  }
  const double herm = (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) {
    std::ostringstream os;
    os << "HamiltonianMatrix: not Hermitian (max deviation " << herm << ")";
    throw InvalidInput(os.str());
  }
}

DensityMatrix unitaryEvolve(const DensityMatrix& rho, const HamiltonianMatrix& H,
                            double t) {
  if (rho.dim() != H.dim()) {
    throw InvalidInput("unitaryEvolve: dimension mismatch between rho and H");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H.elements());
  const auto& V = es.eigenvectors();
  Eigen::VectorXcd phases(H.dim());
  for (int k = 0; k < H.dim(); ++k) {
    phases[k] = std::exp(std::complex<double>(0.0, -es.eigenvalues()[k] * t));
  }
  const ComplexMatrix U = V * phases.asDiagonal() * V.adjoint();
  ComplexMatrix out = U * rho.elements() * U.adjoint();
  out = 0.5 * (out + out.adjoint().eval());  // scrub rounding noise
  const std::complex<double> tr = out.trace();
  out /= tr.real();
  return DensityMatrix(out);
}

DensityMatrix partialTrace(const BipartiteState& psi, Subsystem keep) {
  const ComplexMatrix& c = psi.amplitudes();
  ComplexMatrix red = (keep == Subsystem::A)
                          ? ComplexMatrix(c * c.adjoint())
                          : ComplexMatrix((c.adjoint() * c).transpose());
  red = 0.5 * (red + red.adjoint().eval());
  return DensityMatrix(red);
}

EntropyEquality entropyEqualityCheck(const BipartiteState& psi) {
  const double sA = vonNeumannEntropy(partialTrace(psi, Subsystem::A));
  const double sB = vonNeumannEntropy(partialTrace(psi, Subsystem::B));
  return {sA, sB, std::abs(sA - sB)};
}

}  // namespace decoq
