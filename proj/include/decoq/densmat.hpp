#pragma once

#include <Eigen/Dense>

#include "decoq/entropy.hpp"

namespace decoq {

/// Pure state of an A x B bipartite system; amplitudes(a, b) are the
/// coefficients in the product basis. Normalized to 1e-12.
class BipartiteState {
 public:
  static constexpr double kNormTol = 1e-12;

  explicit BipartiteState(ComplexMatrix amplitudes);

  int dimA() const { return static_cast<int>(amplitudes_.rows()); }
  int dimB() const { return static_cast<int>(amplitudes_.cols()); }
  const ComplexMatrix& amplitudes() const { return amplitudes_; }

 private:
  ComplexMatrix amplitudes_;
};

/// Hermitian generator of unitary time evolution.
class HamiltonianMatrix {
 public:
  static constexpr double kHermTol = 1e-12;

  explicit HamiltonianMatrix(ComplexMatrix elements);

  int dim() const { return static_cast<int>(elements_.rows()); }
  const ComplexMatrix& elements() const { return elements_; }

 private:
  ComplexMatrix elements_;
};

enum class Subsystem { A, B };

/// exp(-iHt) rho exp(iHt) via spectral decomposition of H.
DensityMatrix unitaryEvolve(const DensityMatrix& rho, const HamiltonianMatrix& H,
                            double t);

/// Reduced density matrix of the kept subsystem of a pure bipartite state.
DensityMatrix partialTrace(const BipartiteState& psi, Subsystem keep);

struct EntropyEquality {
  double sA;
  double sB;
  double gap;
};

/// Subsystem entropies of a global pure state and their (Schmidt) gap.
EntropyEquality entropyEqualityCheck(const BipartiteState& psi);

}  // namespace decoq
