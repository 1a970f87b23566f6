#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "decoq/errors.hpp"

namespace decoq {

using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

/// Finite-dimensional density operator: Hermitian, positive semidefinite,
/// unit trace. Invariants are checked on construction.
class DensityMatrix {
 public:
  static constexpr double kHermTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigTol = 1e-12;

  explicit DensityMatrix(ComplexMatrix elements);

  int dim() const { return static_cast<int>(elements_.rows()); }
  const ComplexMatrix& elements() const { return elements_; }

  /// Eigenvalues in ascending order (real; the matrix is Hermitian).
  Vector eigenvalues() const;

 private:
  ComplexMatrix elements_;
};

/// Energy levels with degeneracies, sorted ascending.
struct Spectrum {
  std::vector<double> energies;
  std::vector<int> degeneracies;  // all >= 1

  Spectrum(std::vector<double> energies, std::vector<int> degeneracies);
  /// Non-degenerate spectrum.
  explicit Spectrum(std::vector<double> energies);

  int totalStates() const;
};

/// Scalar two-point-function block of a coupled pair: widths g1, g2 and
/// cross-correlations g12 (real part) and s12 (imaginary part).
struct CorrelationBlock {
  double g1 = 1.0;
  double g2 = 1.0;
  double g12 = 0.0;
  double s12 = 0.0;
};

/// Per-mode Y values with positive weights standing in for the mode measure.
struct ModeSet {
  std::vector<double> y_values;
  std::vector<double> weights;
};

/// S = -Tr rho ln rho, in nats. 0*ln 0 := 0; eigenvalues below 1e-14 clamp to 0.
double vonNeumannEntropy(const DensityMatrix& rho);

/// S_lin = 1 - Tr rho^2. Lower bound for the von Neumann entropy.
double linearEntropy(const DensityMatrix& rho);

/// Canonical state exp(-H/T)/Z as a diagonal density matrix over all
/// (degeneracy-expanded) levels. T > 0.
DensityMatrix thermalState(const Spectrum& spec, double T);

/// ln of the partition function at temperature T (log-sum-exp stabilized).
double logPartitionFunction(const Spectrum& spec, double T);

/// Entropy from the free energy: central difference of T ln Z(T) in T.
/// Requires T > dT > 0.
double thermalEntropyViaFreeEnergy(const Spectrum& spec, double T, double dT);

/// Y = B / (A + sqrt(A^2 - B^2)) with A = 1 + (1/2) g1 g2 (s12^2 - g12^2)
/// and B = (1/2) g1 g2 (s12^2 + g12^2). Requires A^2 > B^2 (Gaussian
/// positivity); Y in [0, 1), zero iff g12 = s12 = 0.
double computeY(const CorrelationBlock& c);

/// Small-correlation approximation of Y with kappa = 1/4.
double computeYSmall(const CorrelationBlock& c);

/// Entropy of one mode with given Y: -ln(1-y) - y/(1-y) ln y.
double modeEntropy(double y);

/// Weighted sum of mode entropies; the discretized mode-sum form of the
/// correlation entropy.
double entropyFromModes(const ModeSet& modes);

/// Effective real width of the most probable (pointer) eigenstate:
/// 4 g1 / (1 - g1 g2 (g12^2 - s12^2) - (g1 g2 g12 s12)^2).
double pointerWidth(const CorrelationBlock& c);

/// Inverse logarithmic entropy growth rate: 1 / slope of a least-squares fit
/// of ln S against t over the supplied window (>= 3 points, S > 0).
/// A zero slope yields +/-infinity.
double entropyTimescale(const std::vector<double>& times,
                        const std::vector<double>& entropies);

/// Ratio of effective degree-of-freedom counts g_sys / g_env.
double dofEntropyRatio(double g_sys, double g_env);

}  // namespace decoq
