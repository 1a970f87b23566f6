#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "decoq/bath.hpp"
#include "decoq/gaussian.hpp"

namespace decoq {

/// Initial Gaussian wave packet of the particle: width w0, velocity v0.
struct ParticleInit {
  double mass = 1.0;
  double w0 = 1.0;
  double v0 = 0.0;
};

/// Global Gaussian state of particle + bath. Means and covariance use
/// (positions, momenta) ordering with the particle first in each block.
struct FullGaussianState {
  Eigen::VectorXd means;
  CovarianceMatrix cov;
};

struct AlphaTPlus {
  double alpha;
  double tPlus;
};

/// alpha = (1/2g0)(Omega/M)(w0 Omega)^-4 and t+ = Omega t sqrt(2 g0 Omega / M).
AlphaTPlus alphaAndTPlus(const ParticleInit& p, double bigOmega, double g0, double t);

/// Same, with g0 from the continuum shape integral (throws when that
/// integral diverges; use g0FromModes for infrared-divergent shapes).
AlphaTPlus alphaAndTPlus(const ParticleInit& p, const BathSpec& spec, double t);

struct ParticleObservables {
  double width;
  double velocity;
  double sLin;
  double sVN;
  double sEnv;  // NaN unless requested
  double purityGlobal;
  double energy;
};

/// Exact dynamics of the translation-invariant particle + oscillator-bath
/// Hamiltonian, solved once through mass-weighted normal modes. Zero-mass
/// (decoupled) bath entries are dropped from the dynamics.
class BrownianSystem {
 public:
  BrownianSystem(double particleMass, const std::vector<BathMode>& modes);

  int bathModes() const { return n_ - 1; }
  int totalModes() const { return n_; }
  double particleMass() const { return mass_; }

  /// Minimal packet at the origin moving with v0; every bath oscillator in
  /// the ground state of its own potential well. Globally pure.
  FullGaussianState groundInitialState(const ParticleInit& p) const;

  /// Symplectic flow of the full quadratic Hamiltonian applied for time t.
  FullGaussianState evolve(const FullGaussianState& state, double t) const;

  /// <H> of a Gaussian state: mean part plus (1/2) tr(Q V).
  double energy(const FullGaussianState& state) const;

  /// First revival of the discrete bath, 2*pi over the smallest mode spacing.
  double recurrenceTime() const;

  /// Quadratic form Q with H = (1/2) z^T Q z, z = (x..., p...).
  Matrix hamiltonianForm() const;

  /// Mode-frame snapshot for repeated evaluation at many times.
  struct Prepared {
    Eigen::VectorXd y0, q0;  // mode-frame means
    Matrix vm0;              // mode-frame covariance
  };
  Prepared prepare(const FullGaussianState& state) const;
  ParticleObservables observablesAt(const Prepared& prep, double t,
                                    bool with_env = false) const;
  FullGaussianState stateAt(const Prepared& prep, double t) const;

 private:
  void rotateMeans(const Prepared& prep, double t, Eigen::VectorXd& y,
                   Eigen::VectorXd& q) const;
  Matrix rotateCovariance(const Prepared& prep, double t) const;

  double mass_;
  std::vector<BathMode> modes_;  // active (positive-mass) modes
  int n_;                        // particle + active modes
  Eigen::VectorXd lambda_;       // normal-mode eigenvalues (omega^2)
  Matrix toLab_;                 // n x n: x = toLab_ y (positions)
  Matrix toMode_;                // n x n: y = toMode_ x
  // momenta transform with the transposed inverses: p = toMode_^T q.
};

/// One-shot exact evolution (see BrownianSystem::evolve).
FullGaussianState evolveExact(const FullGaussianState& state,
                              const std::vector<BathMode>& oscillators,
                              const ParticleInit& p, double t);

/// Ground-state preparation without keeping the system around.
FullGaussianState initialState(const ParticleInit& p,
                               const std::vector<BathMode>& oscillators);

/// Width, velocity, entropies, purity of the particle block; sEnv computed
/// only when with_env is set.
ParticleObservables particleObservables(const FullGaussianState& state, double mass,
                                        bool with_env = false);

}  // namespace decoq
