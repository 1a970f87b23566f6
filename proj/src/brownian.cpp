#include "decoq/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace decoq {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void checkParticle(const ParticleInit& p) {
  if (!(p.mass > 0.0)) throw InvalidInput("ParticleInit: mass must be positive");
  if (!(p.w0 > 0.0)) throw InvalidInput("ParticleInit: w0 must be positive");
}
}  // namespace

AlphaTPlus alphaAndTPlus(const ParticleInit& p, double bigOmega, double g0, double t) {
  checkParticle(p);
  if (!(bigOmega > 0.0)) throw InvalidInput("alphaAndTPlus: Omega must be positive");
  if (!(g0 > 0.0)) {
    throw DomainError("alphaAndTPlus: scaling undefined for g0 <= 0");
  }
  const double w0Omega = p.w0 * bigOmega;
  AlphaTPlus out;
  out.alpha = (1.0 / (2.0 * g0)) * (bigOmega / p.mass) / (w0Omega * w0Omega * w0Omega * w0Omega);
  out.tPlus = bigOmega * t * std::sqrt(2.0 * g0 * bigOmega / p.mass);
  return out;
}

AlphaTPlus alphaAndTPlus(const ParticleInit& p, const BathSpec& spec, double t) {
  return alphaAndTPlus(p, spec.bigOmega, g0Parameter(spec), t);
}

BrownianSystem::BrownianSystem(double particleMass, const std::vector<BathMode>& modes)
    : mass_(particleMass) {
  if (!(mass_ > 0.0)) throw InvalidInput("BrownianSystem: particle mass must be positive");
  for (const BathMode& m : modes) {
    if (m.mass < 0.0 || !(m.omega > 0.0)) {
      throw InvalidInput("BrownianSystem: modes need mass >= 0 and omega > 0");
    }
    if (m.mass > 0.0) modes_.push_back(m);  // zero-mass entries carry no dynamics
  }
  n_ = 1 + static_cast<int>(modes_.size());

  // Mass-weighted normal modes of the position-coupling matrix.
  Eigen::VectorXd invSqrtMass(n_), sqrtMass(n_);
  invSqrtMass[0] = 1.0 / std::sqrt(mass_);
  sqrtMass[0] = std::sqrt(mass_);
  for (int k = 1; k < n_; ++k) {
    invSqrtMass[k] = 1.0 / std::sqrt(modes_[k - 1].mass);
    sqrtMass[k] = std::sqrt(modes_[k - 1].mass);
  }

  Matrix V = Matrix::Zero(n_, n_);
  for (int k = 1; k < n_; ++k) {
    const double s = modes_[k - 1].mass * modes_[k - 1].omega * modes_[k - 1].omega;
    V(0, 0) += s;
    V(0, k) = V(k, 0) = -s;
    V(k, k) = s;
  }

  Matrix W = invSqrtMass.asDiagonal() * V * invSqrtMass.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> es(W);
  lambda_ = es.eigenvalues().cwiseMax(0.0);  // translation mode is 0 up to round-off
  toLab_ = invSqrtMass.asDiagonal() * es.eigenvectors();
  toMode_ = es.eigenvectors().transpose() * sqrtMass.asDiagonal();
}

FullGaussianState BrownianSystem::groundInitialState(const ParticleInit& p) const {
  checkParticle(p);
  Eigen::VectorXd means = Eigen::VectorXd::Zero(2 * n_);
  means[n_] = p.mass * p.v0;

  Matrix cov = Matrix::Zero(2 * n_, 2 * n_);
  cov(0, 0) = p.w0 * p.w0;
  cov(n_, n_) = 1.0 / (4.0 * p.w0 * p.w0);
  for (int k = 1; k < n_; ++k) {
    const auto& m = modes_[k - 1];
    cov(k, k) = 1.0 / (2.0 * m.mass * m.omega);
    cov(n_ + k, n_ + k) = 0.5 * m.mass * m.omega;
  }
  return {std::move(means), CovarianceMatrix(std::move(cov))};
}

BrownianSystem::Prepared BrownianSystem::prepare(const FullGaussianState& state) const {
  if (state.means.size() != 2 * n_ || state.cov.elements().rows() != 2 * n_) {
    throw InvalidInput("BrownianSystem: state dimension mismatch");
  }
  Prepared prep;
  prep.y0 = toMode_ * state.means.head(n_);
  prep.q0 = toLab_.transpose() * state.means.tail(n_);

  const auto& v = state.cov.elements();
  prep.vm0.resize(2 * n_, 2 * n_);
  // Mode-frame congruence with blkdiag(toMode_, toLab_^T).
  prep.vm0.topLeftCorner(n_, n_) =
      toMode_ * v.topLeftCorner(n_, n_) * toMode_.transpose();
  prep.vm0.topRightCorner(n_, n_) = toMode_ * v.topRightCorner(n_, n_) * toLab_;
  prep.vm0.bottomLeftCorner(n_, n_) = prep.vm0.topRightCorner(n_, n_).transpose();
  prep.vm0.bottomRightCorner(n_, n_) =
      toLab_.transpose() * v.bottomRightCorner(n_, n_) * toLab_;
  return prep;
}

void BrownianSystem::rotateMeans(const Prepared& prep, double t, Eigen::VectorXd& y,
                                 Eigen::VectorXd& q) const {
  y.resize(n_);
  q.resize(n_);
  const double lamScale = lambda_.maxCoeff();
  for (int k = 0; k < n_; ++k) {
    if (lambda_[k] <= 1e-14 * lamScale) {
      y[k] = prep.y0[k] + t * prep.q0[k];
      q[k] = prep.q0[k];
    } else {
      const double w = std::sqrt(lambda_[k]);
      const double c = std::cos(w * t), s = std::sin(w * t);
      y[k] = c * prep.y0[k] + s / w * prep.q0[k];
      q[k] = -w * s * prep.y0[k] + c * prep.q0[k];
    }
  }
}

Matrix BrownianSystem::rotateCovariance(const Prepared& prep, double t) const {
  Eigen::VectorXd dc(n_), ds(n_), dn(n_);
  const double lamScale = lambda_.maxCoeff();
  for (int k = 0; k < n_; ++k) {
    if (lambda_[k] <= 1e-14 * lamScale) {
      dc[k] = 1.0;
      ds[k] = t;
      dn[k] = 0.0;
    } else {
      const double w = std::sqrt(lambda_[k]);
      dc[k] = std::cos(w * t);
      ds[k] = std::sin(w * t) / w;
      dn[k] = -w * std::sin(w * t);
    }
  }

  const auto A = prep.vm0.topLeftCorner(n_, n_);
  const auto B = prep.vm0.topRightCorner(n_, n_);
  const auto C = prep.vm0.bottomRightCorner(n_, n_);

  // R = [[dc, ds], [dn, dc]] as diagonal blocks; result = R Vm R^T.
  Matrix t11 = dc.asDiagonal() * A + ds.asDiagonal() * B.transpose();
  Matrix t12 = dc.asDiagonal() * B + ds.asDiagonal() * C;
  Matrix t21 = dn.asDiagonal() * A + dc.asDiagonal() * B.transpose();
  Matrix t22 = dn.asDiagonal() * B + dc.asDiagonal() * C;

  Matrix out(2 * n_, 2 * n_);
  out.topLeftCorner(n_, n_) = t11 * dc.asDiagonal() + t12 * ds.asDiagonal();
  out.topRightCorner(n_, n_) = t11 * dn.asDiagonal() + t12 * dc.asDiagonal();
  out.bottomLeftCorner(n_, n_) = out.topRightCorner(n_, n_).transpose();
  out.bottomRightCorner(n_, n_) = t21 * dn.asDiagonal() + t22 * dc.asDiagonal();
  // Symmetrize the diagonal blocks against round-off.
  out.topLeftCorner(n_, n_) =
      0.5 * (out.topLeftCorner(n_, n_) + out.topLeftCorner(n_, n_).transpose().eval());
  out.bottomRightCorner(n_, n_) =
      0.5 * (out.bottomRightCorner(n_, n_) +
             out.bottomRightCorner(n_, n_).transpose().eval());
  return out;
}

FullGaussianState BrownianSystem::stateAt(const Prepared& prep, double t) const {
  Eigen::VectorXd y, q;
  rotateMeans(prep, t, y, q);
  const Matrix vm = rotateCovariance(prep, t);

  Eigen::VectorXd means(2 * n_);
  means.head(n_) = toLab_ * y;
  means.tail(n_) = toMode_.transpose() * q;

  Matrix cov(2 * n_, 2 * n_);
  cov.topLeftCorner(n_, n_) = toLab_ * vm.topLeftCorner(n_, n_) * toLab_.transpose();
  cov.topRightCorner(n_, n_) = toLab_ * vm.topRightCorner(n_, n_) * toMode_;
  cov.bottomLeftCorner(n_, n_) = cov.topRightCorner(n_, n_).transpose();
  cov.bottomRightCorner(n_, n_) =
      toMode_.transpose() * vm.bottomRightCorner(n_, n_) * toMode_;
  cov = 0.5 * (cov + cov.transpose().eval());
  return {std::move(means), CovarianceMatrix(std::move(cov))};
}

FullGaussianState BrownianSystem::evolve(const FullGaussianState& state, double t) const {
  if (t < 0.0) throw InvalidInput("BrownianSystem::evolve: t must be non-negative");
  return stateAt(prepare(state), t);
}

double BrownianSystem::energy(const FullGaussianState& state) const {
  return observablesAt(prepare(state), 0.0).energy;
}

double BrownianSystem::recurrenceTime() const {
  if (modes_.empty()) return std::numeric_limits<double>::infinity();
  std::vector<double> omegas;
  omegas.reserve(modes_.size());
  for (const auto& m : modes_) omegas.push_back(m.omega);
  std::sort(omegas.begin(), omegas.end());
  if (omegas.size() == 1) return kTwoPi / omegas.front();
  double minGap = omegas.back();
  for (std::size_t i = 1; i < omegas.size(); ++i) {
    minGap = std::min(minGap, omegas[i] - omegas[i - 1]);
  }
  if (minGap <= 0.0) return std::numeric_limits<double>::infinity();
  return kTwoPi / minGap;
}

Matrix BrownianSystem::hamiltonianForm() const {
  Matrix Q = Matrix::Zero(2 * n_, 2 * n_);
  for (int k = 1; k < n_; ++k) {
    const double s = modes_[k - 1].mass * modes_[k - 1].omega * modes_[k - 1].omega;
    Q(0, 0) += s;
    Q(0, k) = Q(k, 0) = -s;
    Q(k, k) = s;
  }
  Q(n_, n_) = 1.0 / mass_;
  for (int k = 1; k < n_; ++k) Q(n_ + k, n_ + k) = 1.0 / modes_[k - 1].mass;
  return Q;
}

ParticleObservables BrownianSystem::observablesAt(const Prepared& prep, double t,
                                                  bool with_env) const {
  Eigen::VectorXd y, q;
  rotateMeans(prep, t, y, q);
  const Matrix vm = rotateCovariance(prep, t);

  // Energy in the mode frame: sum of oscillator means plus second moments.
  double energy = 0.0;
  for (int k = 0; k < n_; ++k) {
    energy += 0.5 * (q[k] * q[k] + lambda_[k] * y[k] * y[k]);
    energy += 0.5 * (vm(n_ + k, n_ + k) + lambda_[k] * vm(k, k));
  }

  // Particle block through the two lab-frame projection rows.
  const Eigen::VectorXd px = toLab_.row(0).transpose();  // x_particle = px . y
  const Eigen::VectorXd pp = toMode_.col(0);             // p_particle = pp . q

  const auto A = vm.topLeftCorner(n_, n_);
  const auto B = vm.topRightCorner(n_, n_);
  const auto C = vm.bottomRightCorner(n_, n_);

  const double sxx = px.dot(A * px);
  const double sxp = px.dot(B * pp);
  const double spp = pp.dot(C * pp);

  ParticleObservables obs;
  obs.width = std::sqrt(sxx);
  obs.velocity = pp.dot(q) / mass_;
  const double det = sxx * spp - sxp * sxp;
  const double nu = std::sqrt(std::max(det, 0.25));
  obs.sLin = 1.0 - 1.0 / (2.0 * std::sqrt(std::max(det, 0.25)));
  obs.sVN = gaussianEntropyFromNu(nu);
  obs.energy = energy;

  {
    Eigen::LLT<Matrix> llt(2.0 * vm);
    double logdet = 0.0;
    if (llt.info() == Eigen::Success) {
      const auto& L = llt.matrixLLT();
      for (int i = 0; i < L.rows(); ++i) logdet += 2.0 * std::log(L(i, i));
      obs.purityGlobal = std::exp(-0.5 * logdet);
    } else {
      obs.purityGlobal = std::numeric_limits<double>::quiet_NaN();
    }
  }

  if (with_env && n_ > 1) {
    const int nb = n_ - 1;
    const Matrix Bx = toLab_.bottomRows(nb);             // bath positions
    const Matrix Bp = toMode_.transpose().bottomRows(nb);  // bath momenta
    Matrix vb(2 * nb, 2 * nb);
    vb.topLeftCorner(nb, nb) = Bx * A * Bx.transpose();
    vb.topRightCorner(nb, nb) = Bx * B * Bp.transpose();
    vb.bottomLeftCorner(nb, nb) = vb.topRightCorner(nb, nb).transpose();
    vb.bottomRightCorner(nb, nb) = Bp * C * Bp.transpose();
    vb = 0.5 * (vb + vb.transpose().eval());
    obs.sEnv = gaussianEntropy(CovarianceMatrix(std::move(vb)));
  } else {
    obs.sEnv = std::numeric_limits<double>::quiet_NaN();
  }
  return obs;
}

FullGaussianState evolveExact(const FullGaussianState& state,
                              const std::vector<BathMode>& oscillators,
                              const ParticleInit& p, double t) {
  return BrownianSystem(p.mass, oscillators).evolve(state, t);
}

FullGaussianState initialState(const ParticleInit& p,
                               const std::vector<BathMode>& oscillators) {
  return BrownianSystem(p.mass, oscillators).groundInitialState(p);
}

ParticleObservables particleObservables(const FullGaussianState& state, double mass,
                                        bool with_env) {
  const int n = static_cast<int>(state.means.size()) / 2;
  const auto& v = state.cov.elements();

  const double sxx = v(0, 0), sxp = v(0, n), spp = v(n, n);
  ParticleObservables obs;
  obs.width = std::sqrt(sxx);
  obs.velocity = state.means[n] / mass;
  const double det = std::max(sxx * spp - sxp * sxp, 0.25);
  obs.sLin = 1.0 - 1.0 / (2.0 * std::sqrt(det));
  obs.sVN = gaussianEntropyFromNu(std::sqrt(det));
  obs.purityGlobal = gaussianPurity(state.cov);
  obs.energy = std::numeric_limits<double>::quiet_NaN();
  if (with_env && n > 1) {
    std::vector<int> keep(n - 1);
    for (int k = 1; k < n; ++k) keep[k - 1] = k;
    obs.sEnv = gaussianEntropy(state.cov.reduced(keep));
  } else {
    obs.sEnv = std::numeric_limits<double>::quiet_NaN();
  }
  return obs;
}

}  // namespace decoq
