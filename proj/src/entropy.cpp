#include "decoq/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace decoq {

namespace {

constexpr double kClampEig = 1e-14;  // PSD noise floor before taking ln

double xlnx(double x) { return x <= kClampEig ? 0.0 : x * std::log(x); }

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix elements) : elements_(std::move(elements)) {
  if (elements_.rows() == 0 || elements_.rows() != elements_.cols()) {
    throw InvalidInput("DensityMatrix: matrix must be square and non-empty");
  }
  const double herm = (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian (max deviation " << herm << " > " << kHermTol << ")";
    throw InvalidInput(os.str());
  }
  const double tr = elements_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " != 1 beyond tolerance " << kTraceTol;
    throw InvalidInput(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(elements_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigTol) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << es.eigenvalues().minCoeff()
       << " below -" << kEigTol;
    throw InvalidInput(os.str());
  }
}

Vector DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(elements_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Spectrum::Spectrum(std::vector<double> e, std::vector<int> d)
    : energies(std::move(e)), degeneracies(std::move(d)) {
  if (energies.empty()) throw InvalidInput("Spectrum: needs at least one level");
  if (degeneracies.size() != energies.size()) {
    throw InvalidInput("Spectrum: degeneracy count does not match level count");
  }
  if (!std::is_sorted(energies.begin(), energies.end())) {
    throw InvalidInput("Spectrum: energies must be sorted ascending");
  }
  for (int g : degeneracies) {
    if (g < 1) throw InvalidInput("Spectrum: degeneracies must be positive");
  }
}

Spectrum::Spectrum(std::vector<double> e)
    : Spectrum(e, std::vector<int>(e.size(), 1)) {}

int Spectrum::totalStates() const {
  return std::accumulate(degeneracies.begin(), degeneracies.end(), 0);
}

double vonNeumannEntropy(const DensityMatrix& rho) {
  const Vector w = rho.eigenvalues();
  double s = 0.0;
  for (int i = 0; i < w.size(); ++i) s -= xlnx(std::max(w[i], 0.0));
  return s;
}

double linearEntropy(const DensityMatrix& rho) {
  return 1.0 - (rho.elements() * rho.elements()).trace().real();
}

double logPartitionFunction(const Spectrum& spec, double T) {
  if (T <= 0.0) throw DomainError("logPartitionFunction: T must be positive");
  const double e0 = spec.energies.front();
  double acc = 0.0;
  for (std::size_t n = 0; n < spec.energies.size(); ++n) {
    acc += spec.degeneracies[n] * std::exp(-(spec.energies[n] - e0) / T);
  }
  return -e0 / T + std::log(acc);
}

DensityMatrix thermalState(const Spectrum& spec, double T) {
  if (T <= 0.0) throw DomainError("thermalState: T must be positive");
  const double e0 = spec.energies.front();
  const int dim = spec.totalStates();
  std::vector<double> weights;
  weights.reserve(dim);
  double z = 0.0;
  for (std::size_t n = 0; n < spec.energies.size(); ++n) {
    const double w = std::exp(-(spec.energies[n] - e0) / T);
    for (int g = 0; g < spec.degeneracies[n]; ++g) weights.push_back(w);
    z += spec.degeneracies[n] * w;
  }
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) rho(i, i) = weights[i] / z;
  return DensityMatrix(rho);
}

double thermalEntropyViaFreeEnergy(const Spectrum& spec, double T, double dT) {
  if (dT <= 0.0 || T <= dT) {
    throw DomainError("thermalEntropyViaFreeEnergy: requires T > dT > 0");
  }
  const auto f = [&](double temp) { return temp * logPartitionFunction(spec, temp); };
  return (f(T + dT) - f(T - dT)) / (2.0 * dT);
}

double computeY(const CorrelationBlock& c) {
  if (!(c.g1 > 0.0) || !(c.g2 > 0.0)) {
    throw NonPhysicalCorrelation("computeY: widths g1, g2 must be positive");
  }
  const double gg = c.g1 * c.g2;
  const double a = 1.0 + 0.5 * gg * (c.s12 * c.s12 - c.g12 * c.g12);
  const double b = 0.5 * gg * (c.s12 * c.s12 + c.g12 * c.g12);
  // A^2 - B^2 = (A-B)(A+B) with A+B >= 1; positivity is A > B.
  const double disc = (a - b) * (a + b);
  if (a <= b || disc <= 0.0) {
    throw NonPhysicalCorrelation(
        "computeY: A^2 <= B^2, state outside Gaussian positivity");
  }
  return b / (a + std::sqrt(disc));
}

double computeYSmall(const CorrelationBlock& c) {
  return 0.25 * c.g1 * c.g2 * (c.g12 * c.g12 + c.s12 * c.s12);
}

double modeEntropy(double y) {
  if (y < 0.0 || y >= 1.0) throw DomainError("modeEntropy: y must lie in [0, 1)");
  if (y == 0.0) return 0.0;
  return -std::log1p(-y) - y / (1.0 - y) * std::log(y);
}

double entropyFromModes(const ModeSet& modes) {
  if (modes.y_values.size() != modes.weights.size()) {
    throw InvalidInput("entropyFromModes: y/weight length mismatch");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < modes.y_values.size(); ++k) {
    if (modes.weights[k] <= 0.0) {
      throw InvalidInput("entropyFromModes: weights must be positive");
    }
    s += modes.weights[k] * modeEntropy(modes.y_values[k]);
  }
  return s;
}

double pointerWidth(const CorrelationBlock& c) {
  if (!(c.g1 > 0.0) || !(c.g2 > 0.0)) {
    throw NonPhysicalCorrelation("pointerWidth: widths g1, g2 must be positive");
  }
  const double gg = c.g1 * c.g2;
  const double cross = gg * c.g12 * c.s12;
  const double denom = 1.0 - gg * (c.g12 * c.g12 - c.s12 * c.s12) - cross * cross;
  if (denom <= 0.0) {
    throw NonPhysicalCorrelation("pointerWidth: non-positive denominator");
  }
  return 4.0 * c.g1 / denom;
}

double entropyTimescale(const std::vector<double>& times,
                        const std::vector<double>& entropies) {
  if (times.size() != entropies.size() || times.size() < 3) {
    throw UndefinedTimescale("entropyTimescale: need >= 3 matched samples");
  }
  std::vector<double> lns(entropies.size());
  for (std::size_t i = 0; i < entropies.size(); ++i) {
    if (!(entropies[i] > 0.0)) {
      throw UndefinedTimescale(
          "entropyTimescale: entropy must be strictly positive on the window");
    }
    lns[i] = std::log(entropies[i]);
  }
  const std::size_t n = times.size();
  double tbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tbar += times[i];
    ybar += lns[i];
  }
  tbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (times[i] - tbar) * (times[i] - tbar);
    sxy += (times[i] - tbar) * (lns[i] - ybar);
  }
  if (sxx == 0.0) throw UndefinedTimescale("entropyTimescale: degenerate time grid");
  const double slope = sxy / sxx;
  if (slope == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / slope;
}

double dofEntropyRatio(double g_sys, double g_env) {
  if (!(g_sys > 0.0) || !(g_env > 0.0)) {
    throw DomainError("dofEntropyRatio: both counts must be positive");
  }
  return g_sys / g_env;
}

}  // namespace decoq
