#include "decoq/bath.hpp"

#include <algorithm>
#include <cmath>

namespace decoq {

std::function<double(double)> shapeFlat() {
  return [](double) { return 1.0; };
}

std::function<double(double)> shapePower(double exponent) {
  return [exponent](double x) { return std::pow(x, exponent); };
}

std::function<double(double)> shapeFromTable(std::vector<double> xs,
                                             std::vector<double> fs) {
  if (xs.size() != fs.size() || xs.size() < 2) {
    throw InvalidInput("shapeFromTable: need >= 2 matched points");
  }
  if (!std::is_sorted(xs.begin(), xs.end())) {
    throw InvalidInput("shapeFromTable: abscissae must be sorted");
  }
  return [xs = std::move(xs), fs = std::move(fs)](double x) {
    if (x <= xs.front()) return fs.front();
    if (x >= xs.back()) return fs.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return fs[i - 1] + w * (fs[i] - fs[i - 1]);
  };
}

std::vector<BathMode> discretizeBath(const BathSpec& spec) {
  if (!(spec.bigOmega > 0.0)) throw InvalidInput("discretizeBath: Omega must be positive");
  if (spec.g < 0.0) throw InvalidInput("discretizeBath: g must be non-negative");
  if (spec.nModes < 1) throw InvalidInput("discretizeBath: need at least one mode");
  if (!spec.shapeF) throw InvalidInput("discretizeBath: shape function not set");

  const int n = spec.nModes;
  std::vector<BathMode> modes;
  modes.reserve(n);

  std::vector<double> edges(n + 1);
  if (spec.discretization == BathSpec::Grid::Uniform) {
    for (int i = 0; i <= n; ++i) edges[i] = spec.bigOmega * static_cast<double>(i) / n;
  } else {
    const double lo = std::log(spec.logFloor * spec.bigOmega);
    const double hi = std::log(spec.bigOmega);
    for (int i = 0; i <= n; ++i) {
      edges[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / n);
    }
  }

  const double I0 = spec.g * spec.bigOmega * spec.bigOmega * spec.bigOmega;
  for (int i = 0; i < n; ++i) {
    const double width = edges[i + 1] - edges[i];
    const double omega = 0.5 * (edges[i] + edges[i + 1]);
    const double f = spec.shapeF(omega / spec.bigOmega);
    if (f < 0.0) throw InvalidInput("discretizeBath: F must be non-negative");
    const double intensity = I0 * f;  // I(omega)
    modes.push_back({2.0 * intensity * width / (omega * omega * omega), omega});
  }
  return modes;
}

double g0Parameter(const BathSpec& spec) {
  if (!spec.shapeF) throw InvalidInput("g0Parameter: shape function not set");
  // integral_0^1 F(x)/x dx, split into dyadic slices [2^-(k+1), 2^-k].
  // Convergent integrands give geometrically shrinking slices; a flat or
  // growing slice sequence flags divergence at x -> 0.
  const auto integrand = [&spec](double x) { return spec.shapeF(x) / x; };
  const auto simpson = [&integrand](double a, double b) {
    const int panels = 64;
    const double h = (b - a) / panels;
    double acc = integrand(a) + integrand(b);
    for (int i = 1; i < panels; ++i) {
      acc += (i % 2 == 1 ? 4.0 : 2.0) * integrand(a + i * h);
    }
    return acc * h / 3.0;
  };

  double total = 0.0;
  double prev_slice = -1.0;
  double prev_ratio = -1.0;
  double hi = 1.0;
  for (int k = 0; k < 80; ++k) {
    const double lo = hi * 0.5;
    const double slice = simpson(lo, hi);
    if (!std::isfinite(slice) || slice < 0.0) {
      throw DomainError("g0Parameter: integrand not finite or negative");
    }
    total += slice;
    if (k > 4 && slice < 1e-14 * std::max(1.0, total)) {
      return spec.g * total;
    }
    if (prev_slice > 0.0) {
      const double ratio = slice / prev_slice;
      if (k > 8 && ratio > 0.98) {
        throw DomainError("g0Parameter: integral of F(x)/x diverges at x -> 0");
      }
      // Stable geometric decay: close with the extrapolated tail.
      if (k > 12 && prev_ratio > 0.0 && std::abs(ratio - prev_ratio) < 0.005 &&
          ratio < 0.97) {
        const double tail = slice * ratio / (1.0 - ratio);
        if (tail < 1e-12 * std::max(1.0, total) || k == 79) {
          return spec.g * (total + tail);
        }
      }
      prev_ratio = ratio;
    }
    prev_slice = slice;
    hi = lo;
  }
  // Slow but monotone geometric decay: extrapolate what is left.
  if (prev_ratio > 0.0 && prev_ratio < 0.98) {
    return spec.g * (total + prev_slice * prev_ratio / (1.0 - prev_ratio));
  }
  throw DomainError("g0Parameter: integral of F(x)/x did not converge");
}

double g0FromModes(const std::vector<BathMode>& modes, double bigOmega) {
  if (!(bigOmega > 0.0)) throw InvalidInput("g0FromModes: Omega must be positive");
  double k2 = 0.0;
  for (const BathMode& m : modes) k2 += m.mass * m.omega * m.omega;
  return 0.5 * k2 / (bigOmega * bigOmega * bigOmega);
}

}  // namespace decoq
