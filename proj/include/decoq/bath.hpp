#pragma once

#include <functional>
#include <string>
#include <vector>

#include "decoq/errors.hpp"

namespace decoq {

/// Discretized environment spectral density I(w) = g Omega^3 F(w/Omega) for
/// w <= Omega, zero above the cutoff.
struct BathSpec {
  enum class Grid { Uniform, Log };

  double bigOmega = 1.0;                 // high-frequency cutoff
  double g = 0.0;                        // dimensionless coupling
  std::function<double(double)> shapeF;  // F on (0, 1], >= 0
  int nModes = 256;
  Grid discretization = Grid::Uniform;
  double logFloor = 1e-4;  // lowest frequency of the log grid, in units of Omega
};

struct BathMode {
  double mass;
  double omega;
};

/// Shape helpers. Flat is the infrared-enhanced default.
std::function<double(double)> shapeFlat();
std::function<double(double)> shapePower(double exponent);
/// Linear interpolation of tabulated (x, F) pairs, clamped at the ends.
std::function<double(double)> shapeFromTable(std::vector<double> xs,
                                             std::vector<double> fs);

/// Place oscillators on (0, Omega] and choose masses so each bin reproduces
/// its integral of I: m_n = 2 I(w_n) dw_n / w_n^3.
std::vector<BathMode> discretizeBath(const BathSpec& spec);

/// g0 = g * integral_0^1 F(x)/x dx by dyadic refinement toward x = 0;
/// throws DomainError when the integral diverges.
double g0Parameter(const BathSpec& spec);

/// Discrete counterpart g0 = sum m_n w_n^2 / (2 Omega^3); finite for any
/// finite bath, matching g0Parameter when the continuum integral converges.
double g0FromModes(const std::vector<BathMode>& modes, double bigOmega);

}  // namespace decoq
