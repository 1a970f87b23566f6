#pragma once

#include <stdexcept>
#include <string>

namespace decoq {

/// Input violates a documented invariant (Hermiticity, trace, dimensions, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Correlation block outside Gaussian positivity (A^2 < B^2 or negative widths).
class NonPhysicalCorrelation : public DomainError {
 public:
  explicit NonPhysicalCorrelation(const std::string& what) : DomainError(what) {}
};

/// Adaptive integration could not continue (step underflow, NaN right-hand side).
class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time(last_good_time) {}
  double last_good_time;
};

/// Entropy time-scale is undefined on the requested window.
class UndefinedTimescale : public DomainError {
 public:
  explicit UndefinedTimescale(const std::string& what) : DomainError(what) {}
};

}  // namespace decoq
