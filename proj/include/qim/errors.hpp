#pragma once

#include <stdexcept>
#include <string>

namespace qim {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates the invariants of its type (non-Hermitian block,
/// non-faithful state, negative eigenvalue, nonzero trace...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Argument outside the domain of an operation (log of a singular matrix,
/// off-center input for a centered space, oversized oracle request).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An observable outside the open unit ball of a chart.
class ChartError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative solver hit its iteration cap. Carries the best iterate's
/// objective value and the remaining gap estimate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_value, double gap)
      : Error(what), best_value_(best_value), gap_(gap) {}
  double best_value() const noexcept { return best_value_; }
  double gap() const noexcept { return gap_; }

 private:
  double best_value_;
  double gap_;
};

/// Malformed matrix document; `field()` names the offending field.
class FormatError : public Error {
 public:
  FormatError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace qim
