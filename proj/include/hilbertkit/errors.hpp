#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbert {

/// Failure categories raised by the library. Each maps onto one of two
/// families: precondition/validation failures and numeric degeneracies.
enum class ErrorKind {
  Collinearity,
  DegenerateConfiguration,
  NumericDegeneracy,
  OutsideDomain,
  NotInvertible,
  NoUniqueLine,
  StrictnessViolation,
  BoundaryOverflow,
  GeodesicViolation,
  FitDegeneracy,
  NotDiskIsometry,
  Precondition,
  NotHyperbolic,
  AxisInconsistency,
  NonConvergence,
  SameAxis,
  Tangency,
  Tracing,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

/// True for kinds that signal loss of numeric conditioning rather than a
/// caller error.
bool is_numeric(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hilbert
