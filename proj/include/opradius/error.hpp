#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opradius {

enum class ErrorKind {
  NotHermitian,
  NotPSD,
  ConvergenceFailure,
  DomainError,
  DimensionMismatch,
  InvalidTolerance,
  NonpositiveExponent,
  ExponentTooSmall,
  CommutationViolated,
  InvalidSpec,
  UnknownBound,
  UnknownParameter,
  HypothesisMismatch,
  ShapeMismatch,
  CorruptPayload,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library is reported through this type. `measure`
// carries the offending quantity when there is one (asymmetry norm,
// commutator norm, residual, ...), otherwise 0.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double measure = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        measure_(measure) {}

  ErrorKind kind() const noexcept { return kind_; }
  double measure() const noexcept { return measure_; }

 private:
  ErrorKind kind_;
  double measure_;
};

}  // namespace opradius
