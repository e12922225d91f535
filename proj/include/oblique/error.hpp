#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oblique {

// Failure categories surfaced by the library. Each maps to a fixed
// error string that the CLI reports verbatim.
enum class ErrorKind {
  NonFinite,
  DimensionMismatch,
  NotSquare,
  NotHermitian,
  NotPsd,
  NotPositiveDefinite,
  NotIdempotent,
  NotOrthogonalProjection,
  NotSymmetry,
  Singular,
  LogDomain,
  NotASelfadjoint,
  NotInQp,
  HTooLarge,
  NoConvergence,
  NotTangent,
  TooFar,
  HypothesesViolated,
  InvalidArgument,
  ParseError,
};

std::string_view error_string(ErrorKind kind) noexcept;

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(ErrorKind kind, const std::string& detail = {});

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace oblique
