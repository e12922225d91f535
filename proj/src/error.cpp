#include "oblique/error.hpp"

namespace oblique {

std::string_view error_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "non-finite input";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::NotSquare: return "not square";
    case ErrorKind::NotHermitian: return "not Hermitian";
    case ErrorKind::NotPsd: return "not PSD";
    case ErrorKind::NotPositiveDefinite: return "not positive definite";
    case ErrorKind::NotIdempotent: return "not idempotent";
    case ErrorKind::NotOrthogonalProjection: return "not an orthogonal projection";
    case ErrorKind::NotSymmetry: return "not a symmetry";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::LogDomain: return "log domain";
    case ErrorKind::NotASelfadjoint: return "not a-selfadjoint";
    case ErrorKind::NotInQp: return "not in Q_p";
    case ErrorKind::HTooLarge: return "h too large";
    case ErrorKind::NoConvergence: return "no convergence";
    case ErrorKind::NotTangent: return "not tangent";
    case ErrorKind::TooFar: return "too far";
    case ErrorKind::HypothesesViolated: return "hypotheses violated";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::ParseError: return "parse error";
  }
  return "unknown error";
}

namespace {

std::string compose(ErrorKind kind, const std::string& detail) {
  std::string msg(error_string(kind));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

DomainError::DomainError(ErrorKind kind, const std::string& detail)
    : std::runtime_error(compose(kind, detail)), kind_(kind) {}

}  // namespace oblique
