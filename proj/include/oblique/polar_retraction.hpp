#pragma once

#include "oblique/involutions.hpp"
#include "oblique/matrix.hpp"
#include "oblique/projections.hpp"

namespace oblique {

// e with e^2 = 1 up to atol * (1 + |e|^2).
class Symmetry {
 public:
  explicit Symmetry(const ComplexMatrix& e, Tolerance tol = {});

  const ComplexMatrix& matrix() const noexcept { return e_; }
  std::size_t size() const noexcept { return e_.size(); }

 private:
  ComplexMatrix e_;
};

// q -> 2q - 1 and back.
Symmetry to_symmetry(const Idempotent& q);
Idempotent from_symmetry(const Symmetry& e);

struct OmegaDetail {
  OrthProjection r;
  ComplexMatrix rho;          // |eps| eps, a Hermitian unitary
  ComplexMatrix abs_eps;      // |eps| = (eps* eps)^{1/2}
  double rho_selfadjoint = 0; // |rho - rho*|
  double rho_involution = 0;  // |rho^2 - 1|
  double polar_gap = 0;       // |rho - eps |eps|^{-1}|
  double abs_adjoint_gap = 0; // | |eps*| - |eps|^{-1} |
};

/// Polar retraction Q -> P. With eps = 2q - 1, the unitary part of eps is
/// rho = |eps| eps, and the retraction returns (rho + 1)/2.
OrthProjection omega(const Idempotent& q);
OmegaDetail omega_detailed(const Idempotent& q);

// omega restricted to a-selfadjoint idempotents; throws NotASelfadjoint.
OrthProjection omega_a(const Idempotent& q, const PositiveElement& a, Tolerance tol = {});

/// Inverse of omega_a. With rho = 2r - 1 and b = a^{1/2}, let w be the sign of
/// the Hermitian matrix b rho b (its unitary polar factor); then
/// eps = b^{-1} w b and the result is (eps + 1)/2.
Idempotent omega_a_inverse(const OrthProjection& r, const PositiveElement& a);

struct Movement {
  OrthProjection r;
  double forms_gap = 0;  // block form vs invariant form, as symmetries
  double omega_gap = 0;  // vs omega(phi(p, a)), as projections
};

/// omega_a(phi_a(p)) from the closed form
/// (1 + xx* + x*x)^{-1/2} (2p - 1 + x + x*),  x = phi(p, a) - p,
/// cross-checked against [qq* + (1-q)*(1-q)]^{-1/2} (q + q* - 1).
Movement omega_phi_move(const OrthProjection& p, const PositiveElement& a);

struct AbsSymmetry {
  ComplexMatrix value;
  double sqrt_gap = 0;  // vs herm_sqrt(eps* eps)
};

// |2 phi(p, a) - 1| from the block formula
// diag(1 + xx*, 1 + x*x)^{-1/2} [[1, x], [x*, 2x*x + 1]].
AbsSymmetry abs_symmetry_blocks(const OrthProjection& p, const PositiveElement& a);

struct BuckholtzResult {
  ComplexMatrix value;    // q + q* - 1
  double residual = 0;    // |(q + q* - 1)(P_R(q) - P_ker(q)) - 1|
};

// Throws Singular when the residual exceeds 1e-8 (1 + |q|^2).
BuckholtzResult buckholtz_inverse(const Idempotent& q);

// |r - p| < sqrt(2)/2 - atol. Membership only; no witness is produced.
bool orbit_contains(const OrthProjection& p, const OrthProjection& r, Tolerance tol = {});

// An a-selfadjoint idempotent sharing its kernel with p: 1 - phi(1 - p, a).
Idempotent same_kernel_movement(const OrthProjection& p, const PositiveElement& a);

}  // namespace oblique
