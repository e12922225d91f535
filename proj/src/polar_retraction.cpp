#include "oblique/polar_retraction.hpp"

#include <cmath>
#include <string>

#include "oblique/error.hpp"
#include "oblique/linalg.hpp"
#include "oblique/phi.hpp"

namespace oblique {

namespace {

ComplexMatrix half_shift(const ComplexMatrix& e) {
  ComplexMatrix q = e + ComplexMatrix::identity(e.size());
  q *= 0.5;
  return q;
}

ComplexMatrix inverse_sqrt(const ComplexMatrix& m) {
  return hermitian_part(spectral_apply(herm_eig(m), [](double l) { return 1.0 / std::sqrt(l); }));
}

}  // namespace

Symmetry::Symmetry(const ComplexMatrix& e, Tolerance tol) : e_(e) {
  require_finite(e);
  const double norm = op_norm(e);
  if (op_norm(e * e - ComplexMatrix::identity(e.size())) > tol.atol * (1.0 + norm * norm)) {
    throw DomainError(ErrorKind::NotSymmetry);
  }
}

Symmetry to_symmetry(const Idempotent& q) {
  return Symmetry(2.0 * q.matrix() - ComplexMatrix::identity(q.size()));
}

Idempotent from_symmetry(const Symmetry& e) { return Idempotent(half_shift(e.matrix())); }

OmegaDetail omega_detailed(const Idempotent& q) {
  const std::size_t n = q.size();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix eps = 2.0 * q.matrix() - id;

  const HermEig e = herm_eig(eps.adjoint() * eps);
  const ComplexMatrix abs_eps =
      hermitian_part(spectral_apply(e, [](double l) { return std::sqrt(std::max(l, 0.0)); }));
  const ComplexMatrix abs_eps_inv =
      hermitian_part(spectral_apply(e, [](double l) { return 1.0 / std::sqrt(l); }));
  const ComplexMatrix rho = abs_eps * eps;
  const ComplexMatrix abs_eps_adj = herm_sqrt(eps * eps.adjoint());

  return {OrthProjection(half_shift(rho)),
          rho,
          abs_eps,
          op_norm(rho - rho.adjoint()),
          op_norm(rho * rho - id),
          op_norm(rho - eps * abs_eps_inv),
          op_norm(abs_eps_adj - abs_eps_inv)};
}

OrthProjection omega(const Idempotent& q) { return omega_detailed(q).r; }

OrthProjection omega_a(const Idempotent& q, const PositiveElement& a, Tolerance tol) {
  require_same_size(q.matrix(), a.matrix());
  if (!is_a_selfadjoint(q.matrix(), a, tol)) throw DomainError(ErrorKind::NotASelfadjoint);
  return omega(q);
}

Idempotent omega_a_inverse(const OrthProjection& r, const PositiveElement& a) {
  require_same_size(r.matrix(), a.matrix());
  const std::size_t n = r.size();
  const ComplexMatrix rho = 2.0 * r.matrix() - ComplexMatrix::identity(n);
  const ComplexMatrix& b = a.half();
  const ComplexMatrix brb = b * rho * b;

  // b rho b is Hermitian, so its unitary polar factor w = brb |brb|^{-1} is
  // the spectral sign.
  const HermEig e = herm_eig(brb);
  const double floor = 1e-14 * std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  for (double l : e.values) {
    if (std::abs(l) <= floor) throw DomainError(ErrorKind::Singular);
  }
  const ComplexMatrix w =
      hermitian_part(spectral_apply(e, [](double l) { return l > 0.0 ? 1.0 : -1.0; }));
  return Idempotent(half_shift(a.half_inv() * w * b));
}

Movement omega_phi_move(const OrthProjection& p, const PositiveElement& a) {
  const std::size_t n = p.size();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const Idempotent q = phi(p, a);
  const ComplexMatrix& qm = q.matrix();
  const ComplexMatrix x = qm - p.matrix();
  const ComplexMatrix xa = x.adjoint();

  const ComplexMatrix block_sym =
      inverse_sqrt(id + x * xa + xa * x) * (2.0 * p.matrix() - id + x + xa);

  const ComplexMatrix qc = complement(qm);
  const ComplexMatrix invariant_sym =
      inverse_sqrt(qm * qm.adjoint() + qc.adjoint() * qc) * (qm + qm.adjoint() - id);

  OrthProjection r(half_shift(block_sym));
  const double forms_gap = op_norm(block_sym - invariant_sym);
  const double omega_gap = op_norm(r.matrix() - omega(q).matrix());
  return {std::move(r), forms_gap, omega_gap};
}

AbsSymmetry abs_symmetry_blocks(const OrthProjection& p, const PositiveElement& a) {
  const std::size_t n = p.size();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix& e = p.matrix();
  const ComplexMatrix f = p.complement();
  const Idempotent q = phi(p, a);
  const ComplexMatrix x = q.matrix() - e;
  const ComplexMatrix xa = x.adjoint();

  // [[1, x], [x*, 2x*x + 1]] as a full-size matrix.
  const ComplexMatrix right = e + x + xa + f * (2.0 * xa * x + id) * f;
  ComplexMatrix value = inverse_sqrt(id + x * xa + xa * x) * right;

  const ComplexMatrix eps = 2.0 * q.matrix() - id;
  const double gap = op_norm(value - herm_sqrt(eps.adjoint() * eps));
  return {std::move(value), gap};
}

BuckholtzResult buckholtz_inverse(const Idempotent& q) {
  const ComplexMatrix& m = q.matrix();
  const ComplexMatrix id = ComplexMatrix::identity(q.size());
  ComplexMatrix value = m + m.adjoint() - id;
  const ComplexMatrix difference =
      orth_from_idempotent(q).matrix() - kernel_projection(q).matrix();
  const double residual = op_norm(value * difference - id);
  const double norm = op_norm(m);
  if (residual > 1e-8 * (1.0 + norm * norm)) {
    throw DomainError(ErrorKind::Singular, "residual " + std::to_string(residual));
  }
  return {std::move(value), residual};
}

bool orbit_contains(const OrthProjection& p, const OrthProjection& r, Tolerance tol) {
  require_same_size(p.matrix(), r.matrix());
  return op_norm(r.matrix() - p.matrix()) < std::sqrt(2.0) / 2.0 - tol.atol;
}

Idempotent same_kernel_movement(const OrthProjection& p, const PositiveElement& a) {
  const Idempotent range_side = phi(OrthProjection(p.complement()), a);
  return Idempotent(complement(range_side.matrix()));
}

}  // namespace oblique
