#include "oblique/involutions.hpp"

#include <cmath>
#include <string>

#include "oblique/error.hpp"

namespace oblique {

PositiveElement::PositiveElement(const ComplexMatrix& a, Tolerance tol) : a_(a) {
  require_finite(a);
  if (op_norm(a - a.adjoint()) > tol.scaled(op_norm(a))) throw DomainError(ErrorKind::NotHermitian);
  if (!is_positive_definite(a, tol)) throw DomainError(ErrorKind::NotPositiveDefinite);
  const HermEig e = herm_eig(a, tol);
  min_eig_ = e.values.front();
  max_eig_ = e.values.back();
  a_inv_ = hermitian_part(spectral_apply(e, [](double l) { return 1.0 / l; }));
  a_half_ = hermitian_part(spectral_apply(e, [](double l) { return std::sqrt(l); }));
  a_half_inv_ = hermitian_part(spectral_apply(e, [](double l) { return 1.0 / std::sqrt(l); }));
}

ComplexMatrix a_adjoint(const ComplexMatrix& x, const PositiveElement& a) {
  require_same_size(x, a.matrix());
  return a.inv() * x.adjoint() * a.matrix();
}

double a_norm(const ComplexMatrix& x, const PositiveElement& a) {
  return op_norm(star_isomorphism_inverse(x, a));
}

double a_selfadjoint_defect(const ComplexMatrix& x, const PositiveElement& a) {
  require_same_size(x, a.matrix());
  return op_norm(a.matrix() * x - x.adjoint() * a.matrix());
}

bool is_a_selfadjoint(const ComplexMatrix& x, const PositiveElement& a, Tolerance tol) {
  if (x.size() != a.size() || !x.all_finite()) return false;
  return a_selfadjoint_defect(x, a) <= tol.scaled(a.norm() * op_norm(x));
}

bool is_a_unitary(const ComplexMatrix& u, const PositiveElement& a, Tolerance tol) {
  require_same_size(u, a.matrix());
  if (min_singular_value(u) <= tol.atol * op_norm(u)) throw DomainError(ErrorKind::Singular);
  const ComplexMatrix defect = a_adjoint(u, a) * u - ComplexMatrix::identity(u.size());
  return op_norm(defect) <= tol.atol;
}

ComplexMatrix star_isomorphism(const ComplexMatrix& x, const PositiveElement& a) {
  require_same_size(x, a.matrix());
  return a.half_inv() * x * a.half();
}

ComplexMatrix star_isomorphism_inverse(const ComplexMatrix& x, const PositiveElement& a) {
  require_same_size(x, a.matrix());
  return a.half() * x * a.half_inv();
}

}  // namespace oblique
