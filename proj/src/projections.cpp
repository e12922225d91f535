#include "oblique/projections.hpp"

#include <string>

#include "oblique/error.hpp"
#include "oblique/linalg.hpp"

namespace oblique {

double idempotent_defect(const ComplexMatrix& q) { return op_norm(q * q - q); }

Idempotent::Idempotent(const ComplexMatrix& q, Tolerance tol) : q_(q) {
  require_finite(q);
  const double norm = op_norm(q);
  const double defect = idempotent_defect(q);
  if (defect > tol.atol * (1.0 + norm * norm)) {
    throw DomainError(ErrorKind::NotIdempotent, "|q^2 - q| = " + std::to_string(defect));
  }
}

OrthProjection::OrthProjection(const ComplexMatrix& p, Tolerance tol) : p_(p) {
  require_finite(p);
  const double norm = op_norm(p);
  if (idempotent_defect(p) > tol.atol * (1.0 + norm * norm)) {
    throw DomainError(ErrorKind::NotOrthogonalProjection, "not idempotent");
  }
  if (op_norm(p - p.adjoint()) > tol.scaled(norm)) {
    throw DomainError(ErrorKind::NotOrthogonalProjection, "not Hermitian");
  }
}

BlockView blocks(const ComplexMatrix& x, const OrthProjection& p) {
  require_same_size(x, p.matrix());
  const ComplexMatrix& e = p.matrix();
  const ComplexMatrix f = p.complement();
  return {e * x * e, e * x * f, f * x * e, f * x * f};
}

ComplexMatrix cond_expectation(const ComplexMatrix& x, const OrthProjection& p) {
  require_same_size(x, p.matrix());
  const ComplexMatrix& e = p.matrix();
  const ComplexMatrix f = p.complement();
  return e * x * e + f * x * f;
}

OrthProjection orth_from_idempotent(const Idempotent& q) {
  const ComplexMatrix& m = q.matrix();
  const ComplexMatrix d = m - m.adjoint();
  const ComplexMatrix resolvent = ComplexMatrix::identity(m.size()) - d * d;
  return OrthProjection(m * m.adjoint() * inverse(resolvent));
}

OrthProjection kerzman_stein(const Idempotent& q) {
  const ComplexMatrix& m = q.matrix();
  const ComplexMatrix resolvent = ComplexMatrix::identity(m.size()) + m - m.adjoint();
  return OrthProjection(m * inverse(resolvent));
}

bool in_Qp(const Idempotent& q, const OrthProjection& p, Tolerance tol) {
  if (q.size() != p.size()) return false;
  const ComplexMatrix& qm = q.matrix();
  const ComplexMatrix& pm = p.matrix();
  const double scale = tol.scaled(op_norm(qm));
  return op_norm(qm * pm - pm) <= scale && op_norm(pm * qm - qm) <= scale;
}

ComplexMatrix qp_coordinates(const Idempotent& q, const OrthProjection& p, Tolerance tol) {
  require_same_size(q.matrix(), p.matrix());
  if (!in_Qp(q, p, tol)) throw DomainError(ErrorKind::NotInQp);
  return q.matrix() - p.matrix();
}

OrthProjection kernel_projection(const Idempotent& q) {
  return orth_from_idempotent(Idempotent(complement(q.matrix())));
}

ComplexMatrix corner_inverse(const ComplexMatrix& x, const ComplexMatrix& projection) {
  require_same_size(x, projection);
  const ComplexMatrix f = complement(projection);
  return inverse(projection * x * projection + f) * projection;
}

}  // namespace oblique
