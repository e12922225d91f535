#include "oblique/phi.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "oblique/error.hpp"
#include "oblique/linalg.hpp"

namespace oblique {

namespace {

void require_hermitian(const ComplexMatrix& h, Tolerance tol) {
  if (op_norm(h - h.adjoint()) > tol.scaled(op_norm(h))) throw DomainError(ErrorKind::NotHermitian);
}

void require_control(const SeriesControl& ctl) {
  if (ctl.max_terms < 1 || !(ctl.term_tol > 0.0)) {
    throw DomainError(ErrorKind::InvalidArgument, "series control");
  }
}

// q + sum_{n>=1} (-1)^{n-1} k^n (1-q).
SeriesResult sum_series(const ComplexMatrix& q, const ComplexMatrix& k, double ratio,
                        const SeriesControl& ctl) {
  const ComplexMatrix tail = complement(q);
  const double threshold = ctl.term_tol * (1.0 + frobenius_norm(q));
  ComplexMatrix sum = q;
  ComplexMatrix power = k;
  for (std::size_t n = 1; n <= ctl.max_terms; ++n) {
    ComplexMatrix term = power * tail;
    const double term_norm = frobenius_norm(term);
    if (n % 2 == 0) term *= -1.0;
    sum += term;
    if (term_norm < threshold) {
      const double tail_bound = std::pow(ratio, static_cast<double>(n + 1)) / (1.0 - ratio);
      return {Idempotent(sum), n, tail_bound, term_norm};
    }
    power = power * k;
  }
  throw DomainError(ErrorKind::NoConvergence,
                    "max_terms = " + std::to_string(ctl.max_terms) + " reached");
}

}  // namespace

Idempotent phi(const OrthProjection& p, const PositiveElement& a) {
  require_same_size(p.matrix(), a.matrix());
  return Idempotent(p.matrix() * inverse(cond_expectation(a.matrix(), p)) * a.matrix());
}

Idempotent phi_block(const OrthProjection& p, const PositiveElement& a) {
  require_same_size(p.matrix(), a.matrix());
  const ComplexMatrix& e = p.matrix();
  const ComplexMatrix a1_inv = corner_inverse(a.matrix(), e);
  const ComplexMatrix a2 = e * a.matrix() * p.complement();
  return Idempotent(e + a1_inv * a2);
}

Idempotent phi_alt(const OrthProjection& p, const PositiveElement& a) {
  require_same_size(p.matrix(), a.matrix());
  const ComplexMatrix& e = p.matrix();
  const ComplexMatrix resolvent =
      ComplexMatrix::identity(e.size()) + e - a.inv() * e * a.matrix();
  return Idempotent(e * inverse(resolvent));
}

SeriesResult phi_series_at_identity(const OrthProjection& p, const ComplexMatrix& h,
                                    SeriesControl ctl) {
  require_same_size(p.matrix(), h);
  require_control(ctl);
  require_hermitian(h, Tolerance{});
  const double radius = op_norm(h);
  if (radius >= 1.0) throw DomainError(ErrorKind::HTooLarge, "|h| = " + std::to_string(radius));
  return sum_series(p.matrix(), p.matrix() * h, radius, ctl);
}

SeriesResult phi_series_at(const OrthProjection& p, const PositiveElement& a,
                           const ComplexMatrix& h, SeriesControl ctl) {
  require_same_size(p.matrix(), h);
  require_control(ctl);
  require_hermitian(h, Tolerance{});
  const double ratio = op_norm(h) * a.inv_norm();
  if (ratio >= 1.0) {
    throw DomainError(ErrorKind::HTooLarge, "|h| |a^-1| = " + std::to_string(ratio));
  }
  const Idempotent q = phi(p, a);
  return sum_series(q.matrix(), q.matrix() * a.inv() * h, ratio, ctl);
}

ComplexMatrix tangent_phi_p_at_identity(const OrthProjection& p, const ComplexMatrix& x) {
  require_same_size(p.matrix(), x);
  return p.matrix() * x * p.complement();
}

ComplexMatrix conjugator_u(const OrthProjection& p, const PositiveElement& a) {
  require_same_size(p.matrix(), a.matrix());
  const ComplexMatrix gen =
      p.matrix() * inverse(cond_expectation(a.matrix(), p)) * a.matrix() * p.complement();
  return mat_exp(-gen);
}

double compressed_min_eigenvalue(const ComplexMatrix& m, const ComplexMatrix& e) {
  require_same_size(m, e);
  if (op_norm(e) < 0.5) return std::numeric_limits<double>::infinity();
  // Eigenvalues of eme + shift(1-e) are those of eme on range(e) plus the
  // shift; a shift above |m| keeps it out of the minimum.
  const double shift = 2.0 * op_norm(m) + 1.0;
  ComplexMatrix f = complement(e);
  f *= shift;
  return min_eigenvalue(e * m * e + f);
}

bool fiber_contains(const Idempotent& q, const OrthProjection& p, const PositiveElement& a,
                    Tolerance tol) {
  if (q.size() != p.size() || q.size() != a.size()) return false;
  const OrthProjection range = orth_from_idempotent(q);
  if (op_norm(range.matrix() - p.matrix()) > tol.scaled(1.0)) return false;

  const ComplexMatrix x = q.matrix() - p.matrix();
  const BlockView b = blocks(a.matrix(), p);
  const double xn = op_norm(x);
  if (op_norm(b.x12 - b.x11 * x) > tol.scaled(a.norm() * (1.0 + xn))) return false;

  // a1 > 0 on range(p) and x* a1 x < a3 on range(1-p).
  const double a1_min = compressed_min_eigenvalue(b.x11, p.matrix());
  const double schur_min =
      compressed_min_eigenvalue(b.x22 - x.adjoint() * b.x11 * x, p.complement());
  return a1_min > 0.0 && schur_min > 0.0;
}

FiberPoint cross_section(const Idempotent& q) {
  const ComplexMatrix eps = 2.0 * q.matrix() - ComplexMatrix::identity(q.size());
  return {orth_from_idempotent(q), PositiveElement(herm_sqrt(eps.adjoint() * eps))};
}

TangentImage tangent_phi_a(const OrthProjection& p, const PositiveElement& a,
                           const ComplexMatrix& x, Tolerance tol) {
  require_same_size(p.matrix(), x);
  require_same_size(p.matrix(), a.matrix());
  const BlockView xb = blocks(x, p);
  const double scale = tol.scaled(op_norm(x));
  if (op_norm(x - x.adjoint()) > scale || op_norm(xb.x11) > scale || op_norm(xb.x22) > scale) {
    throw DomainError(ErrorKind::NotTangent);
  }
  const BlockView ab = blocks(a.matrix(), p);
  const ComplexMatrix a1_inv = corner_inverse(a.matrix(), p.matrix());
  const ComplexMatrix schur = ab.x22 - ab.x12.adjoint() * a1_inv * ab.x12;
  ComplexMatrix y = a1_inv * xb.x12 * schur;
  ComplexMatrix full = y + a_adjoint(y, a);
  return {std::move(y), std::move(full)};
}

}  // namespace oblique
