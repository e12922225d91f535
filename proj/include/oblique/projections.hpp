#pragma once

#include "oblique/matrix.hpp"

namespace oblique {

// q with q^2 = q up to atol * (1 + |q|^2). Never re-projected: a matrix that
// passes validation is stored as given.
class Idempotent {
 public:
  explicit Idempotent(const ComplexMatrix& q, Tolerance tol = {});

  const ComplexMatrix& matrix() const noexcept { return q_; }
  std::size_t size() const noexcept { return q_.size(); }

 private:
  ComplexMatrix q_;
};

// Hermitian idempotent.
class OrthProjection {
 public:
  explicit OrthProjection(const ComplexMatrix& p, Tolerance tol = {});

  static OrthProjection zero(std::size_t n) { return OrthProjection(ComplexMatrix::zero(n)); }
  static OrthProjection identity(std::size_t n) {
    return OrthProjection(ComplexMatrix::identity(n));
  }

  const ComplexMatrix& matrix() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  ComplexMatrix complement() const { return oblique::complement(p_); }
  Idempotent as_idempotent() const { return Idempotent(p_); }

 private:
  ComplexMatrix p_;
};

double idempotent_defect(const ComplexMatrix& q);

// The four compressions of x by p and 1 - p, kept at full size.
struct BlockView {
  ComplexMatrix x11;  // p x p
  ComplexMatrix x12;  // p x (1-p)
  ComplexMatrix x21;  // (1-p) x p
  ComplexMatrix x22;  // (1-p) x (1-p)

  ComplexMatrix reassemble() const { return x11 + x12 + x21 + x22; }
};

BlockView blocks(const ComplexMatrix& x, const OrthProjection& p);

// E_p(x) = p x p + (1-p) x (1-p).
ComplexMatrix cond_expectation(const ComplexMatrix& x, const OrthProjection& p);

// Orthogonal projection onto range(q): q q* (1 - (q - q*)^2)^{-1}.
OrthProjection orth_from_idempotent(const Idempotent& q);

// Same projection through q (1 + q - q*)^{-1}.
OrthProjection kerzman_stein(const Idempotent& q);

bool in_Qp(const Idempotent& q, const OrthProjection& p, Tolerance tol = {});

// q - p for q in Q_p; a matrix supported in p A (1-p).
ComplexMatrix qp_coordinates(const Idempotent& q, const OrthProjection& p, Tolerance tol = {});

// Orthogonal projection onto ker q = range(1 - q).
OrthProjection kernel_projection(const Idempotent& q);

// Inverse of the compression e x e on range(e), as a full-size matrix
// supported there: (e x e + 1 - e)^{-1} e. Requires e x e invertible on range(e).
ComplexMatrix corner_inverse(const ComplexMatrix& x, const ComplexMatrix& projection);

}  // namespace oblique
