#pragma once

#include "oblique/linalg.hpp"
#include "oblique/matrix.hpp"

namespace oblique {

// A positive invertible matrix a together with the square roots and inverse
// every deformed-adjoint computation needs. Validated once at construction.
class PositiveElement {
 public:
  explicit PositiveElement(const ComplexMatrix& a, Tolerance tol = {});

  static PositiveElement identity(std::size_t n) {
    return PositiveElement(ComplexMatrix::identity(n));
  }

  const ComplexMatrix& matrix() const noexcept { return a_; }
  const ComplexMatrix& inv() const noexcept { return a_inv_; }
  const ComplexMatrix& half() const noexcept { return a_half_; }
  const ComplexMatrix& half_inv() const noexcept { return a_half_inv_; }
  std::size_t size() const noexcept { return a_.size(); }

  double norm() const noexcept { return max_eig_; }
  double inv_norm() const noexcept { return 1.0 / min_eig_; }
  double condition() const noexcept { return max_eig_ / min_eig_; }

 private:
  ComplexMatrix a_;
  ComplexMatrix a_inv_;
  ComplexMatrix a_half_;
  ComplexMatrix a_half_inv_;
  double min_eig_ = 1.0;
  double max_eig_ = 1.0;
};

// x^{#a} = a^{-1} x* a.
ComplexMatrix a_adjoint(const ComplexMatrix& x, const PositiveElement& a);

// |x|_a = |a^{1/2} x a^{-1/2}|.
double a_norm(const ComplexMatrix& x, const PositiveElement& a);

// a x = x* a, up to tol * (1 + |a||x|).
bool is_a_selfadjoint(const ComplexMatrix& x, const PositiveElement& a, Tolerance tol = {});
double a_selfadjoint_defect(const ComplexMatrix& x, const PositiveElement& a);

bool is_a_unitary(const ComplexMatrix& u, const PositiveElement& a, Tolerance tol = {});

// x -> a^{-1/2} x a^{1/2}; carries (A, *) isometrically onto (A, #a).
ComplexMatrix star_isomorphism(const ComplexMatrix& x, const PositiveElement& a);
ComplexMatrix star_isomorphism_inverse(const ComplexMatrix& x, const PositiveElement& a);

}  // namespace oblique
