#pragma once

#include <cstddef>
#include <vector>

#include "oblique/matrix.hpp"

namespace oblique {

struct HermEig {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // unitary, columns are eigenvectors
};

// Largest singular value.
double op_norm(const ComplexMatrix& m);

// Smallest singular value (sqrt of the least eigenvalue of m*m, clamped at 0).
double min_singular_value(const ComplexMatrix& m);

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. The input is symmetrized before rotating, so the result is
/// exact for (m + m*)/2.
HermEig herm_eig(const ComplexMatrix& m, Tolerance tol = {});

// V f(diag) V*; the building block for sqrt, inverse sqrt and friends.
template <class F>
ComplexMatrix spectral_apply(const HermEig& e, F f) {
  const std::size_t n = e.values.size();
  ComplexMatrix out(n);
  std::vector<double> fv(n);
  for (std::size_t k = 0; k < n; ++k) fv[k] = f(e.values[k]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += e.vectors(i, k) * fv[k] * std::conj(e.vectors(j, k));
      out(i, j) = s;
    }
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix& hermitian);
double max_eigenvalue(const ComplexMatrix& hermitian);

ComplexMatrix hermitian_part(const ComplexMatrix& m);

// Unique PSD square root. Throws NotPsd if the least eigenvalue is below
// -atol * (1 + |m|).
ComplexMatrix herm_sqrt(const ComplexMatrix& m, Tolerance tol = {});

// e^m by scaling and squaring: scale until |m|/2^s <= 1/2, then Taylor.
ComplexMatrix mat_exp(const ComplexMatrix& m);

// Principal logarithm through the Mercator series; only valid on |v - 1| < 1.
ComplexMatrix mat_log_near_identity(const ComplexMatrix& v);

struct PolarFactors {
  ComplexMatrix unitary;
  ComplexMatrix positive;
};

/// Polar decomposition c = unitary * positive with positive = |c| = (c*c)^{1/2}.
/// Computed with the scaled Newton iteration X <- (gX + (gX)^{-*})/2, which is
/// quadratically convergent for invertible c and keeps the unitary factor
/// accurate to working precision. Throws Singular when the smallest singular
/// value is below atol * |c|.
PolarFactors polar(const ComplexMatrix& c, Tolerance tol = {});

// LU with partial pivoting. Throws Singular on a vanishing pivot.
ComplexMatrix inverse(const ComplexMatrix& m);

bool is_positive_definite(const ComplexMatrix& m, Tolerance tol = {});

void require_finite(const ComplexMatrix& m);

}  // namespace oblique
