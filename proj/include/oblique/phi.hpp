#pragma once

#include <cstddef>

#include "oblique/involutions.hpp"
#include "oblique/matrix.hpp"
#include "oblique/projections.hpp"

namespace oblique {

struct FiberPoint {
  OrthProjection p;
  PositiveElement a;
};

struct SeriesControl {
  std::size_t max_terms = 200;
  double term_tol = 1e-15;
};

struct SeriesResult {
  Idempotent q;
  std::size_t terms = 0;
  // Geometric tail r^{N+1} / (1 - r), r the contraction ratio, N = terms.
  double apriori_bound = 0.0;
  double last_term_norm = 0.0;
};

/// The unique a-selfadjoint idempotent with the same range as p,
/// p E_p(a)^{-1} a.
Idempotent phi(const OrthProjection& p, const PositiveElement& a);

/// Same map from the block picture: p + a1^{-1} a2 with a1 = pap inverted on
/// range(p) and a2 = pa(1-p).
Idempotent phi_block(const OrthProjection& p, const PositiveElement& a);

/// Same map through the resolvent p (1 + p - a^{-1} p a)^{-1}.
Idempotent phi_alt(const OrthProjection& p, const PositiveElement& a);

/// p + sum_{n>=1} (-1)^{n-1} (ph)^n (1-p), valid for Hermitian h with |h| < 1.
/// Summation stops once a term falls under term_tol * (1 + |p|_F); reaching
/// max_terms first throws NoConvergence.
SeriesResult phi_series_at_identity(const OrthProjection& p, const ComplexMatrix& h,
                                    SeriesControl ctl = {});

/// Expansion of phi(p, a + h) around a: with q = phi(p, a),
/// q + sum (-1)^{n-1} (q a^{-1} h)^n (1-q). Needs |h| < 1/|a^{-1}|.
SeriesResult phi_series_at(const OrthProjection& p, const PositiveElement& a,
                           const ComplexMatrix& h, SeriesControl ctl = {});

// Derivative of a -> phi(p, a) at a = 1 in direction X: p X (1-p).
ComplexMatrix tangent_phi_p_at_identity(const OrthProjection& p, const ComplexMatrix& x);

// exp(-p E_p(a)^{-1} a (1-p)); conjugates p onto phi(p, a).
ComplexMatrix conjugator_u(const OrthProjection& p, const PositiveElement& a);

bool fiber_contains(const Idempotent& q, const OrthProjection& p, const PositiveElement& a,
                    Tolerance tol = {});

// (range projection of q, |2q - 1|).
FiberPoint cross_section(const Idempotent& q);

struct TangentImage {
  ComplexMatrix corner;  // y = q Y, supported in p A (1-p)
  ComplexMatrix full;    // Y = y + y^{#a}
};

/// Derivative of p -> phi(p, a) along a Hermitian tangent X at p
/// (pXp = (1-p)X(1-p) = 0). With the blocks of a relative to p,
/// y = a1^{-1} x (a3 - a2* a1^{-1} a2) where x = pX(1-p).
TangentImage tangent_phi_a(const OrthProjection& p, const PositiveElement& a,
                           const ComplexMatrix& x, Tolerance tol = {});

// Least eigenvalue of e m e on range(e); +inf when e = 0.
double compressed_min_eigenvalue(const ComplexMatrix& m, const ComplexMatrix& e);

}  // namespace oblique
