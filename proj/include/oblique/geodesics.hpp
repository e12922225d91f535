#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "oblique/involutions.hpp"
#include "oblique/matrix.hpp"
#include "oblique/projections.hpp"

namespace oblique {

// Matrix X at a base idempotent p with p X p = (1-p) X (1-p) = 0.
class TangentVector {
 public:
  // Tangent to Q at an idempotent base.
  TangentVector(const Idempotent& base, const ComplexMatrix& x, Tolerance tol = {});
  // Tangent to P: additionally Hermitian.
  static TangentVector horizontal(const OrthProjection& base, const ComplexMatrix& x,
                                  Tolerance tol = {});

  const Idempotent& base() const noexcept { return base_; }
  const ComplexMatrix& matrix() const noexcept { return x_; }

 private:
  Idempotent base_;
  ComplexMatrix x_;
};

// [X, p] = Xp - pX. On matrices with vanishing diagonal blocks this map is an
// involution, exchanging the velocity of a geodesic and its generator.
ComplexMatrix commutator_with_base(const ComplexMatrix& x, const ComplexMatrix& p);

/// The geodesic of Q through p with initial velocity X:
/// t -> e^{tX'} p e^{-tX'} with X' = [X, p].
class Geodesic {
 public:
  explicit Geodesic(TangentVector direction);

  const Idempotent& base() const noexcept { return direction_.base(); }
  const TangentVector& direction() const noexcept { return direction_; }
  const ComplexMatrix& generator() const noexcept { return generator_; }

  Idempotent eval(double t) const;

 private:
  TangentVector direction_;
  ComplexMatrix generator_;
};

Geodesic geodesic(const Idempotent& p, const ComplexMatrix& x);

// (t1 - t0)|X|: geodesics have constant speed.
double geodesic_length(const Geodesic& g, double t0, double t1);
double geodesic_length(const Geodesic& g, const PositiveElement& a, double t0, double t1);

struct Connection {
  TangentVector generator;         // X with q = e^X p e^{-X}
  double distance = 0;             // |p - q|
  double norm_gap = 0;             // max_i | |v_i - 1| - |p - q| |
  double forms_gap = 0;            // |(Id - E_p) log v1 - (log v1 - log v2)/2|
  double reproduction_error = 0;   // |e^X p e^{-X} - q|

  // Velocity [X, p] of the geodesic from p that reaches q at t = 1.
  ComplexMatrix velocity() const;
};

/// Logarithmic construction of the tangent joining p to a nearby idempotent q.
/// With v1 = qp + (1-q)(1-p) and v2 = pq + (1-p)(1-q), X is the off-diagonal
/// part of log v1, which also equals (log v1 - log v2)/2. Requires |p - q| < 1.
Connection connect(const OrthProjection& p, const Idempotent& q);

// The minimal geodesic of P from p to r (|p - r| < 1).
Geodesic short_geodesic_P(const OrthProjection& p, const OrthProjection& r);

struct UnigeoReport {
  ComplexMatrix generator;
  double norm_gap = 0;           // | |p - r| - |p - r|_a |
  double commutation_defect = 0; // |Xa - aX|
  double length_gap = 0;         // | |X| - |X|_a |
  bool pass = false;
};

// For p, r in P commuting with a: the two norms and the two short geodesics
// coincide. Throws HypothesesViolated if p or r fails to commute with a.
UnigeoReport unigeo_check(const OrthProjection& p, const OrthProjection& r,
                          const PositiveElement& a, Tolerance tol = {});

enum class Feasibility { Feasible, Infeasible, Indeterminate };

std::string_view to_string(Feasibility f) noexcept;

struct CompatibilityVerdict {
  Feasibility status = Feasibility::Indeterminate;
  std::optional<PositiveElement> witness;  // trace normalized to n
  double certificate = 0;                  // best least eigenvalue reached
  std::size_t nullspace_dim = 0;
  bool exact_certificate = false;          // infeasibility proven by linear algebra
  ComplexMatrix generator;

  // Populated for feasible verdicts.
  double constraint_residual = 0;   // |aX +- X*a| / (|a||X|)
  double block_residual = 0;        // |a - E_p(a)|
  double p_selfadjoint_defect = 0;  // |ap - p*a| / |a|
  double q_selfadjoint_defect = 0;  // |aq - q*a| / (|a||q|)
  double condition3_residual = 0;   // |y -+ c x* b| / scale
  double retraction_residual = 0;   // fiber variant only
  std::size_t restarts_used = 0;
};

struct FeasibilityOptions {
  std::size_t restarts = 64;
  double feasible_threshold = 1e-8;
  double infeasible_threshold = 1e-12;
  std::size_t exhaustive_max_n = 4;
  std::size_t planes = 64;
  std::size_t angles = 90;
};

/// Is there a in G+ with p, q both a-selfadjoint? Decided through the
/// generator X = connect(p, q): search Hermitian a, block diagonal w.r.t. p,
/// positive definite, with aX + X*a = 0.
CompatibilityVerdict compatible_star(const OrthProjection& p, const Idempotent& q,
                                     std::uint64_t seed = 0, FeasibilityOptions opts = {});

/// The fiber variant: same search with aX - X*a = 0, which makes the
/// a-polar retraction of q equal to p.
CompatibilityVerdict omega_fiber_star(const OrthProjection& p, const Idempotent& q,
                                      std::uint64_t seed = 0, FeasibilityOptions opts = {});

}  // namespace oblique
