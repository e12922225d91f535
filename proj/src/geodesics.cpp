#include "oblique/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oblique/error.hpp"
#include "oblique/feasibility.hpp"
#include "oblique/linalg.hpp"
#include "oblique/polar_retraction.hpp"

namespace oblique {

TangentVector::TangentVector(const Idempotent& base, const ComplexMatrix& x, Tolerance tol)
    : base_(base), x_(x) {
  require_same_size(base.matrix(), x);
  require_finite(x);
  const ComplexMatrix& p = base.matrix();
  const ComplexMatrix f = complement(p);
  const double scale = tol.scaled(op_norm(x));
  if (op_norm(p * x * p) > scale || op_norm(f * x * f) > scale) {
    throw DomainError(ErrorKind::NotTangent, "nonzero diagonal blocks");
  }
}

TangentVector TangentVector::horizontal(const OrthProjection& base, const ComplexMatrix& x,
                                        Tolerance tol) {
  require_same_size(base.matrix(), x);
  if (op_norm(x - x.adjoint()) > tol.scaled(op_norm(x))) {
    throw DomainError(ErrorKind::NotTangent, "not Hermitian");
  }
  return TangentVector(base.as_idempotent(), x, tol);
}

ComplexMatrix commutator_with_base(const ComplexMatrix& x, const ComplexMatrix& p) {
  return x * p - p * x;
}

Geodesic::Geodesic(TangentVector direction)
    : direction_(std::move(direction)),
      generator_(commutator_with_base(direction_.matrix(), direction_.base().matrix())) {}

Idempotent Geodesic::eval(double t) const {
  if (t == 0.0) return base();
  const ComplexMatrix forward = mat_exp(t * generator_);
  const ComplexMatrix backward = mat_exp(-t * generator_);
  return Idempotent(forward * base().matrix() * backward);
}

Geodesic geodesic(const Idempotent& p, const ComplexMatrix& x) {
  return Geodesic(TangentVector(p, x));
}

double geodesic_length(const Geodesic& g, double t0, double t1) {
  if (!(t1 >= t0)) throw DomainError(ErrorKind::InvalidArgument, "t1 < t0");
  return (t1 - t0) * op_norm(g.direction().matrix());
}

double geodesic_length(const Geodesic& g, const PositiveElement& a, double t0, double t1) {
  if (!(t1 >= t0)) throw DomainError(ErrorKind::InvalidArgument, "t1 < t0");
  return (t1 - t0) * a_norm(g.direction().matrix(), a);
}

ComplexMatrix Connection::velocity() const {
  return commutator_with_base(generator.matrix(), generator.base().matrix());
}

Connection connect(const OrthProjection& p, const Idempotent& q) {
  require_same_size(p.matrix(), q.matrix());
  const std::size_t n = p.size();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix& pm = p.matrix();
  const ComplexMatrix& qm = q.matrix();

  const double distance = op_norm(pm - qm);
  if (distance >= 1.0 - 1e-10) {
    throw DomainError(ErrorKind::TooFar, "|p - q| = " + std::to_string(distance));
  }

  const ComplexMatrix pc = p.complement();
  const ComplexMatrix qc = complement(qm);
  const ComplexMatrix v1 = qm * pm + qc * pc;
  const ComplexMatrix v2 = pm * qm + pc * qc;
  const double norm_gap = std::max(std::abs(op_norm(v1 - id) - distance),
                                   std::abs(op_norm(v2 - id) - distance));

  const ComplexMatrix log1 = mat_log_near_identity(v1);
  const ComplexMatrix log2 = mat_log_near_identity(v2);
  const ComplexMatrix x = log1 - cond_expectation(log1, p);
  ComplexMatrix alt = log1 - log2;
  alt *= 0.5;

  const ComplexMatrix moved = mat_exp(x) * pm * mat_exp(-x);
  return {TangentVector(p.as_idempotent(), x), distance, norm_gap, op_norm(x - alt),
          op_norm(moved - qm)};
}

Geodesic short_geodesic_P(const OrthProjection& p, const OrthProjection& r) {
  const Connection c = connect(p, r.as_idempotent());
  ComplexMatrix v = c.velocity();
  return Geodesic(TangentVector::horizontal(p, hermitian_part(v)));
}

UnigeoReport unigeo_check(const OrthProjection& p, const OrthProjection& r,
                          const PositiveElement& a, Tolerance tol) {
  require_same_size(p.matrix(), r.matrix());
  require_same_size(p.matrix(), a.matrix());
  const ComplexMatrix& am = a.matrix();
  const double commute_scale = tol.scaled(a.norm());
  if (op_norm(p.matrix() * am - am * p.matrix()) > commute_scale ||
      op_norm(r.matrix() * am - am * r.matrix()) > commute_scale) {
    throw DomainError(ErrorKind::HypothesesViolated, "p or r does not commute with a");
  }

  UnigeoReport report{ComplexMatrix(p.size())};
  const ComplexMatrix diff = p.matrix() - r.matrix();
  report.norm_gap = std::abs(op_norm(diff) - a_norm(diff, a));
  const Connection c = connect(p, r.as_idempotent());
  report.generator = c.generator.matrix();
  const double xn = op_norm(report.generator);
  report.commutation_defect = op_norm(report.generator * am - am * report.generator);
  report.length_gap = std::abs(xn - a_norm(report.generator, a));
  report.pass = report.norm_gap <= tol.atol &&
                report.commutation_defect <= tol.atol * std::max(1.0, a.norm() * xn) &&
                report.length_gap <= tol.atol;
  return report;
}

std::string_view to_string(Feasibility f) noexcept {
  switch (f) {
    case Feasibility::Feasible: return "feasible";
    case Feasibility::Infeasible: return "infeasible";
    case Feasibility::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

namespace {

CompatibilityVerdict decide(const OrthProjection& p, const Idempotent& q, std::uint64_t seed,
                            const FeasibilityOptions& opts, feasibility::ConstraintSign sign) {
  require_same_size(p.matrix(), q.matrix());
  const Connection conn = connect(p, q);
  const ComplexMatrix& x = conn.generator.matrix();

  const feasibility::SearchResult found = feasibility::search(p, x, sign, seed, opts);
  CompatibilityVerdict v;
  v.status = found.status;
  v.certificate = found.best_min_eig;
  v.nullspace_dim = found.nullspace_dim;
  v.exact_certificate = found.exact;
  v.generator = x;
  v.restarts_used = found.restarts_used;
  if (found.status != Feasibility::Feasible) return v;

  const ComplexMatrix& a = *found.witness;
  const double an = op_norm(a);
  const double xn = op_norm(x);
  const double s = sign == feasibility::ConstraintSign::AntiSelfadjoint ? 1.0 : -1.0;
  const ComplexMatrix xa = x.adjoint();
  v.constraint_residual = xn == 0.0 ? 0.0 : op_norm(a * x + s * (xa * a)) / (an * xn);
  v.block_residual = op_norm(a - cond_expectation(a, p));

  const ComplexMatrix& pm = p.matrix();
  const ComplexMatrix& qm = q.matrix();
  v.p_selfadjoint_defect = op_norm(a * pm - pm.adjoint() * a) / an;
  v.q_selfadjoint_defect = op_norm(a * qm - qm.adjoint() * a) / (an * std::max(1.0, op_norm(qm)));

  // Blocks b = a restricted to range(p), c = inverse of a on range(1-p).
  const ComplexMatrix pc = p.complement();
  const ComplexMatrix b = pm * a * pm;
  const ComplexMatrix c = corner_inverse(a, pc);
  const ComplexMatrix corner = pm * x * pc;
  const ComplexMatrix lower = pc * x * pm;
  const ComplexMatrix predicted = c * corner.adjoint() * b;
  const double scale = op_norm(c) * op_norm(corner) * op_norm(b) + op_norm(lower);
  v.condition3_residual =
      scale == 0.0 ? 0.0 : op_norm(lower + s * predicted) / scale;

  v.witness.emplace(a);
  return v;
}

}  // namespace

CompatibilityVerdict compatible_star(const OrthProjection& p, const Idempotent& q,
                                     std::uint64_t seed, FeasibilityOptions opts) {
  return decide(p, q, seed, opts, feasibility::ConstraintSign::AntiSelfadjoint);
}

CompatibilityVerdict omega_fiber_star(const OrthProjection& p, const Idempotent& q,
                                      std::uint64_t seed, FeasibilityOptions opts) {
  CompatibilityVerdict v = decide(p, q, seed, opts, feasibility::ConstraintSign::Selfadjoint);
  if (v.status != Feasibility::Feasible) return v;

  // Retraction for the star #a: move to the *-picture by x -> a^{1/2} x a^{-1/2},
  // retract there, move back.
  const PositiveElement& a = *v.witness;
  const Idempotent moved(star_isomorphism_inverse(q.matrix(), a));
  const ComplexMatrix rho_star = 2.0 * omega(moved).matrix() - ComplexMatrix::identity(p.size());
  const ComplexMatrix rho = star_isomorphism(rho_star, a);
  const ComplexMatrix target = 2.0 * p.matrix() - ComplexMatrix::identity(p.size());
  v.retraction_residual = op_norm(rho - target);
  return v;
}

}  // namespace oblique
