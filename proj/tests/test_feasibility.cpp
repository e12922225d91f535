#include <cmath>

#include "oblique/feasibility.hpp"
#include "oblique/geodesics.hpp"
#include "oblique/random.hpp"
#include "support.hpp"

using namespace oblique;
using testing::dist;
using testing::error_kind;

namespace {

const OrthProjection kP(ComplexMatrix::diagonal({1, 0}));

Idempotent conjugated(const ComplexMatrix& x) {
  return Idempotent(mat_exp(x) * kP.matrix() * mat_exp(-x));
}

// Independent check of a feasible verdict: p and q both a-selfadjoint and
// a block diagonal.
void check_witness(const CompatibilityVerdict& v, const OrthProjection& p, const Idempotent& q) {
  REQUIRE(v.status == Feasibility::Feasible);
  REQUIRE(v.witness.has_value());
  const ComplexMatrix& a = v.witness->matrix();
  const double an = op_norm(a);
  CHECK(v.witness->matrix().trace().real() == doctest::Approx(double(p.size())).epsilon(1e-12));
  CHECK(dist(a * p.matrix(), p.matrix() * a) <= 1e-8 * an);
  CHECK(dist(a * q.matrix(), q.matrix().adjoint() * a) <= 1e-8 * an * op_norm(q.matrix()));
}

}  // namespace

TEST_CASE("block diagonal Hermitian basis") {
  InstanceGenerator gen(91);
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t k = 1; k < n; ++k) {
      const OrthProjection p = gen.projection(n, k);
      const auto basis = feasibility::block_diagonal_hermitian_basis(p);
      CHECK(basis.size() == k * k + (n - k) * (n - k));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(dist(basis[i], basis[i].adjoint()) < 1e-14);
        CHECK(dist(cond_expectation(basis[i], p), basis[i]) < 1e-13);
        for (std::size_t j = 0; j <= i; ++j) {
          const double ip = (basis[i].adjoint() * basis[j]).trace().real();
          CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).scale(1).epsilon(1e-12));
        }
      }
    }
}

TEST_CASE("constraint nullspace satisfies the constraint") {
  InstanceGenerator gen(92);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 2 + k % 4;
    const CompatInstance inst = gen.compat_instance(n, k % 2 == 1);
    const auto sign = k % 2 == 1 ? feasibility::ConstraintSign::Selfadjoint
                                 : feasibility::ConstraintSign::AntiSelfadjoint;
    const double s = k % 2 == 1 ? -1.0 : 1.0;
    const auto basis = feasibility::block_diagonal_hermitian_basis(inst.p);
    const auto null = feasibility::constraint_nullspace(basis, inst.generator, sign);
    REQUIRE(!null.empty());
    const double xn = op_norm(inst.generator);
    for (const ComplexMatrix& a : null) {
      CHECK(op_norm(a * inst.generator + s * (inst.generator.adjoint() * a)) < 1e-10 * (1 + xn));
    }
    // The constructed witness lies in the span of the nullspace.
    ComplexMatrix w = inst.witness.matrix();
    ComplexMatrix rest = w;
    for (const ComplexMatrix& a : null) {
      const double c = (a.adjoint() * w).trace().real();
      rest -= c * a;
    }
    CHECK(frobenius_norm(rest) < 1e-8 * frobenius_norm(w));
  }
}

TEST_CASE("compat: q = p is compatible with the identity") {
  InstanceGenerator gen(93);
  const OrthProjection p = gen.projection(3, 1);
  for (bool fiber : {false, true}) {
    const CompatibilityVerdict v =
        fiber ? omega_fiber_star(p, p.as_idempotent()) : compatible_star(p, p.as_idempotent());
    REQUIRE(v.status == Feasibility::Feasible);
    CHECK(dist(v.witness->matrix(), ComplexMatrix::identity(3)) < 1e-8);
  }
}

TEST_CASE("compat: straight lines in the affine chart are never compatible") {
  for (int k = 1; k <= 9; ++k) {
    const double t = 0.1 * k;
    const Idempotent q(ComplexMatrix{{1, t}, {0, 0}});
    const CompatibilityVerdict v = compatible_star(kP, q);
    CHECK(v.status == Feasibility::Infeasible);
    // Only diag(0, 1) survives the constraint: positive semidefinite, never definite.
    CHECK(v.exact_certificate);
    CHECK(v.nullspace_dim == 1);
    CHECK(v.certificate == doctest::Approx(0.0).scale(1).epsilon(1e-14));
    CHECK(dist(v.generator, ComplexMatrix{{0, -t}, {0, 0}}) < 1e-14);
    CHECK(omega_fiber_star(kP, q).status == Feasibility::Infeasible);
  }
}

TEST_CASE("compat: the hand-built instance") {
  // x = 0.2, b = 2, c = 3 give y = -c x* b = -1.2.
  const ComplexMatrix x{{0, 0.2}, {-1.2, 0}};
  const PositiveElement w(ComplexMatrix::diagonal({2, 1.0 / 3.0}));
  CHECK(dist(a_adjoint(x, w), -x) < 1e-15);
  const Idempotent far = conjugated(x);
  CHECK(is_a_selfadjoint(far.matrix(), w));
  CHECK(is_a_selfadjoint(kP.matrix(), w));
  // This q sits outside the unit ball around p, where the log construction stops.
  CHECK(dist(far.matrix(), kP.matrix()) > 1.0);
  CHECK(error_kind([&] { compatible_star(kP, far); }) == ErrorKind::TooFar);

  // Halving X keeps the same witness, since the constraint is linear in X.
  const ComplexMatrix half = 0.5 * x;
  const Idempotent q = conjugated(half);
  CHECK(dist(q.matrix(), kP.matrix()) < 1.0);
  const CompatibilityVerdict v = compatible_star(kP, q);
  check_witness(v, kP, q);
  CHECK(dist(v.witness->matrix(), ComplexMatrix::diagonal({12.0 / 7.0, 2.0 / 7.0})) < 1e-8);
  CHECK(dist(v.generator, half) < 1e-10);
  CHECK(v.condition3_residual < 1e-8);
}

TEST_CASE("fiber variant: the hand-built mirror instance") {
  const ComplexMatrix x{{0, 0.1}, {0.6, 0}};
  const Idempotent q = conjugated(x);
  REQUIRE(dist(q.matrix(), kP.matrix()) < 1.0);
  const CompatibilityVerdict v = omega_fiber_star(kP, q);
  REQUIRE(v.status == Feasibility::Feasible);
  CHECK(dist(v.witness->matrix(), ComplexMatrix::diagonal({12.0 / 7.0, 2.0 / 7.0})) < 1e-8);
  CHECK(v.retraction_residual < 1e-7);
  // The unflipped search finds nothing here.
  CHECK(compatible_star(kP, q).status != Feasibility::Feasible);
}

TEST_CASE("compat: constructed instances come back feasible") {
  InstanceGenerator gen(94);
  int feasible = 0, infeasible = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 3;
    const CompatInstance inst = gen.compat_instance(n, false);
    const CompatibilityVerdict v = compatible_star(inst.p, inst.q, k);
    if (v.status == Feasibility::Infeasible) ++infeasible;
    if (v.status != Feasibility::Feasible) continue;
    ++feasible;
    check_witness(v, inst.p, inst.q);
    CHECK(v.constraint_residual <= 1e-8);
    CHECK(v.block_residual <= 1e-8);
    CHECK(v.condition3_residual <= 1e-8);
  }
  CHECK(feasible >= 98);
  CHECK(infeasible == 0);
}

TEST_CASE("fiber variant: constructed mirror instances come back feasible") {
  InstanceGenerator gen(95);
  int feasible = 0, infeasible = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 3;
    const CompatInstance inst = gen.compat_instance(n, true);
    const CompatibilityVerdict v = omega_fiber_star(inst.p, inst.q, k);
    if (v.status == Feasibility::Infeasible) ++infeasible;
    if (v.status != Feasibility::Feasible) continue;
    ++feasible;
    CHECK(v.constraint_residual <= 1e-8);
    CHECK(v.block_residual <= 1e-8);
    CHECK(v.condition3_residual <= 1e-8);
    CHECK(v.retraction_residual <= 1e-7);
  }
  CHECK(feasible >= 98);
  CHECK(infeasible == 0);
}

TEST_CASE("the two sign constraints meet only degenerately") {
  InstanceGenerator gen(96);
  FeasibilityOptions light;
  light.restarts = 4;
  light.planes = 8;
  light.angles = 36;
  for (int k = 0; k < 10; ++k) {
    const CompatInstance inst = gen.compat_instance(2 + k % 2, false);
    const CompatibilityVerdict v = omega_fiber_star(inst.p, inst.q, k, light);
    if (v.status != Feasibility::Feasible) continue;
    const ComplexMatrix& a = v.witness->matrix();
    const ComplexMatrix& x = v.generator;
    CHECK(op_norm(a * x + x.adjoint() * a) > 1e-8 * op_norm(a) * op_norm(x));
  }
}

TEST_CASE("compat verdicts are deterministic in the seed") {
  InstanceGenerator gen(97);
  const CompatInstance inst = gen.compat_instance(4, false);
  const CompatibilityVerdict a = compatible_star(inst.p, inst.q, 5);
  const CompatibilityVerdict b = compatible_star(inst.p, inst.q, 5);
  REQUIRE(a.status == b.status);
  REQUIRE(a.witness.has_value() == b.witness.has_value());
  if (a.witness) CHECK(a.witness->matrix() == b.witness->matrix());
  CHECK(a.certificate == b.certificate);
}

TEST_CASE("compat rejects far pairs") {
  CHECK(error_kind([] { compatible_star(kP, Idempotent(ComplexMatrix::diagonal({0, 1}))); }) ==
        ErrorKind::TooFar);
  CHECK(error_kind([] { omega_fiber_star(kP, Idempotent(ComplexMatrix::diagonal({0, 1}))); }) ==
        ErrorKind::TooFar);
}
