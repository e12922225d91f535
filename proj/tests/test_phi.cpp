#include <array>
#include <cmath>
#include <functional>

#include "oblique/geodesics.hpp"
#include "oblique/phi.hpp"
#include "oblique/random.hpp"
#include "support.hpp"

using namespace oblique;
using testing::dist;
using testing::error_kind;

namespace {

const OrthProjection kP(ComplexMatrix::diagonal({1, 0}));
const ComplexMatrix kA{{2, 1}, {1, 1}};

// Positive element whose phi over p is p + x: blocks a1, a1 x, x* a1, a3 with
// a3 - x* a1 x positive.
PositiveElement fiber_element(InstanceGenerator& g, const OrthProjection& p,
                              const ComplexMatrix& x) {
  const std::size_t n = p.size();
  const ComplexMatrix& pm = p.matrix();
  const ComplexMatrix qm = p.complement();
  const ComplexMatrix a1 = pm * g.positive(n, 10).matrix() * pm;
  const ComplexMatrix gap = qm * g.positive(n, 10).matrix() * qm;
  const ComplexMatrix a2 = a1 * x;
  const ComplexMatrix a3 = x.adjoint() * a1 * x + gap;
  return PositiveElement(hermitian_part(a1 + a2 + a2.adjoint() + a3));
}

double fd_error(const std::function<ComplexMatrix(double)>& f, const ComplexMatrix& d,
                double eps) {
  ComplexMatrix diff = f(eps) - f(-eps);
  diff *= 1.0 / (2.0 * eps);
  return op_norm(diff - d);
}

// Second-order decay: the constant fitted at 1e-3 predicts the error at 1e-4
// and bounds it at 1e-5, up to a rounding allowance.
void check_second_order(const std::function<ComplexMatrix(double)>& f, const ComplexMatrix& d,
                        double magnitude) {
  const double c = fd_error(f, d, 1e-3) / 1e-6;
  const double e4 = fd_error(f, d, 1e-4);
  const double e5 = fd_error(f, d, 1e-5);
  const double floor4 = 1e-15 * (1 + magnitude) / 1e-4;
  const double floor5 = 1e-15 * (1 + magnitude) / 1e-5;
  CHECK(std::abs(e4 - c * 1e-8) <= 0.25 * c * 1e-8 + floor4);
  CHECK(e5 <= 2 * c * 1e-10 + floor5);
}

}  // namespace

TEST_CASE("phi fixed cases") {
  InstanceGenerator gen(41);
  const OrthProjection p = gen.projection(4, 2);
  CHECK(dist(phi(p, PositiveElement::identity(4)).matrix(), p.matrix()) < 1e-14);

  const ComplexMatrix commuting = cond_expectation(gen.positive(4, 100).matrix(), p);
  CHECK(dist(phi(p, PositiveElement(hermitian_part(commuting))).matrix(), p.matrix()) < 1e-12);

  const PositiveElement a(kA);
  const ComplexMatrix want{{1, 0.5}, {0, 0}};
  for (const Idempotent& q : {phi(kP, a), phi_block(kP, a), phi_alt(kP, a)}) {
    const ComplexMatrix& m = q.matrix();
    CHECK(dist(m, want) < 1e-14);
    CHECK(dist(m * m, m) < 1e-14);
    CHECK(dist(kA * m, m.adjoint() * kA) < 1e-14);
    CHECK(dist(m * kP.matrix(), kP.matrix()) < 1e-14);
    CHECK(dist(kP.matrix() * m, m) < 1e-14);
  }
}

TEST_CASE("phi characterization, norm bound and formula agreement") {
  InstanceGenerator gen(42);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + k % 7;
    const OrthProjection p = gen.projection(n);
    const PositiveElement a = gen.positive(n, 1e4);
    const ComplexMatrix q = phi(p, a).matrix();
    const ComplexMatrix& pm = p.matrix();
    const double qn = op_norm(q);
    CHECK(dist(q * q, q) <= 1e-9 * (1 + qn * qn));
    CHECK(dist(q * pm, pm) <= 1e-9 * (1 + qn));
    CHECK(dist(pm * q, q) <= 1e-9 * (1 + qn));
    CHECK(dist(a.matrix() * q, q.adjoint() * a.matrix()) <= 1e-9 * a.norm() * (1 + qn));
    CHECK(qn <= 2 * a.norm() * a.inv_norm() + 1e-9);
    CHECK(dist(phi_block(p, a).matrix(), q) <= 1e-8 * (1 + qn));
    CHECK(dist(phi_alt(p, a).matrix(), q) <= 1e-8 * (1 + qn));
    CHECK(dist(orth_from_idempotent(Idempotent(q)).matrix(), pm) <= 1e-9 * (1 + qn));
  }
}

TEST_CASE("phi series around the identity") {
  InstanceGenerator gen(43);
  const OrthProjection p = gen.projection(3, 1);
  CHECK(dist(phi_series_at_identity(p, ComplexMatrix::zero(3)).q.matrix(), p.matrix()) == 0.0);
  // p h = 0: every term vanishes.
  const ComplexMatrix h0 = 0.5 * (p.complement() * gen.hermitian(3, 1.0) * p.complement());
  CHECK(dist(phi_series_at_identity(p, h0).q.matrix(), p.matrix()) < 1e-15);

  const ComplexMatrix h{{0, 0.3}, {0.3, 0}};
  const SeriesResult s = phi_series_at_identity(kP, h);
  CHECK(dist(s.q.matrix(), ComplexMatrix{{1, 0.3}, {0, 0}}) < 1e-15);
  const PositiveElement shifted(ComplexMatrix::identity(2) + h);
  CHECK(dist(s.q.matrix(), phi(kP, shifted).matrix()) < 1e-12);

  CHECK(error_kind([] { phi_series_at_identity(kP, ComplexMatrix{{0, 1.2}, {1.2, 0}}); }) ==
        ErrorKind::HTooLarge);
  CHECK(error_kind([&] {
          phi_series_at_identity(kP, ComplexMatrix{{0.5, 0.4}, {0.4, 0.2}}, {3, 1e-15});
        }) == ErrorKind::NoConvergence);
}

TEST_CASE("phi series stays within its geometric bound") {
  InstanceGenerator gen(44);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 2 + k % 5;
    const double r = std::array<double, 3>{0.1, 0.5, 0.9}[k % 3];
    const OrthProjection p = gen.projection(n);
    const ComplexMatrix h = gen.hermitian(n, r);
    const SeriesResult s = phi_series_at_identity(p, h, {1000, 1e-15});
    const PositiveElement shifted(ComplexMatrix::identity(n) + h);
    CHECK(dist(s.q.matrix(), phi(p, shifted).matrix()) <= s.apriori_bound + 1e-12);
  }
}

TEST_CASE("phi series around a general positive element") {
  InstanceGenerator gen(45);
  const OrthProjection p = gen.projection(4, 2);
  const PositiveElement a = gen.positive(4, 100);
  CHECK(dist(phi_series_at(p, a, ComplexMatrix::zero(4)).q.matrix(), phi(p, a).matrix()) < 1e-12);

  const ComplexMatrix h = gen.hermitian(4, 0.4);
  CHECK(dist(phi_series_at(p, PositiveElement::identity(4), h).q.matrix(),
             phi_series_at_identity(p, h).q.matrix()) < 1e-12);

  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 6;
    const OrthProjection pk = gen.projection(n);
    const PositiveElement base = gen.positive(n, 100);
    const ComplexMatrix hk = gen.hermitian(n, 0.4 / base.inv_norm());
    const Idempotent exact = phi(pk, PositiveElement(base.matrix() + hk));
    const SeriesResult s = phi_series_at(pk, base, hk, {1000, 1e-15});
    CHECK(dist(s.q.matrix(), exact.matrix()) <= 1e-8 * (1 + op_norm(exact.matrix())));
  }
}

TEST_CASE("tangent of phi at the identity") {
  InstanceGenerator gen(46);
  const OrthProjection p = gen.projection(4, 2);
  CHECK(max_abs(tangent_phi_p_at_identity(p, ComplexMatrix::zero(4))) == 0.0);
  const ComplexMatrix commuting = cond_expectation(gen.hermitian(4, 1.0), p);
  CHECK(max_abs(tangent_phi_p_at_identity(p, commuting)) < 1e-15);
  CHECK(tangent_phi_p_at_identity(kP, ComplexMatrix{{0, 1}, {1, 0}}) ==
        ComplexMatrix{{0, 1}, {0, 0}});

  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 2 + k % 5;
    const OrthProjection pk = gen.projection(n);
    const ComplexMatrix dir = gen.hermitian(n, 1.0);
    const ComplexMatrix id = ComplexMatrix::identity(n);
    check_second_order([&](double t) { return phi(pk, PositiveElement(id + t * dir)).matrix(); },
                       tangent_phi_p_at_identity(pk, dir), 1.0);
  }
}

TEST_CASE("conjugator fixed cases") {
  InstanceGenerator gen(47);
  const OrthProjection p = gen.projection(3, 1);
  CHECK(dist(conjugator_u(p, PositiveElement::identity(3)), ComplexMatrix::identity(3)) < 1e-15);
  const ComplexMatrix commuting = hermitian_part(cond_expectation(gen.positive(3, 10).matrix(), p));
  CHECK(dist(conjugator_u(p, PositiveElement(commuting)), ComplexMatrix::identity(3)) < 1e-13);

  const ComplexMatrix u = conjugator_u(kP, PositiveElement(kA));
  CHECK(dist(u, ComplexMatrix{{1, -0.5}, {0, 1}}) < 1e-15);
  CHECK(dist(u * kP.matrix() * inverse(u), ComplexMatrix{{1, 0.5}, {0, 0}}) < 1e-15);

  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 2 + k % 5;
    const OrthProjection pk = gen.projection(n);
    const PositiveElement a = gen.positive(n, 100);
    const ComplexMatrix uk = conjugator_u(pk, a);
    const ComplexMatrix q = phi(pk, a).matrix();
    CHECK(dist(uk * pk.matrix() * inverse(uk), q) < 1e-10 * (1 + op_norm(q)));
  }
}

TEST_CASE("fiber membership") {
  InstanceGenerator gen(48);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 5;
    const OrthProjection p = gen.projection(n);
    const PositiveElement a = gen.positive(n, 100);
    CHECK(fiber_contains(phi(p, a), p, a));

    const ComplexMatrix x = gen.corner(p, gen.uniform(0.1, 3));
    const PositiveElement built = fiber_element(gen, p, x);
    const Idempotent q(p.matrix() + x);
    CHECK(fiber_contains(q, p, built));
    CHECK(dist(phi(p, built).matrix(), q.matrix()) < 1e-9 * built.condition() * (1 + op_norm(x)));
  }
  // p itself lies over (p, a) only when a commutes with p.
  CHECK_FALSE(fiber_contains(kP.as_idempotent(), kP, PositiveElement(kA)));
}

TEST_CASE("cross section fixed cases") {
  InstanceGenerator gen(49);
  const OrthProjection p = gen.projection(3, 2);
  const FiberPoint fp = cross_section(p.as_idempotent());
  CHECK(dist(fp.p.matrix(), p.matrix()) < 1e-13);
  CHECK(dist(fp.a.matrix(), ComplexMatrix::identity(3)) < 1e-13);

  const Idempotent q(ComplexMatrix{{1, 1}, {0, 0}});
  const FiberPoint fq = cross_section(q);
  CHECK(dist(fq.p.matrix(), kP.matrix()) < 1e-14);
  const ComplexMatrix eps{{1, 2}, {0, -1}};
  CHECK(dist(fq.a.matrix(), oracle::sqrt_pd(oracle::mul(oracle::adj(eps), eps))) < 1e-12);
  CHECK(dist(phi(fq.p, fq.a).matrix(), q.matrix()) < 1e-9);

  const FiberPoint f0 = cross_section(Idempotent(ComplexMatrix::zero(2)));
  CHECK(max_abs(f0.p.matrix()) == 0.0);
  CHECK(dist(f0.a.matrix(), ComplexMatrix::identity(2)) < 1e-14);
}

TEST_CASE("cross section is a section on seeded idempotents") {
  InstanceGenerator gen(50);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 7;
    const Idempotent q = gen.oblique_idempotent(n, 10.0);
    const FiberPoint fp = cross_section(q);
    CHECK(dist(phi(fp.p, fp.a).matrix(), q.matrix()) <= 1e-9 * (1 + op_norm(q.matrix())));
    CHECK(fiber_contains(q, fp.p, fp.a));
  }
}

TEST_CASE("tangent of phi along P") {
  InstanceGenerator gen(51);
  const OrthProjection p = gen.projection(4, 2);
  const PositiveElement a = gen.positive(4, 10);
  CHECK(max_abs(tangent_phi_a(p, a, ComplexMatrix::zero(4)).full) == 0.0);
  const ComplexMatrix x = gen.horizontal_tangent(p, 1.0);
  CHECK(dist(tangent_phi_a(p, PositiveElement::identity(4), x).full, x) < 1e-14);
  CHECK(error_kind([&] { tangent_phi_a(p, a, ComplexMatrix::identity(4)); }) ==
        ErrorKind::NotTangent);

  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 2 + k % 5;
    const OrthProjection pk = gen.projection(n);
    const PositiveElement ak = gen.positive(n, 10);
    const ComplexMatrix xk = gen.horizontal_tangent(pk, 1.0);
    const Geodesic curve = geodesic(pk.as_idempotent(), xk);
    const TangentImage image = tangent_phi_a(pk, ak, xk);
    check_second_order(
        [&](double t) {
          const Idempotent moved = curve.eval(t);
          return phi(OrthProjection(hermitian_part(moved.matrix())), ak).matrix();
        },
        image.full, op_norm(phi(pk, ak).matrix()));
    const double yn = a_norm(image.corner, ak);
    CHECK(a_norm(image.full, ak) == doctest::Approx(yn).epsilon(1e-9));
  }
}
