#include <cmath>

#include "oblique/geodesics.hpp"
#include "oblique/random.hpp"
#include "support.hpp"

using namespace oblique;
using testing::dist;
using testing::error_kind;

namespace {

const OrthProjection kP(ComplexMatrix::diagonal({1, 0}));
const ComplexMatrix kSwap{{0, 1}, {1, 0}};

}  // namespace

TEST_CASE("tangent vector validation") {
  CHECK_NOTHROW(TangentVector(kP.as_idempotent(), ComplexMatrix{{0, 1}, {0, 0}}));
  CHECK(error_kind([] { TangentVector(kP.as_idempotent(), ComplexMatrix::identity(2)); }) ==
        ErrorKind::NotTangent);
  CHECK(error_kind([] { TangentVector::horizontal(kP, ComplexMatrix{{0, 1}, {0, 0}}); }) ==
        ErrorKind::NotTangent);
}

TEST_CASE("geodesic fixed cases") {
  const Geodesic still = geodesic(kP.as_idempotent(), ComplexMatrix::zero(2));
  for (double t : {0.0, 0.5, 3.0}) CHECK(still.eval(t).matrix() == kP.matrix());
  CHECK(geodesic_length(still, 0, 1) == 0.0);

  const double theta = 0.4;
  const Geodesic rot = geodesic(kP.as_idempotent(), theta * kSwap);
  for (double t : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    CHECK(dist(rot.eval(t).matrix(), oracle::line(t * theta)) < 1e-14);
  }
  CHECK(rot.eval(0.0).matrix() == kP.matrix());
  CHECK(geodesic_length(rot, 0, 1) == doctest::Approx(theta).epsilon(1e-14));
  CHECK(geodesic_length(rot, PositiveElement::identity(2), 0, 1) ==
        doctest::Approx(geodesic_length(rot, 0, 1)).epsilon(1e-14));

  InstanceGenerator gen(81);
  const OrthProjection p = gen.projection(4, 2);
  const ComplexMatrix x = gen.corner(p, 1.7);
  const ComplexMatrix via_exp = mat_exp(-x) * p.matrix() * mat_exp(x);
  const ComplexMatrix end = geodesic(p.as_idempotent(), x).eval(1.0).matrix();
  CHECK(dist(end, p.matrix() + x) < 1e-10);
  CHECK(dist(end, via_exp) < 1e-10);
}

TEST_CASE("geodesics stay in the idempotents") {
  InstanceGenerator gen(82);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 7;
    const OrthProjection p = gen.projection(n);
    ComplexMatrix x = gen.corner(p, 1.0) + p.complement() * gen.gaussian(n) * p.matrix();
    x *= gen.uniform(0.1, 1.0) / op_norm(x);
    const Geodesic g = geodesic(p.as_idempotent(), x);
    for (double t : {0.25, 0.5, 0.75, 1.0}) {
      const ComplexMatrix m = g.eval(t).matrix();
      const double mn = op_norm(m);
      CHECK(dist(m * m, m) <= 1e-9 * (1 + mn * mn));
    }
  }
}

TEST_CASE("connect fixed cases") {
  InstanceGenerator gen(83);
  const OrthProjection p = gen.projection(3, 1);
  const Connection same = connect(p, p.as_idempotent());
  CHECK(max_abs(same.generator.matrix()) < 1e-15);

  for (double t : {-0.7, 0.3, 0.9}) {
    const Idempotent q(ComplexMatrix{{1, t}, {0, 0}});
    const Connection c = connect(kP, q);
    CHECK(dist(c.generator.matrix(), ComplexMatrix{{0, -t}, {0, 0}}) < 1e-15);
    const ComplexMatrix x = c.generator.matrix();
    CHECK(dist(mat_exp(x) * kP.matrix() * mat_exp(-x), q.matrix()) < 1e-15);
    CHECK(c.reproduction_error < 1e-15);
  }

  // Two lines at angle theta: the connecting tangent is the rotation velocity.
  const double theta = 0.6;
  const Connection c = connect(kP, Idempotent(oracle::line(theta)));
  const ComplexMatrix v = c.velocity();
  CHECK(dist(v, v.adjoint()) < 1e-14);
  CHECK(dist(v, theta * kSwap) < 1e-12);
  CHECK(dist(c.generator.matrix(), -theta * ComplexMatrix{{0, 1}, {-1, 0}}) < 1e-12);

  CHECK(error_kind([] { connect(kP, Idempotent(ComplexMatrix::diagonal({0, 1}))); }) ==
        ErrorKind::TooFar);
  CHECK(error_kind([] { connect(kP, Idempotent(ComplexMatrix{{1, 1.5}, {0, 0}})); }) ==
        ErrorKind::TooFar);
}

TEST_CASE("connect inverts geodesic evaluation") {
  InstanceGenerator gen(84);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 7;
    const OrthProjection p = gen.projection(n);
    const ComplexMatrix x = gen.horizontal_tangent(p, gen.uniform(0.05, 1.0));
    const Idempotent end = geodesic(p.as_idempotent(), x).eval(1.0);
    CHECK(dist(connect(p, end).velocity(), x) <= 1e-7);
  }
}

TEST_CASE("connect reproduces q up to distance 0.95") {
  InstanceGenerator gen(85);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 7;
    const OrthProjection p = gen.projection(n);
    const ComplexMatrix x = gen.corner(p, gen.uniform(0.0, 0.95));
    const Idempotent q(p.matrix() + x);
    const Connection c = connect(p, q);
    const double qn = op_norm(q.matrix());
    const ComplexMatrix gx = c.generator.matrix();
    CHECK(dist(mat_exp(gx) * p.matrix() * mat_exp(-gx), q.matrix()) <= 1e-8 * (1 + qn));
    CHECK(c.forms_gap <= 1e-8 * (1 + qn));
    CHECK(c.norm_gap <= 1e-9);
    CHECK(c.distance == doctest::Approx(dist(p.matrix(), q.matrix())).epsilon(1e-12));
  }
}

TEST_CASE("rotation family lengths and distances") {
  for (int k = 1; k <= 20; ++k) {
    const double theta = std::asin(0.95) * k / 20.0;
    const Geodesic g = geodesic(kP.as_idempotent(), theta * kSwap);
    CHECK(geodesic_length(g, 0, 1) == doctest::Approx(theta).epsilon(1e-10));
    const OrthProjection r(oracle::line(theta));
    CHECK(dist(kP.matrix(), r.matrix()) == doctest::Approx(std::sin(theta)).epsilon(1e-10));
    const Geodesic s = short_geodesic_P(kP, r);
    CHECK(geodesic_length(s, 0, 1) == doctest::Approx(theta).epsilon(1e-10));
    CHECK(dist(s.eval(1.0).matrix(), r.matrix()) < 1e-10);
  }
}

TEST_CASE("short geodesics in P") {
  InstanceGenerator gen(86);
  const OrthProjection p = gen.projection(4, 2);
  CHECK(geodesic_length(short_geodesic_P(p, p), 0, 1) < 1e-15);

  const OrthProjection r(oracle::line(M_PI / 6));
  CHECK(dist(kP.matrix(), r.matrix()) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(geodesic_length(short_geodesic_P(kP, r), 0, 1) ==
        doctest::Approx(M_PI / 6).epsilon(1e-12));

  // Two 2x2 rotation blocks in a random basis: the length is the larger angle.
  for (int k = 0; k < 20; ++k) {
    const double t1 = gen.uniform(0.05, 1.2), t2 = gen.uniform(0.05, 1.2);
    ComplexMatrix p0(4), r0(4);
    p0(0, 0) = 1;
    p0(2, 2) = 1;
    const ComplexMatrix l1 = oracle::line(t1), l2 = oracle::line(t2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        r0(i, j) = l1(i, j);
        r0(2 + i, 2 + j) = l2(i, j);
      }
    const ComplexMatrix u = gen.unitary(4);
    const OrthProjection pp(hermitian_part(u * p0 * u.adjoint()));
    const OrthProjection rr(hermitian_part(u * r0 * u.adjoint()));
    const Geodesic g = short_geodesic_P(pp, rr);
    CHECK(geodesic_length(g, 0, 1) == doctest::Approx(std::max(t1, t2)).epsilon(1e-9));
    CHECK(dist(g.eval(1.0).matrix(), rr.matrix()) < 1e-9);
  }
}

TEST_CASE("commuting triples have equal norms and lengths") {
  const OrthProjection r(oracle::line(0.5));
  const UnigeoReport id = unigeo_check(kP, r, PositiveElement::identity(2));
  CHECK(id.norm_gap < 1e-15);
  CHECK(id.commutation_defect < 1e-15);
  CHECK(id.length_gap < 1e-15);
  CHECK(id.pass);

  InstanceGenerator gen(87);
  for (int k = 0; k < 50; ++k) {
    ComplexMatrix p0(4), r0(4), a0(4);
    for (std::size_t b = 0; b < 4; b += 2) {
      const ComplexMatrix l = oracle::line(gen.uniform(0.0, 1.2));
      const double alpha = std::pow(10.0, gen.uniform(-1, 1));
      p0(b, b) = 1;
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r0(b + i, b + j) = l(i, j);
      a0(b, b) = alpha;
      a0(b + 1, b + 1) = alpha;
    }
    const ComplexMatrix u = gen.unitary(4);
    auto conj = [&](const ComplexMatrix& m) { return hermitian_part(u * m * u.adjoint()); };
    const OrthProjection p(conj(p0)), rr(conj(r0));
    const PositiveElement a(conj(a0));
    const UnigeoReport rep = unigeo_check(p, rr, a);
    CHECK(rep.norm_gap <= 1e-9);
    CHECK(rep.commutation_defect <= 1e-9 * std::max(1.0, a.norm() * op_norm(rep.generator)));
    CHECK(rep.length_gap <= 1e-9);
    CHECK(rep.pass);

    const UnigeoReport self = unigeo_check(p, p, a);
    CHECK(self.norm_gap < 1e-12);
    CHECK(self.length_gap < 1e-12);
  }

  CHECK(error_kind([&] {
          unigeo_check(kP, r, PositiveElement(ComplexMatrix{{2, 1}, {1, 1}}));
        }) == ErrorKind::HypothesesViolated);
}
