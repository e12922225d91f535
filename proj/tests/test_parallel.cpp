#include <vector>

#include "oblique/battery.hpp"
#include "oblique/kernels.hpp"
#include "oblique/random.hpp"
#include "support.hpp"

using namespace oblique;

TEST_CASE("parallel product matches the serial loop") {
  InstanceGenerator gen(111);
  for (std::size_t n : {1u, 5u, 47u, 48u, 64u, 97u}) {
    const ComplexMatrix a = gen.gaussian(n), b = gen.gaussian(n);
    ComplexMatrix c1(n), c2(n), c3(n);
    kernels::multiply_serial(a.data(), b.data(), c1.data(), n);
    kernels::multiply(a.data(), b.data(), c2.data(), n);
    kernels::multiply_parallel(a.data(), b.data(), c3.data(), n, 3);
    // Each entry is the same dot product in the same order.
    CHECK(c1 == c2);
    CHECK(c1 == c3);
    if (n <= 48) CHECK(testing::dist(c1, oracle::mul(a, b)) < 1e-12 * n);
  }
}

TEST_CASE("battery: parallel and serial runs agree exactly") {
  const auto par = battery::run(3, 5, 6);
  const auto ser = battery::run_serial(3, 5, 6);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].index == i);
    CHECK(par[i].seed == ser[i].seed);
    REQUIRE(par[i].checks.size() == ser[i].checks.size());
    for (std::size_t k = 0; k < par[i].checks.size(); ++k) {
      CHECK(par[i].checks[k].name == ser[i].checks[k].name);
      CHECK(par[i].checks[k].value == ser[i].checks[k].value);
    }
  }
  const battery::Summary s = battery::summarize(par);
  CHECK(s.pass);
  CHECK(s.failures == 0);
}

TEST_CASE("battery: a case does not depend on the batch size") {
  const auto small = battery::run_serial(2, 17, 2);
  const battery::CaseReport lone = battery::run_case(2, 17, 1);
  REQUIRE(small[1].checks.size() == lone.checks.size());
  for (std::size_t k = 0; k < lone.checks.size(); ++k)
    CHECK(small[1].checks[k].value == lone.checks[k].value);
}
