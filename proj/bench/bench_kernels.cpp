// Serial vs OpenMP timings: the matrix product kernel and the check-suite
// battery. Usage: bench_kernels [battery_cases]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "oblique/battery.hpp"
#include "oblique/kernels.hpp"
#include "oblique/random.hpp"

using namespace oblique;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t cases = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 20;
  std::printf("threads available: %d\n\n", kernels::max_threads());

  std::printf("%6s %12s %12s %8s\n", "n", "serial ms", "parallel ms", "speedup");
  InstanceGenerator gen(1);
  for (std::size_t n : {16u, 48u, 96u, 192u, 384u}) {
    const ComplexMatrix a = gen.gaussian(n), b = gen.gaussian(n);
    ComplexMatrix c(n);
    const int reps = n <= 96 ? 20 : 3;
    const double ts =
        best_of(reps, [&] { kernels::multiply_serial(a.data(), b.data(), c.data(), n); });
    const double tp =
        best_of(reps, [&] { kernels::multiply_parallel(a.data(), b.data(), c.data(), n); });
    std::printf("%6zu %12.3f %12.3f %8.2f\n", n, 1e3 * ts, 1e3 * tp, ts / tp);
  }

  std::printf("\nbattery, %zu cases\n", cases);
  std::printf("%6s %12s %12s %8s\n", "n", "serial s", "parallel s", "speedup");
  for (std::size_t n : {2u, 4u}) {
    const double ts = best_of(1, [&] { battery::run_serial(n, 3, cases); });
    const double tp = best_of(1, [&] { battery::run(n, 3, cases); });
    std::printf("%6zu %12.3f %12.3f %8.2f\n", n, ts, tp, ts / tp);
  }
  return 0;
}
