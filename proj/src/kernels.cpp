#include "oblique/kernels.hpp"

#include <omp.h>

namespace oblique::kernels {

void multiply_serial(std::span<const Complex> a, std::span<const Complex> b,
                     std::span<Complex> c, std::size_t n) {
  // Products written out in real arithmetic: std::complex multiplication
  // carries an inf/nan recovery branch that blocks vectorization.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double re = 0.0, im = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const Complex x = a[i * n + k], y = b[k * n + j];
        re += x.real() * y.real() - x.imag() * y.imag();
        im += x.real() * y.imag() + x.imag() * y.real();
      }
      c[i * n + j] = Complex(re, im);
    }
  }
}

namespace {

// i-k-j order: the inner loop streams rows of b and c. Each row of c is
// owned by exactly one thread.
void multiply_rows(const Complex* __restrict a, const Complex* __restrict b,
                   Complex* __restrict c, std::ptrdiff_t n,
                   bool parallel, int threads) {
#pragma omp parallel for schedule(static) if (parallel) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    // Interleaved re/im view of row i of c and row k of b.
    double* ci = reinterpret_cast<double*>(c + i * n);
    for (std::ptrdiff_t j = 0; j < 2 * n; ++j) ci[j] = 0.0;
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const double ar = a[i * n + k].real(), ai = a[i * n + k].imag();
      const double* bk = reinterpret_cast<const double*>(b + k * n);
      for (std::ptrdiff_t j = 0; j < n; ++j) {
        const double br = bk[2 * j], bi = bk[2 * j + 1];
        ci[2 * j] += ar * br - ai * bi;
        ci[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
}

}  // namespace

void multiply_parallel(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> c, std::size_t n, int threads) {
  const int t = threads > 0 ? threads : omp_get_max_threads();
  multiply_rows(a.data(), b.data(), c.data(), static_cast<std::ptrdiff_t>(n), true, t);
}

void multiply(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> c,
              std::size_t n) {
  // Nested inside an already-parallel region (check-suite runs cases in
  // parallel) we stay serial.
  const bool parallel = n >= kParallelThreshold && !omp_in_parallel();
  if (!parallel) {
    multiply_rows(a.data(), b.data(), c.data(), static_cast<std::ptrdiff_t>(n), false, 1);
    return;
  }
  multiply_rows(a.data(), b.data(), c.data(), static_cast<std::ptrdiff_t>(n), true,
                omp_get_max_threads());
}

int max_threads() noexcept { return omp_get_max_threads(); }

}  // namespace oblique::kernels
