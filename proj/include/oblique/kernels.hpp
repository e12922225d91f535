#pragma once

#include <cstddef>
#include <span>

#include "oblique/matrix.hpp"

namespace oblique::kernels {

// Row count at which the parallel product starts splitting rows across
// threads. Below it the OpenMP region costs more than the product.
inline constexpr std::size_t kParallelThreshold = 48;

// c = a * b. Parallel over rows of c when n >= kParallelThreshold.
void multiply(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> c,
              std::size_t n);

// Straight triple loop; the reference the parallel path is tested against.
void multiply_serial(std::span<const Complex> a, std::span<const Complex> b,
                     std::span<Complex> c, std::size_t n);

// Same as multiply but with an explicit thread request (0 = runtime default).
void multiply_parallel(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> c, std::size_t n, int threads = 0);

int max_threads() noexcept;

}  // namespace oblique::kernels
