#pragma once

#include <cstdint>
#include <random>

#include "oblique/involutions.hpp"
#include "oblique/matrix.hpp"
#include "oblique/projections.hpp"

namespace oblique {

// p, q with a known compatible positive element: a = b + c^{-1} with b, c
// positive on range(p), range(1-p); generator X = x + y, y = -+ c x* b, halved
// until |p - q| <= max_distance.
struct CompatInstance {
  OrthProjection p;
  Idempotent q;
  ComplexMatrix generator;
  PositiveElement witness;
};

// Seeded instance generator. All draws go through one mt19937_64, so a seed
// fixes the whole instance stream.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  double normal();
  std::size_t index(std::size_t lo, std::size_t hi);  // inclusive

  ComplexMatrix gaussian(std::size_t n);
  ComplexMatrix unitary(std::size_t n);

  // Hermitian with operator norm exactly `norm`.
  ComplexMatrix hermitian(std::size_t n, double norm);

  // Spectrum log-uniform in [s, s * kappa] with kappa = 10^U(0, log10 max_cond)
  // and the smallest and largest eigenvalue pinned at the ends; s = 10^U(-1, 1).
  PositiveElement positive(std::size_t n, double max_cond);
  PositiveElement positive_with_condition(std::size_t n, double cond);

  OrthProjection projection(std::size_t n, std::size_t rank);
  // Rank drawn uniformly from [1, n-1] (n >= 2).
  OrthProjection projection(std::size_t n);

  // p z (1 - p) scaled to operator norm `norm`.
  ComplexMatrix corner(const OrthProjection& p, double norm);

  // x + x* for a random corner x; operator norm `norm`.
  ComplexMatrix horizontal_tangent(const OrthProjection& p, double norm);

  // p + x with |x| = sqrt(max_norm^2 - 1) * U(0.05, 1), so |q| <= max_norm.
  Idempotent oblique_idempotent(std::size_t n, double max_norm);

  // flip = false gives y = -c x* b (both p, q a-selfadjoint); flip = true
  // gives y = +c x* b (the fiber variant).
  CompatInstance compat_instance(std::size_t n, bool flip, double max_cond = 100.0,
                                 double max_distance = 0.9);

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Stream for case `index` of a batch seeded with `seed`; independent of how
// many cases run or in which order.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace oblique
