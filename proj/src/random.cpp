#include "oblique/random.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oblique/error.hpp"
#include "oblique/linalg.hpp"

namespace oblique {

double InstanceGenerator::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double InstanceGenerator::normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

std::size_t InstanceGenerator::index(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

ComplexMatrix InstanceGenerator::gaussian(std::size_t n) {
  ComplexMatrix m(n);
  for (auto& z : m.data()) z = Complex(normal(), normal());
  return m;
}

ComplexMatrix InstanceGenerator::unitary(std::size_t n) {
  // Modified Gram-Schmidt, applied twice, on the columns of a Gaussian matrix.
  ComplexMatrix m = gaussian(n);
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += std::conj(m(i, k)) * m(i, j);
        for (std::size_t i = 0; i < n; ++i) m(i, j) -= d * m(i, k);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += std::norm(m(i, j));
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < n; ++i) m(i, j) /= norm;
    }
  }
  return m;
}

ComplexMatrix InstanceGenerator::hermitian(std::size_t n, double norm) {
  ComplexMatrix h = hermitian_part(gaussian(n));
  const double current = op_norm(h);
  if (current > 0.0) h *= norm / current;
  return hermitian_part(h);
}

PositiveElement InstanceGenerator::positive_with_condition(std::size_t n, double cond) {
  if (!(cond >= 1.0)) throw DomainError(ErrorKind::InvalidArgument, "condition number < 1");
  const double scale = std::pow(10.0, uniform(-1.0, 1.0));
  std::vector<double> spectrum(n);
  for (std::size_t i = 0; i < n; ++i) spectrum[i] = std::pow(cond, uniform(0.0, 1.0));
  spectrum.front() = 1.0;
  if (n > 1) spectrum.back() = cond;
  for (auto& s : spectrum) s *= scale;

  const ComplexMatrix u = unitary(n);
  ComplexMatrix a = u * ComplexMatrix::diagonal(spectrum) * u.adjoint();
  return PositiveElement(hermitian_part(a));
}

PositiveElement InstanceGenerator::positive(std::size_t n, double max_cond) {
  const double cond = std::pow(10.0, uniform(0.0, std::log10(max_cond)));
  return positive_with_condition(n, cond);
}

OrthProjection InstanceGenerator::projection(std::size_t n, std::size_t rank) {
  if (rank > n) throw DomainError(ErrorKind::InvalidArgument, "rank > n");
  const ComplexMatrix u = unitary(n);
  ComplexMatrix p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < rank; ++k) s += u(i, k) * std::conj(u(j, k));
      p(i, j) = s;
    }
  return OrthProjection(hermitian_part(p));
}

OrthProjection InstanceGenerator::projection(std::size_t n) {
  if (n < 2) throw DomainError(ErrorKind::InvalidArgument, "need n >= 2");
  return projection(n, index(1, n - 1));
}

ComplexMatrix InstanceGenerator::corner(const OrthProjection& p, double norm) {
  ComplexMatrix x = p.matrix() * gaussian(p.size()) * p.complement();
  const double current = op_norm(x);
  if (current > 0.0) x *= norm / current;
  return x;
}

ComplexMatrix InstanceGenerator::horizontal_tangent(const OrthProjection& p, double norm) {
  const ComplexMatrix x = corner(p, 1.0);
  ComplexMatrix t = x + x.adjoint();
  const double current = op_norm(t);
  if (current > 0.0) t *= norm / current;
  return hermitian_part(t);
}

Idempotent InstanceGenerator::oblique_idempotent(std::size_t n, double max_norm) {
  const OrthProjection p = projection(n);
  const double reach = std::sqrt(std::max(max_norm * max_norm - 1.0, 0.0));
  return Idempotent(p.matrix() + corner(p, reach * uniform(0.05, 1.0)));
}

CompatInstance InstanceGenerator::compat_instance(std::size_t n, bool flip, double max_cond,
                                                  double max_distance) {
  const OrthProjection p = projection(n);
  const ComplexMatrix& pm = p.matrix();
  const ComplexMatrix pc = p.complement();
  // Positive blocks supported on range(p) and range(1-p).
  const ComplexMatrix b = pm * positive(n, max_cond).matrix() * pm;
  const ComplexMatrix c = pc * positive(n, max_cond).matrix() * pc;
  const ComplexMatrix x = corner(p, 1.0);
  ComplexMatrix y = c * x.adjoint() * b;
  if (!flip) y = -y;
  ComplexMatrix generator = x + y;
  generator *= 1.0 / op_norm(generator);

  ComplexMatrix q;
  for (int halvings = 0;; ++halvings) {
    q = mat_exp(generator) * pm * mat_exp(-generator);
    if (op_norm(q - pm) <= max_distance) break;
    if (halvings > 60) throw DomainError(ErrorKind::NoConvergence, "compat instance");
    generator *= 0.5;
  }
  const ComplexMatrix witness = hermitian_part(b + corner_inverse(c, pc));
  return {p, Idempotent(q), generator, PositiveElement(witness)};
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  // splitmix64 over (seed, index).
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + index + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace oblique
