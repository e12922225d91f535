#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace oblique {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. Every object in the library
// (idempotents, projections, positive elements, tangent vectors) is carried
// by one of these.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n);
  ComplexMatrix(std::size_t n, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n); }
  static ComplexMatrix diagonal(std::span<const double> d);
  static ComplexMatrix diagonal(std::initializer_list<double> d);

  std::size_t size() const noexcept { return n_; }
  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);

// 1 - m, used constantly for complementary projections.
ComplexMatrix complement(const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m) noexcept;
double max_abs(const ComplexMatrix& m) noexcept;

// Absolute tolerance; comparisons are scaled as atol * (1 + |operand|).
struct Tolerance {
  double atol = 1e-9;

  Tolerance() = default;
  explicit Tolerance(double a);

  double scaled(double magnitude) const noexcept { return atol * (1.0 + magnitude); }
};

void require_same_size(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace oblique
