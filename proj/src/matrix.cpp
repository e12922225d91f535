#include "oblique/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oblique/error.hpp"
#include "oblique/kernels.hpp"

namespace oblique {

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), data_(std::move(entries)) {
  if (data_.size() != n_ * n_) {
    throw DomainError(ErrorKind::DimensionMismatch,
                      "expected " + std::to_string(n_ * n_) + " entries, got " +
                          std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DomainError(ErrorKind::NotSquare);
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_size(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_size(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator-(ComplexMatrix m) {
  m *= -1.0;
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_size(lhs, rhs);
  ComplexMatrix out(lhs.size());
  kernels::multiply(lhs.data(), rhs.data(), out.data(), lhs.size());
  return out;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

ComplexMatrix complement(const ComplexMatrix& m) {
  ComplexMatrix r = -m;
  for (std::size_t i = 0; i < m.size(); ++i) r(i, i) += 1.0;
  return r;
}

double frobenius_norm(const ComplexMatrix& m) noexcept {
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs(const ComplexMatrix& m) noexcept {
  double s = 0.0;
  for (const auto& z : m.data()) s = std::max(s, std::abs(z));
  return s;
}

Tolerance::Tolerance(double a) : atol(a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError(ErrorKind::InvalidArgument, "tolerance must be positive and finite");
  }
}

void require_same_size(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() != b.size()) {
    throw DomainError(ErrorKind::DimensionMismatch,
                      std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace oblique
