#include "oblique/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "oblique/error.hpp"

namespace oblique {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr std::size_t kMaxLogTerms = 100000;

double off_diagonal_sq(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) s += std::norm(a(i, j));
  return 2.0 * s;
}

// Cyclic Jacobi on an exactly Hermitian input. Each rotation is the product
// of a diagonal phase, which makes a(p,q) real and nonnegative, and a real
// Givens rotation that annihilates it.
HermEig jacobi(ComplexMatrix a) {
  const std::size_t n = a.size();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double total = frobenius_norm(a) * frobenius_norm(a);

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    const double off = off_diagonal_sq(a);
    if (off == 0.0 || off <= 1e-32 * total) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0 || mag < std::numeric_limits<double>::min()) continue;

        const Complex phase_conj = std::conj(apq / mag);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * phase_conj;
        const Complex uqq = c * phase_conj;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermEig out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace

void require_finite(const ComplexMatrix& m) {
  if (!m.all_finite()) throw DomainError(ErrorKind::NonFinite);
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

double op_norm(const ComplexMatrix& m) {
  require_finite(m);
  const double scale = max_abs(m);
  if (scale == 0.0) return 0.0;
  ComplexMatrix s = m;
  s *= 1.0 / scale;
  const HermEig e = jacobi(hermitian_part(s.adjoint() * s));
  return scale * std::sqrt(std::max(e.values.back(), 0.0));
}

double min_singular_value(const ComplexMatrix& m) {
  require_finite(m);
  const double scale = max_abs(m);
  if (scale == 0.0) return 0.0;
  ComplexMatrix s = m;
  s *= 1.0 / scale;
  const HermEig e = jacobi(hermitian_part(s.adjoint() * s));
  return scale * std::sqrt(std::max(e.values.front(), 0.0));
}

HermEig herm_eig(const ComplexMatrix& m, Tolerance tol) {
  require_finite(m);
  const double asym = frobenius_norm(m - m.adjoint());
  if (asym > tol.scaled(frobenius_norm(m))) {
    throw DomainError(ErrorKind::NotHermitian, "|m - m*| = " + std::to_string(asym));
  }
  return jacobi(hermitian_part(m));
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  require_finite(hermitian);
  return jacobi(hermitian_part(hermitian)).values.front();
}

double max_eigenvalue(const ComplexMatrix& hermitian) {
  require_finite(hermitian);
  return jacobi(hermitian_part(hermitian)).values.back();
}

ComplexMatrix herm_sqrt(const ComplexMatrix& m, Tolerance tol) {
  const HermEig e = herm_eig(m, tol);
  const double norm = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  if (e.values.front() < -tol.atol * (1.0 + norm)) {
    throw DomainError(ErrorKind::NotPsd, "min eigenvalue " + std::to_string(e.values.front()));
  }
  return hermitian_part(spectral_apply(e, [](double l) { return std::sqrt(std::max(l, 0.0)); }));
}

ComplexMatrix mat_exp(const ComplexMatrix& m) {
  require_finite(m);
  const std::size_t n = m.size();
  const double norm = frobenius_norm(m);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));

  ComplexMatrix a = m;
  a *= std::ldexp(1.0, -squarings);

  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k < 64; ++k) {
    term = term * a;
    term *= 1.0 / k;
    sum += term;
    if (frobenius_norm(term) < 1e-17 * frobenius_norm(sum)) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

ComplexMatrix mat_log_near_identity(const ComplexMatrix& v) {
  require_finite(v);
  const std::size_t n = v.size();
  const ComplexMatrix h = v - ComplexMatrix::identity(n);
  const double radius = op_norm(h);
  if (radius >= 1.0 - 1e-12) {
    throw DomainError(ErrorKind::LogDomain, "|v - 1| = " + std::to_string(radius));
  }

  ComplexMatrix sum(n);
  ComplexMatrix power = h;
  for (std::size_t k = 1; k <= kMaxLogTerms; ++k) {
    const double weight = (k % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(k);
    ComplexMatrix term = power;
    term *= weight;
    sum += term;
    if (frobenius_norm(power) / static_cast<double>(k) < 1e-15) return sum;
    power = power * h;
  }
  throw DomainError(ErrorKind::LogDomain, "series did not reach 1e-15");
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  require_finite(m);
  const std::size_t n = m.size();
  ComplexMatrix lu = m;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  const double floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_abs(m);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    if (std::abs(lu(pivot, col)) <= floor || lu(pivot, col) == Complex(0.0)) {
      throw DomainError(ErrorKind::Singular);
    }
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(lu(pivot, k), lu(col, k));
        std::swap(inv(pivot, k), inv(col, k));
      }
    }
    const Complex d = lu(col, col);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = lu(r, col) / d;
      if (f == Complex(0.0)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        lu(r, k) -= f * lu(col, k);
        inv(r, k) -= f * inv(col, k);
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    const Complex d = lu(r, r);
    for (std::size_t k = 0; k < n; ++k) inv(r, k) /= d;
  }
  return inv;
}

PolarFactors polar(const ComplexMatrix& c, Tolerance tol) {
  require_finite(c);
  const std::size_t n = c.size();
  const double norm = op_norm(c);
  if (n == 0) return {ComplexMatrix(), ComplexMatrix()};
  if (min_singular_value(c) <= tol.atol * norm) throw DomainError(ErrorKind::Singular);

  ComplexMatrix x = c;
  for (int it = 0; it < 100; ++it) {
    const ComplexMatrix xinv = inverse(x);
    // Frobenius scaling is adequate once x is well away from singular.
    const double gamma = std::sqrt(frobenius_norm(xinv) / frobenius_norm(x));
    ComplexMatrix next = x;
    next *= 0.5 * gamma;
    ComplexMatrix back = xinv.adjoint();
    back *= 0.5 / gamma;
    next += back;
    const double step = frobenius_norm(next - x);
    x = std::move(next);
    if (step <= 1e-15 * frobenius_norm(x)) break;
  }
  // One unscaled step removes the residual left by the scaling.
  ComplexMatrix finish = x + inverse(x).adjoint();
  finish *= 0.5;
  x = std::move(finish);

  return {x, hermitian_part(x.adjoint() * c)};
}

bool is_positive_definite(const ComplexMatrix& m, Tolerance tol) {
  if (!m.all_finite() || m.size() == 0) return false;
  const double asym = frobenius_norm(m - m.adjoint());
  if (asym > tol.scaled(frobenius_norm(m))) return false;
  const HermEig e = jacobi(hermitian_part(m));
  const double norm = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  return e.values.front() > tol.atol * norm;
}

}  // namespace oblique
