#include "oblique/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oblique/error.hpp"
#include "oblique/linalg.hpp"

namespace oblique::feasibility {

namespace {

using RealMatrix = std::vector<std::vector<double>>;  // row-major, rows x cols

ComplexMatrix combine(const std::vector<ComplexMatrix>& basis, const std::vector<double>& c) {
  ComplexMatrix out(basis.front().size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (c[j] == 0.0) continue;
    const auto src = basis[j].data();
    auto dst = out.data();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += c[j] * src[k];
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double real_trace(const ComplexMatrix& m) { return m.trace().real(); }

// Re tr(g b) for Hermitian g and b.
double real_pairing(const ComplexMatrix& g, const ComplexMatrix& b) {
  const std::size_t n = g.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) s += (g(i, k) * b(k, i)).real();
  return s;
}

// Householder QR with column pivoting of a (rows x cols). Returns the full
// orthogonal factor (rows x rows) and the numerical rank.
std::pair<RealMatrix, std::size_t> pivoted_qr(RealMatrix a, double rel_tol) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  RealMatrix q(rows, std::vector<double>(rows, 0.0));
  for (std::size_t i = 0; i < rows; ++i) q[i][i] = 1.0;

  auto column_norm = [&](std::size_t col, std::size_t from) {
    double s = 0.0;
    for (std::size_t i = from; i < rows; ++i) s += a[i][col] * a[i][col];
    return std::sqrt(s);
  };

  double leading = 0.0;
  std::size_t rank = 0;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pivot = k;
    double best = column_norm(k, k);
    for (std::size_t j = k + 1; j < cols; ++j) {
      const double nj = column_norm(j, k);
      if (nj > best) {
        best = nj;
        pivot = j;
      }
    }
    if (k == 0) leading = best;
    if (best == 0.0 || best <= rel_tol * leading) break;
    if (pivot != k)
      for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][k], a[i][pivot]);

    std::vector<double> v(rows, 0.0);
    const double alpha = a[k][k] >= 0.0 ? -best : best;
    for (std::size_t i = k; i < rows; ++i) v[i] = a[i][k];
    v[k] -= alpha;
    const double vnorm2 = [&] {
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += v[i] * v[i];
      return s;
    }();
    if (vnorm2 > 0.0) {
      for (std::size_t j = k; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < rows; ++i) s += v[i] * a[i][j];
        s *= 2.0 / vnorm2;
        for (std::size_t i = k; i < rows; ++i) a[i][j] -= s * v[i];
      }
      // q <- q H, H = 1 - 2 v v^T / |v|^2
      for (std::size_t r = 0; r < rows; ++r) {
        double s = 0.0;
        for (std::size_t i = k; i < rows; ++i) s += q[r][i] * v[i];
        s *= 2.0 / vnorm2;
        for (std::size_t i = k; i < rows; ++i) q[r][i] -= s * v[i];
      }
    }
    rank = k + 1;
  }
  return {std::move(q), rank};
}

struct Objective {
  double soft = 0;
  double least = 0;
  ComplexMatrix gradient_density;
};

Objective soft_min(const ComplexMatrix& a, double beta) {
  const HermEig e = herm_eig(hermitian_part(a));
  const double least = e.values.front();
  double total = 0.0;
  for (double l : e.values) total += std::exp(-beta * (l - least));
  Objective out;
  out.least = least;
  out.soft = least - std::log(total) / beta;
  out.gradient_density =
      spectral_apply(e, [&](double l) { return std::exp(-beta * (l - least)) / total; });
  return out;
}

}  // namespace

std::vector<ComplexMatrix> block_diagonal_hermitian_basis(const OrthProjection& p) {
  const std::size_t n = p.size();
  const HermEig e = herm_eig(p.matrix());
  std::vector<std::size_t> lower;
  std::vector<std::size_t> upper;
  for (std::size_t k = 0; k < n; ++k) (e.values[k] < 0.5 ? lower : upper).push_back(k);

  const ComplexMatrix& u = e.vectors;
  // u E u* for the elementary Hermitian E built on columns i, j of u.
  auto outer = [&](std::size_t i, std::size_t j, Complex w) {
    ComplexMatrix m(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s)
        m(r, s) = w * u(r, i) * std::conj(u(s, j)) + std::conj(w) * u(r, j) * std::conj(u(s, i));
    return m;
  };

  std::vector<ComplexMatrix> basis;
  const double h = 1.0 / std::sqrt(2.0);
  for (const auto* block : {&lower, &upper}) {
    for (std::size_t a = 0; a < block->size(); ++a) {
      const std::size_t i = (*block)[a];
      basis.push_back(outer(i, i, 0.5));
      for (std::size_t b = a + 1; b < block->size(); ++b) {
        const std::size_t j = (*block)[b];
        basis.push_back(outer(i, j, h));
        basis.push_back(outer(i, j, Complex(0.0, h)));
      }
    }
  }
  return basis;
}

std::vector<ComplexMatrix> constraint_nullspace(const std::vector<ComplexMatrix>& basis,
                                                const ComplexMatrix& x, ConstraintSign sign,
                                                double rel_tol) {
  if (basis.empty()) return {};
  const std::size_t n = x.size();
  const std::size_t d = basis.size();
  const double xn = frobenius_norm(x);
  // A generator at rounding level means q = p; normalizing it would turn
  // noise into a constraint.
  if (xn <= 1e-12) return basis;

  ComplexMatrix xs = x;
  xs *= 1.0 / xn;
  const ComplexMatrix xs_adj = xs.adjoint();
  const double s = sign == ConstraintSign::AntiSelfadjoint ? 1.0 : -1.0;

  // Row j of the transposed constraint matrix is vec(L(basis_j)).
  RealMatrix mt(d, std::vector<double>(2 * n * n, 0.0));
  for (std::size_t j = 0; j < d; ++j) {
    const ComplexMatrix image = basis[j] * xs + s * (xs_adj * basis[j]);
    const auto z = image.data();
    for (std::size_t k = 0; k < z.size(); ++k) {
      mt[j][2 * k] = z[k].real();
      mt[j][2 * k + 1] = z[k].imag();
    }
  }

  auto [q, rank] = pivoted_qr(std::move(mt), rel_tol);
  std::vector<ComplexMatrix> null;
  for (std::size_t col = rank; col < d; ++col) {
    std::vector<double> c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = q[j][col];
    null.push_back(hermitian_part(combine(basis, c)));
  }
  return null;
}

AscentResult maximize_min_eigenvalue(const std::vector<ComplexMatrix>& nullspace,
                                     std::uint64_t seed, std::size_t restarts,
                                     double stop_above) {
  const std::size_t m = nullspace.size();
  if (m == 0) throw DomainError(ErrorKind::InvalidArgument, "empty nullspace");
  const double n = static_cast<double>(nullspace.front().size());

  std::vector<double> t(m);
  for (std::size_t j = 0; j < m; ++j) t[j] = real_trace(nullspace[j]);
  const double tt = dot(t, t);
  if (tt == 0.0) throw DomainError(ErrorKind::InvalidArgument, "traceless nullspace");

  auto project = [&](std::vector<double>& g) {
    const double k = dot(g, t) / tt;
    for (std::size_t j = 0; j < m; ++j) g[j] -= k * t[j];
  };

  std::vector<double> center(m);
  for (std::size_t j = 0; j < m; ++j) center[j] = n * t[j] / tt;
  const double center_norm = std::sqrt(dot(center, center));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  AscentResult result{combine(nullspace, center), -std::numeric_limits<double>::infinity(), 0};

  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    std::vector<double> c = center;
    if (r > 0) {
      std::vector<double> z(m);
      for (auto& v : z) v = gauss(rng);
      project(z);
      const double zn = std::sqrt(dot(z, z));
      if (zn > 0.0) {
        const double radius = center_norm * unit(rng);
        for (std::size_t j = 0; j < m; ++j) c[j] += radius * z[j] / zn;
      }
    }

    double step = 1.0;
    for (double beta = 1.0; beta <= 1e12; beta *= 4.0) {
      for (int it = 0; it < 40; ++it) {
        const ComplexMatrix a = combine(nullspace, c);
        const Objective f = soft_min(a, beta);
        if (f.least > result.best_min_eig) {
          result.best_min_eig = f.least;
          result.best = a;
        }
        std::vector<double> g(m);
        for (std::size_t j = 0; j < m; ++j) g[j] = real_pairing(f.gradient_density, nullspace[j]);
        project(g);
        const double gg = dot(g, g);
        if (gg < 1e-28) break;

        bool moved = false;
        for (double s = step; s > 1e-14; s *= 0.5) {
          std::vector<double> trial = c;
          for (std::size_t j = 0; j < m; ++j) trial[j] += s * g[j];
          const Objective ft = soft_min(combine(nullspace, trial), beta);
          if (ft.soft >= f.soft + 1e-4 * s * gg) {
            c = std::move(trial);
            step = std::min(2.0 * s, 1e6);
            moved = true;
            if (ft.least > result.best_min_eig) {
              result.best_min_eig = ft.least;
              result.best = combine(nullspace, c);
            }
            break;
          }
        }
        if (!moved) break;
      }
    }
    result.restarts_used = r + 1;
    if (result.best_min_eig > stop_above) break;
  }

  const double tr = real_trace(result.best);
  if (tr != 0.0) {
    result.best *= n / tr;
    result.best_min_eig *= n / tr;
  }
  result.best = hermitian_part(result.best);
  return result;
}

std::optional<ComplexMatrix> sample_planes(const std::vector<ComplexMatrix>& nullspace,
                                           std::uint64_t seed, std::size_t planes,
                                           std::size_t angles, double threshold) {
  const std::size_t m = nullspace.size();
  if (m == 0) return std::nullopt;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (std::size_t plane = 0; plane < planes; ++plane) {
    std::vector<double> u(m);
    std::vector<double> v(m);
    for (auto& z : u) z = gauss(rng);
    for (auto& z : v) z = gauss(rng);
    const double un = std::sqrt(dot(u, u));
    for (auto& z : u) z /= un;
    const double k = dot(u, v);
    for (std::size_t j = 0; j < m; ++j) v[j] -= k * u[j];
    const double vn = std::sqrt(dot(v, v));
    if (vn > 0.0)
      for (auto& z : v) z /= vn;

    for (std::size_t s = 0; s < angles; ++s) {
      // Full circle: the cone is not symmetric under a -> -a.
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(angles);
      std::vector<double> c(m);
      for (std::size_t j = 0; j < m; ++j) c[j] = std::cos(theta) * u[j] + std::sin(theta) * v[j];
      const ComplexMatrix a = hermitian_part(combine(nullspace, c));
      const HermEig e = herm_eig(a);
      const double scale = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
      if (scale > 0.0 && e.values.front() > threshold * scale) {
        ComplexMatrix w = a;
        w *= static_cast<double>(a.size()) / real_trace(a);
        return w;
      }
    }
  }
  return std::nullopt;
}

SearchResult search(const OrthProjection& p, const ComplexMatrix& x, ConstraintSign sign,
                    std::uint64_t seed, const FeasibilityOptions& opts) {
  SearchResult out;
  const std::vector<ComplexMatrix> null =
      constraint_nullspace(block_diagonal_hermitian_basis(p), x, sign);
  out.nullspace_dim = null.size();

  const double trace_mass = [&] {
    double s = 0.0;
    for (const auto& b : null) s += real_trace(b) * real_trace(b);
    return std::sqrt(s);
  }();
  // A positive definite element has positive trace, so a trivial or
  // traceless nullspace is an exact certificate.
  if (null.empty() || trace_mass <= 1e-12) {
    out.status = Feasibility::Infeasible;
    out.exact = true;
    out.best_min_eig = 0.0;
    return out;
  }

  // A single direction leaves one trace-normalized candidate; its least
  // eigenvalue decides the question outright.
  if (null.size() == 1) {
    ComplexMatrix a = null.front();
    a *= static_cast<double>(p.size()) / real_trace(a);
    out.best_min_eig = min_eigenvalue(a);
    out.exact = true;
    if (out.best_min_eig > opts.feasible_threshold) {
      out.status = Feasibility::Feasible;
      out.witness = std::move(a);
    } else if (out.best_min_eig < opts.infeasible_threshold) {
      out.status = Feasibility::Infeasible;
    } else {
      out.status = Feasibility::Indeterminate;
      out.exact = false;
    }
    return out;
  }

  AscentResult best = maximize_min_eigenvalue(null, seed, opts.restarts, opts.feasible_threshold);
  out.best_min_eig = best.best_min_eig;
  out.restarts_used = best.restarts_used;

  if (best.best_min_eig > opts.feasible_threshold) {
    out.status = Feasibility::Feasible;
    out.witness = std::move(best.best);
    return out;
  }
  if (best.best_min_eig < opts.infeasible_threshold && p.size() <= opts.exhaustive_max_n) {
    if (auto hit = sample_planes(null, seed, opts.planes, opts.angles, opts.feasible_threshold)) {
      out.status = Feasibility::Feasible;
      out.best_min_eig = min_eigenvalue(*hit);
      out.witness = std::move(hit);
      return out;
    }
    out.status = Feasibility::Infeasible;
    return out;
  }
  out.status = Feasibility::Indeterminate;
  return out;
}

}  // namespace oblique::feasibility
