#pragma once

// Internals of the compatible-star decision, exposed for testing.

#include <cstdint>
#include <optional>
#include <vector>

#include "oblique/geodesics.hpp"
#include "oblique/matrix.hpp"
#include "oblique/projections.hpp"

namespace oblique::feasibility {

enum class ConstraintSign {
  AntiSelfadjoint,  // a X + X* a = 0, i.e. X^{#a} = -X
  Selfadjoint,      // a X - X* a = 0, i.e. X^{#a} = X
};

// Frobenius-orthonormal (real inner product Re tr(A* B)) basis of the Hermitian
// matrices commuting with p. Dimension k^2 + (n-k)^2 for rank p = k.
std::vector<ComplexMatrix> block_diagonal_hermitian_basis(const OrthProjection& p);

// Orthonormal basis of {a in span(basis) : a X +- X* a = 0}, via Householder
// QR with column pivoting of the transposed constraint matrix. Directions
// whose pivot falls below rel_tol times the leading pivot count as null.
std::vector<ComplexMatrix> constraint_nullspace(const std::vector<ComplexMatrix>& basis,
                                                const ComplexMatrix& x, ConstraintSign sign,
                                                double rel_tol = 1e-10);

struct AscentResult {
  ComplexMatrix best;       // trace normalized to n
  double best_min_eig = 0;
  std::size_t restarts_used = 0;
};

/// Maximizes the least eigenvalue over {a in span(nullspace) : tr a = n}.
/// The objective is concave, so each restart runs projected gradient ascent
/// on the soft-min -(1/beta) log tr e^{-beta a} with beta increasing; restarts
/// stop early once the least eigenvalue clears stop_above.
/// Requires a nullspace element with nonzero trace.
AscentResult maximize_min_eigenvalue(const std::vector<ComplexMatrix>& nullspace,
                                     std::uint64_t seed, std::size_t restarts,
                                     double stop_above);

// Random 2-planes through the origin of span(nullspace), each swept over a
// grid of directions; returns a positive definite element if one is hit.
std::optional<ComplexMatrix> sample_planes(const std::vector<ComplexMatrix>& nullspace,
                                           std::uint64_t seed, std::size_t planes,
                                           std::size_t angles, double threshold);

struct SearchResult {
  Feasibility status = Feasibility::Indeterminate;
  std::optional<ComplexMatrix> witness;
  double best_min_eig = 0;
  std::size_t nullspace_dim = 0;
  bool exact = false;
  std::size_t restarts_used = 0;
};

SearchResult search(const OrthProjection& p, const ComplexMatrix& x, ConstraintSign sign,
                    std::uint64_t seed, const FeasibilityOptions& opts);

}  // namespace oblique::feasibility
