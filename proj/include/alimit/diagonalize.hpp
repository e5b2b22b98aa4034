#pragma once

// Eigenvalue location on weighted trees by congruence diagonalization.
//
// diagonalize(M, x) reduces M + xI to a diagonal matrix with the same inertia
// by a single bottom-up pass over the tree. By Sylvester's law of inertia the
// signs of the diagonal count the eigenvalues of M above, below and at -x.

#include <cstddef>
#include <span>
#include <vector>

#include "alimit/tree.hpp"

namespace alimit {

/// Pivots with |d| <= kZeroTol take the zero branch of the reduction.
inline constexpr double kZeroTol = 1e-12;

struct Inertia {
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  std::size_t n_zero = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

struct DiagResult {
  /// Final diagonal; d[i] belongs to vertex tree.order()[i].
  std::vector<double> d;
  /// (child, parent) edges cut by the zero branch.
  std::vector<Edge> removed_edges;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  std::size_t n_zero = 0;

  Inertia inertia() const { return {n_pos, n_neg, n_zero}; }
};

/// Diagonal of M + xI. The input is not modified; edge removals happen on
/// scratch state.
DiagResult diagonalize(const WeightedTreeMatrix& m, double x);

/// Same diagonal re-indexed by vertex instead of by processing position.
std::vector<double> diagonal_by_vertex(const WeightedTreeMatrix& m, const DiagResult& r);

/// Number of eigenvalues of M strictly greater than c.
std::size_t count_eigenvalues_greater(const WeightedTreeMatrix& m, double c);

/// Inertia of M - cI for several shifts at once, through the dispatched
/// batch kernel. out[i] corresponds to shifts[i].
std::vector<Inertia> inertia_at_shifts(const WeightedTreeMatrix& m, std::span<const double> shifts);

struct SpectralRadiusResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// Number of bracket-refinement rounds.
  int iterations = 0;
  /// False when the round cap was hit before upper - lower <= tol.
  bool converged = false;
};

inline constexpr int kMaxBisectionRounds = 200;

/// Largest eigenvalue of M, bracketed to width <= tol (or to adjacent doubles
/// when tol is below the local spacing). Each round evaluates four interior
/// shifts in one batched inertia call. Throws std::domain_error if tol <= 0
/// and std::invalid_argument for n < 2.
SpectralRadiusResult spectral_radius(const WeightedTreeMatrix& m, double tol);

/// Lower bound on rho(A_alpha(G)) for a connected graph of maximum degree Delta:
/// (alpha(Delta+1) + sqrt(alpha^2 (Delta+1)^2 + 4 Delta (1 - 2 alpha))) / 2.
double a_alpha_radius_lower_bound(double alpha, std::size_t max_degree);

namespace detail {

/// The reduction itself, on a tree flattened into processing order.
/// parent_pos[i] is the position of the parent of position i, or npos.
struct FlatDiag {
  std::vector<double> d;
  /// Positions whose edge to the parent was cut.
  std::vector<std::size_t> cut;
};
void diagonalize_flat(std::span<const double> diag, std::span<const double> w2,
                      std::span<const std::size_t> parent_pos, double x, FlatDiag& out);
Inertia count_signs(std::span<const double> d);

}  // namespace detail

}  // namespace alimit
