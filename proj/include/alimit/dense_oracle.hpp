#pragma once

// Desk-scale dense eigensolver used to cross-check the tree reduction.

#include <cstddef>
#include <vector>

#include "alimit/diagonalize.hpp"
#include "alimit/tree.hpp"

namespace alimit {

inline constexpr std::size_t kDenseOracleMaxN = 64;

/// Row-major n x n symmetric matrix assembled from M.
std::vector<double> dense_matrix(const WeightedTreeMatrix& m);

/// Eigenvalues of a symmetric row-major n x n matrix by cyclic Jacobi
/// rotations, sorted ascending.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n);

/// Full spectrum of M, sorted ascending. Throws std::length_error for
/// n > kDenseOracleMaxN.
std::vector<double> dense_spectrum_oracle(const WeightedTreeMatrix& m);

/// Counts eigenvalues above / below / within `coincide` of c.
Inertia count_relative_to(const std::vector<double>& spectrum, double c, double coincide);

}  // namespace alimit
