#pragma once

// Seeded random trees for property tests and the verify suites.

#include <cstddef>
#include <random>

#include "alimit/tree.hpp"

namespace alimit {

/// Uniform random recursive tree on n vertices under a random labelling,
/// rooted at a random vertex.
RootedTree random_tree(std::mt19937_64& rng, std::size_t n);

/// A_alpha weighting of a random tree on n vertices.
WeightedTreeMatrix random_a_alpha_tree(std::mt19937_64& rng, std::size_t n, double alpha);

/// Arbitrary symmetric tree matrix: diagonal in [-2, 2], edge weights with
/// |w| in [0.25, 2] and random sign.
WeightedTreeMatrix random_weighted_tree(std::mt19937_64& rng, std::size_t n);

}  // namespace alimit
