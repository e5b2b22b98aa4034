#include "alimit/random_tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace alimit {

RootedTree random_tree(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("random_tree needs n >= 1");
  std::vector<Vertex> label(n);
  std::iota(label.begin(), label.end(), Vertex{0});
  std::shuffle(label.begin(), label.end(), rng);

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    edges.emplace_back(label[i], label[pick(rng)]);
  }
  std::uniform_int_distribution<Vertex> root(0, n - 1);
  return RootedTree::from_edges(n, edges, root(rng));
}

WeightedTreeMatrix random_a_alpha_tree(std::mt19937_64& rng, std::size_t n, double alpha) {
  return a_alpha_weights(random_tree(rng, n), alpha);
}

WeightedTreeMatrix random_weighted_tree(std::mt19937_64& rng, std::size_t n) {
  RootedTree tree = random_tree(rng, n);
  std::uniform_real_distribution<double> diag(-2.0, 2.0);
  std::uniform_real_distribution<double> mag(0.25, 2.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> d(n), w(n, 0.0);
  for (auto& x : d) x = diag(rng);
  for (Vertex v = 0; v < n; ++v)
    if (v != tree.root()) w[v] = sign(rng) ? mag(rng) : -mag(rng);
  return WeightedTreeMatrix(std::move(tree), std::move(d), std::move(w));
}

}  // namespace alimit
