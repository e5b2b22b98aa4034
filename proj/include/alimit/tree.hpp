#pragma once

// Rooted trees, caterpillar/starlike constructors and A_alpha weightings.
//
// Vertices are 0-based internally. Anything printed for humans (edge lists,
// caterpillar notation) is 1-based.

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace alimit {

using Vertex = std::size_t;
inline constexpr Vertex kNoParent = std::numeric_limits<Vertex>::max();

/// (child, parent) pair.
using Edge = std::pair<Vertex, Vertex>;

/// A tree with parent links and a bottom-up processing order (every vertex
/// appears after all of its children). Immutable once built; the constructor
/// validates both invariants and throws std::invalid_argument otherwise.
class RootedTree {
 public:
  RootedTree(std::vector<Vertex> parent, std::vector<Vertex> order);

  /// Builds a tree from an undirected edge list, rooted at `root`. The
  /// bottom-up order is reversed BFS order.
  static RootedTree from_edges(std::size_t n, std::span<const Edge> edges, Vertex root = 0);

  std::size_t size() const noexcept { return parent_.size(); }
  Vertex root() const noexcept { return root_; }
  std::optional<Vertex> parent(Vertex v) const;
  std::span<const Vertex> parents() const noexcept { return parent_; }
  std::span<const Vertex> order() const noexcept { return order_; }
  std::span<const Vertex> children(Vertex v) const;

  std::size_t degree(Vertex v) const;
  std::size_t max_degree() const;
  std::vector<std::size_t> degrees() const;

  /// One (child, parent) entry per non-root vertex, in vertex order.
  std::vector<Edge> edges() const;

 private:
  std::vector<Vertex> parent_;
  std::vector<Vertex> order_;
  std::vector<std::size_t> child_offset_;
  std::vector<Vertex> child_list_;
  Vertex root_ = 0;
};

/// Pendant counts [r_1, ..., r_k] of a caterpillar.
struct CaterpillarSpec {
  std::vector<int> r;

  void validate() const;
  std::size_t spine_length() const noexcept { return r.size(); }
  std::size_t vertex_count() const;
};

/// Spine v_1..v_k gets indices 0..k-1 with v_k the root; pendant leaves are
/// numbered after the spine in spine order.
RootedTree make_caterpillar(const CaterpillarSpec& spec);

/// Reads back pendant counts of a tree built by make_caterpillar with the given
/// spine length (spine vertices are 0..k-1).
CaterpillarSpec caterpillar_pendant_counts(const RootedTree& tree, std::size_t spine_length);

/// T_{1,n,n}: a root with one pendant vertex and two pendant paths of length n.
/// Root is vertex 0, the single pendant vertex is 1.
RootedTree make_starlike_1nn(std::size_t n);

/// Symmetric matrix supported on a tree: per-vertex diagonal, and one
/// off-diagonal weight per non-root vertex (its edge to the parent).
class WeightedTreeMatrix {
 public:
  WeightedTreeMatrix(RootedTree tree, std::vector<double> diag, std::vector<double> edge_w,
                     std::optional<double> alpha = std::nullopt);

  const RootedTree& tree() const noexcept { return tree_; }
  std::size_t size() const noexcept { return tree_.size(); }
  std::span<const double> diag() const noexcept { return diag_; }
  /// Weight of the edge between v and its parent; 0 for the root.
  std::span<const double> edge_weights() const noexcept { return edge_w_; }
  std::optional<double> alpha() const noexcept { return alpha_; }

 private:
  RootedTree tree_;
  std::vector<double> diag_;
  std::vector<double> edge_w_;
  std::optional<double> alpha_;
};

/// A_alpha(T) = alpha D + (1 - alpha) A. Throws std::domain_error unless
/// 0 <= alpha <= 1.
WeightedTreeMatrix a_alpha_weights(const RootedTree& tree, double alpha);

/// `u v` per line, 1-based, preceded by the format header line.
void write_edge_list(std::ostream& out, const RootedTree& tree);
std::string to_edge_list(const RootedTree& tree);

/// Parses an edge list (1-based, '#' comment lines ignored). The vertex count
/// is the largest index seen; the tree is rooted at 1-based `root`.
RootedTree read_edge_list(std::istream& in, std::size_t root = 1);

}  // namespace alimit
