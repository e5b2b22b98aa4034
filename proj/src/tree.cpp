#include "alimit/tree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "alimit/common.hpp"

namespace alimit {

RootedTree::RootedTree(std::vector<Vertex> parent, std::vector<Vertex> order)
    : parent_(std::move(parent)), order_(std::move(order)) {
  const std::size_t n = parent_.size();
  if (n == 0) throw std::invalid_argument("tree must have at least one vertex");
  if (order_.size() != n) throw std::invalid_argument("order must list every vertex once");

  std::size_t roots = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (parent_[v] == kNoParent) {
      ++roots;
      root_ = v;
    } else if (parent_[v] >= n || parent_[v] == v) {
      throw std::invalid_argument(fmt::format("vertex {} has invalid parent", v + 1));
    }
  }
  if (roots != 1) throw std::invalid_argument("tree must have exactly one root");

  std::vector<std::size_t> position(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = order_[i];
    if (v >= n || position[v] != n) throw std::invalid_argument("order is not a permutation");
    position[v] = i;
  }
  // position(v) < position(parent(v)) for all non-root v rules out cycles too.
  for (Vertex v = 0; v < n; ++v) {
    if (parent_[v] != kNoParent && position[v] >= position[parent_[v]])
      throw std::invalid_argument(
          fmt::format("order is not bottom-up at vertex {}", v + 1));
  }

  child_offset_.assign(n + 1, 0);
  for (Vertex v = 0; v < n; ++v)
    if (parent_[v] != kNoParent) ++child_offset_[parent_[v] + 1];
  for (std::size_t i = 0; i < n; ++i) child_offset_[i + 1] += child_offset_[i];
  child_list_.resize(n - 1);
  std::vector<std::size_t> fill(child_offset_.begin(), child_offset_.end() - 1);
  for (Vertex v = 0; v < n; ++v)
    if (parent_[v] != kNoParent) child_list_[fill[parent_[v]]++] = v;
}

RootedTree RootedTree::from_edges(std::size_t n, std::span<const Edge> edges, Vertex root) {
  if (n == 0) throw std::invalid_argument("tree must have at least one vertex");
  if (edges.size() != n - 1)
    throw std::invalid_argument(
        fmt::format("a tree on {} vertices needs {} edges, got {}", n, n - 1, edges.size()));
  if (root >= n) throw std::invalid_argument("root out of range");

  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n || u == v)
      throw std::invalid_argument(fmt::format("invalid edge {} {}", u + 1, v + 1));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  std::vector<Vertex> parent(n, kNoParent);
  std::vector<bool> seen(n, false);
  std::vector<Vertex> bfs;
  bfs.reserve(n);
  bfs.push_back(root);
  seen[root] = true;
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    const Vertex u = bfs[head];
    for (Vertex w : adj[u]) {
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = u;
      bfs.push_back(w);
    }
  }
  if (bfs.size() != n) throw std::invalid_argument("edge list is not connected");
  std::reverse(bfs.begin(), bfs.end());
  return RootedTree(std::move(parent), std::move(bfs));
}

std::optional<Vertex> RootedTree::parent(Vertex v) const {
  if (parent_.at(v) == kNoParent) return std::nullopt;
  return parent_[v];
}

std::span<const Vertex> RootedTree::children(Vertex v) const {
  if (v >= size()) throw std::out_of_range("vertex out of range");
  return std::span<const Vertex>(child_list_).subspan(child_offset_[v],
                                                      child_offset_[v + 1] - child_offset_[v]);
}

std::size_t RootedTree::degree(Vertex v) const {
  return children(v).size() + (parent_[v] == kNoParent ? 0 : 1);
}

std::vector<std::size_t> RootedTree::degrees() const {
  std::vector<std::size_t> deg(size());
  for (Vertex v = 0; v < size(); ++v) deg[v] = degree(v);
  return deg;
}

std::size_t RootedTree::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < size(); ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<Edge> RootedTree::edges() const {
  std::vector<Edge> out;
  out.reserve(size() - 1);
  for (Vertex v = 0; v < size(); ++v)
    if (parent_[v] != kNoParent) out.emplace_back(v, parent_[v]);
  return out;
}

void CaterpillarSpec::validate() const {
  if (r.empty()) throw std::invalid_argument("caterpillar needs at least one spine vertex");
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] < 0)
      throw std::invalid_argument(fmt::format("negative pendant count r_{} = {}", i + 1, r[i]));
}

std::size_t CaterpillarSpec::vertex_count() const {
  std::size_t n = r.size();
  for (int ri : r) n += static_cast<std::size_t>(ri);
  return n;
}

RootedTree make_caterpillar(const CaterpillarSpec& spec) {
  spec.validate();
  const std::size_t k = spec.r.size();
  const std::size_t n = spec.vertex_count();

  std::vector<Vertex> parent(n, kNoParent);
  std::vector<Vertex> order;
  order.reserve(n);
  for (std::size_t i = 0; i + 1 < k; ++i) parent[i] = i + 1;

  Vertex next = k;
  for (std::size_t i = 0; i < k; ++i) {
    for (int p = 0; p < spec.r[i]; ++p) {
      parent[next] = i;
      order.push_back(next++);
    }
  }
  for (std::size_t i = 0; i < k; ++i) order.push_back(i);
  return RootedTree(std::move(parent), std::move(order));
}

CaterpillarSpec caterpillar_pendant_counts(const RootedTree& tree, std::size_t spine_length) {
  if (spine_length == 0 || spine_length > tree.size())
    throw std::invalid_argument("bad spine length");
  CaterpillarSpec spec;
  spec.r.assign(spine_length, 0);
  for (std::size_t i = 0; i < spine_length; ++i) {
    for (Vertex c : tree.children(i)) {
      if (c < spine_length) {
        if (c + 1 != i) throw std::invalid_argument("spine is not a path v_1..v_k");
        continue;
      }
      if (!tree.children(c).empty()) throw std::invalid_argument("pendant vertex is not a leaf");
      ++spec.r[i];
    }
  }
  return spec;
}

RootedTree make_starlike_1nn(std::size_t n) {
  if (n == 0) throw std::invalid_argument("T_{1,n,n} needs n >= 1");
  const std::size_t total = 2 * n + 2;
  std::vector<Vertex> parent(total, kNoParent);
  parent[1] = 0;
  // Path A occupies 2..n+1, path B n+2..2n+1; the first vertex of each is
  // adjacent to the root.
  for (std::size_t branch = 0; branch < 2; ++branch) {
    const std::size_t first = 2 + branch * n;
    parent[first] = 0;
    for (std::size_t j = 1; j < n; ++j) parent[first + j] = first + j - 1;
  }
  std::vector<Vertex> order;
  order.reserve(total);
  order.push_back(1);
  for (std::size_t branch = 0; branch < 2; ++branch) {
    const std::size_t first = 2 + branch * n;
    for (std::size_t j = n; j-- > 0;) order.push_back(first + j);
  }
  order.push_back(0);
  return RootedTree(std::move(parent), std::move(order));
}

WeightedTreeMatrix::WeightedTreeMatrix(RootedTree tree, std::vector<double> diag,
                                       std::vector<double> edge_w, std::optional<double> alpha)
    : tree_(std::move(tree)), diag_(std::move(diag)), edge_w_(std::move(edge_w)), alpha_(alpha) {
  if (diag_.size() != tree_.size() || edge_w_.size() != tree_.size())
    throw std::invalid_argument("weight arrays must have one entry per vertex");
  edge_w_[tree_.root()] = 0.0;
}

WeightedTreeMatrix a_alpha_weights(const RootedTree& tree, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::domain_error(fmt::format("alpha must lie in [0,1], got {}", alpha));
  std::vector<double> diag(tree.size());
  std::vector<double> edge(tree.size(), 1.0 - alpha);
  for (Vertex v = 0; v < tree.size(); ++v) diag[v] = alpha * static_cast<double>(tree.degree(v));
  return WeightedTreeMatrix(tree, std::move(diag), std::move(edge), alpha);
}

void write_edge_list(std::ostream& out, const RootedTree& tree) {
  out << kFormatHeader << '\n';
  for (const auto& [child, parent] : tree.edges()) out << parent + 1 << ' ' << child + 1 << '\n';
}

std::string to_edge_list(const RootedTree& tree) {
  std::ostringstream s;
  write_edge_list(s, tree);
  return s.str();
}

RootedTree read_edge_list(std::istream& in, std::size_t root) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long u = 0, v = 0;
    if (!(ls >> u >> v) || u < 1 || v < 1)
      throw std::invalid_argument(fmt::format("edge list line {}: expected `u v` (1-based)", lineno));
    edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(u, v)));
  }
  if (n == 0) {
    // A lone vertex has no edges to name it.
    return RootedTree({kNoParent}, {0});
  }
  if (root < 1 || root > n) throw std::invalid_argument("root out of range");
  return RootedTree::from_edges(n, edges, root - 1);
}

}  // namespace alimit
