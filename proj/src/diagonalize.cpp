#include "alimit/diagonalize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "alimit/kernels.hpp"

namespace alimit {

namespace detail {

void diagonalize_flat(std::span<const double> diag, std::span<const double> w2,
                      std::span<const std::size_t> parent_pos, double x, FlatDiag& out) {
  constexpr std::size_t none = kernels::PackedTree::npos;
  const std::size_t n = diag.size();
  out.d.resize(n);
  out.cut.clear();

  // Contributions are pushed from each finished child to its parent:
  // running sum of w^2/d over nonzero children, first zero child, and whether
  // any child is still attached at all.
  std::vector<double> sum(n, 0.0);
  std::vector<std::size_t> zero_child(n, none);
  std::vector<char> has_child(n, 0);
  std::vector<char> cut(n, 0);

  for (std::size_t i = 0; i < n; ++i) out.d[i] = diag[i] + x;

  for (std::size_t i = 0; i < n; ++i) {
    if (has_child[i]) {
      if (zero_child[i] == none) {
        out.d[i] -= sum[i];
      } else {
        const std::size_t j = zero_child[i];
        out.d[i] = -w2[j] / 2.0;
        out.d[j] = 2.0;
        if (parent_pos[i] != none) {
          cut[i] = 1;
          out.cut.push_back(i);
        }
      }
    }
    const std::size_t p = parent_pos[i];
    if (p == none || cut[i]) continue;
    has_child[p] = 1;
    if (std::abs(out.d[i]) <= kZeroTol) {
      if (zero_child[p] == none) zero_child[p] = i;
    } else {
      sum[p] += w2[i] / out.d[i];
    }
  }
}

Inertia count_signs(std::span<const double> d) {
  Inertia in;
  for (double v : d) {
    if (v > kZeroTol)
      ++in.n_pos;
    else if (v < -kZeroTol)
      ++in.n_neg;
    else
      ++in.n_zero;
  }
  return in;
}

}  // namespace detail

DiagResult diagonalize(const WeightedTreeMatrix& m, double x) {
  const auto packed = kernels::PackedTree::from(m);
  detail::FlatDiag flat;
  detail::diagonalize_flat(packed.diag, packed.w2, packed.parent, x, flat);

  DiagResult r;
  r.d = std::move(flat.d);
  for (std::size_t pos : flat.cut) {
    const Vertex v = packed.vertex[pos];
    r.removed_edges.emplace_back(v, *m.tree().parent(v));
  }
  const Inertia in = detail::count_signs(r.d);
  r.n_pos = in.n_pos;
  r.n_neg = in.n_neg;
  r.n_zero = in.n_zero;
  return r;
}

std::vector<double> diagonal_by_vertex(const WeightedTreeMatrix& m, const DiagResult& r) {
  const auto order = m.tree().order();
  if (r.d.size() != order.size()) throw std::invalid_argument("diagonal size mismatch");
  std::vector<double> out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = r.d[i];
  return out;
}

std::size_t count_eigenvalues_greater(const WeightedTreeMatrix& m, double c) {
  return diagonalize(m, -c).n_pos;
}

std::vector<Inertia> inertia_at_shifts(const WeightedTreeMatrix& m,
                                       std::span<const double> shifts) {
  const auto packed = kernels::PackedTree::from(m);
  std::vector<Inertia> out(shifts.size());
  kernels::count_inertia(packed, shifts, out);
  return out;
}

double a_alpha_radius_lower_bound(double alpha, std::size_t max_degree) {
  const double delta = static_cast<double>(max_degree);
  const double a1 = alpha * (delta + 1.0);
  return 0.5 * (a1 + std::sqrt(a1 * a1 + 4.0 * delta * (1.0 - 2.0 * alpha)));
}

namespace {

double gershgorin_radius(const WeightedTreeMatrix& m) {
  const auto& tree = m.tree();
  std::vector<double> row(m.size(), 0.0);
  for (Vertex v = 0; v < m.size(); ++v) row[v] = std::abs(m.diag()[v]);
  for (const auto& [child, parent] : tree.edges()) {
    const double w = std::abs(m.edge_weights()[child]);
    row[child] += w;
    row[parent] += w;
  }
  return *std::max_element(row.begin(), row.end());
}

}  // namespace

SpectralRadiusResult spectral_radius(const WeightedTreeMatrix& m, double tol) {
  if (!(tol > 0.0)) throw std::domain_error(fmt::format("tolerance must be positive, got {}", tol));
  if (m.size() < 2) throw std::invalid_argument("spectral radius needs a tree with n >= 2");

  const auto packed = kernels::PackedTree::from(m);
  auto above = [&](double c) {
    Inertia in;
    kernels::count_inertia(packed, std::span<const double>(&c, 1), std::span<Inertia>(&in, 1));
    return in.n_pos;
  };

  // Invariant: at least one eigenvalue > lo, none > hi.
  const double outer = gershgorin_radius(m);
  double lo = -outer;
  double hi = outer;
  if (const auto alpha = m.alpha()) {
    const double delta = static_cast<double>(m.tree().max_degree());
    const double bound = a_alpha_radius_lower_bound(*alpha, m.tree().max_degree());
    if (above(delta) == 0) hi = delta;
    // The bound is attained by stars and by alpha = 1; step just below it.
    const double below = bound - std::max(tol, 1e-9 * (1.0 + std::abs(bound)));
    if (above(below) >= 1) lo = below;
  }
  if (above(lo) == 0) lo = -outer - 1.0;

  SpectralRadiusResult res;
  std::array<double, 4> probe{};
  std::array<Inertia, 4> counts{};
  while (res.iterations < kMaxBisectionRounds && hi - lo > tol) {
    const double width = hi - lo;
    for (std::size_t i = 0; i < probe.size(); ++i)
      probe[i] = lo + width * static_cast<double>(i + 1) / 5.0;
    kernels::count_inertia(packed, probe, counts);
    ++res.iterations;

    const double old_lo = lo, old_hi = hi;
    for (std::size_t i = 0; i < probe.size(); ++i) {
      if (counts[i].n_pos >= 1) {
        lo = std::max(lo, probe[i]);
      } else {
        hi = std::min(hi, probe[i]);
        break;
      }
    }
    if (lo == old_lo && hi == old_hi) {
      // Probes collapsed onto the endpoints: try the single midpoint, and
      // stop once the bracket is two adjacent doubles.
      const double mid = lo + (hi - lo) / 2.0;
      if (mid <= lo || mid >= hi) break;
      (above(mid) >= 1 ? lo : hi) = mid;
    }
  }
  res.lower = lo;
  res.upper = hi;
  res.converged = (hi - lo <= tol) || std::nextafter(lo, hi) >= hi;
  const double mid = lo + (hi - lo) / 2.0;
  // Report a point strictly inside the "above" side when the bracket is a
  // single ulp wide.
  res.value = (mid >= hi) ? lo : mid;
  return res;
}

}  // namespace alimit
