#include <cmath>
#include <vector>

#include "alimit/kernels.hpp"

namespace alimit::kernels {

namespace {

// Fast pass without the zero branch. Returns false if some pivot landed in
// [-kZeroTol, kZeroTol], in which case the caller reruns the full reduction.
bool count_one(const PackedTree& t, double c, std::vector<double>& sum, Inertia& out) {
  const std::size_t n = t.size();
  sum.assign(n, 0.0);
  Inertia in;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (t.diag[i] - c) - sum[i];
    if (!(std::abs(d) > kZeroTol)) return false;
    if (d > 0.0)
      ++in.n_pos;
    else
      ++in.n_neg;
    const std::size_t p = t.parent[i];
    if (p != PackedTree::npos) sum[p] += t.w2[i] / d;
  }
  out = in;
  return true;
}

}  // namespace

void count_inertia_scalar(const PackedTree& t, std::span<const double> shifts,
                          std::span<Inertia> out) {
  std::vector<double> sum;
  detail::FlatDiag full;
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    if (count_one(t, shifts[s], sum, out[s])) continue;
    detail::diagonalize_flat(t.diag, t.w2, t.parent, -shifts[s], full);
    out[s] = detail::count_signs(full.d);
  }
}

}  // namespace alimit::kernels
