// Four shifts per pass: lane l of every vector belongs to shifts[base + l].

#include <immintrin.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "alimit/kernels.hpp"

namespace alimit::kernels {

void count_inertia_avx2(const PackedTree& t, std::span<const double> shifts,
                        std::span<Inertia> out) {
  constexpr std::size_t W = 4;
  const std::size_t n = t.size();
  std::vector<double> sum(W * n);
  detail::FlatDiag full;

  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d tol = _mm256_set1_pd(kZeroTol);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

  for (std::size_t base = 0; base < shifts.size(); base += W) {
    const std::size_t lanes = std::min(W, shifts.size() - base);
    alignas(32) double c_lane[W];
    for (std::size_t l = 0; l < W; ++l) c_lane[l] = shifts[base + std::min(l, lanes - 1)];
    const __m256d c = _mm256_load_pd(c_lane);

    std::fill(sum.begin(), sum.end(), 0.0);
    __m256d bad = zero;
    __m256d pos = zero;
    __m256d neg = zero;
    for (std::size_t i = 0; i < n; ++i) {
      const __m256d s = _mm256_loadu_pd(&sum[W * i]);
      const __m256d d = _mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(t.diag[i]), c), s);
      // Unordered compare also flags NaN lanes.
      bad = _mm256_or_pd(bad, _mm256_cmp_pd(_mm256_and_pd(d, abs_mask), tol, _CMP_NGT_UQ));
      pos = _mm256_add_pd(pos, _mm256_and_pd(_mm256_cmp_pd(d, zero, _CMP_GT_OQ), one));
      neg = _mm256_add_pd(neg, _mm256_and_pd(_mm256_cmp_pd(d, zero, _CMP_LT_OQ), one));
      const std::size_t p = t.parent[i];
      if (p != PackedTree::npos) {
        double* sp = &sum[W * p];
        _mm256_storeu_pd(sp, _mm256_add_pd(_mm256_loadu_pd(sp),
                                           _mm256_div_pd(_mm256_set1_pd(t.w2[i]), d)));
      }
    }

    const int bad_bits = _mm256_movemask_pd(bad);
    alignas(32) double pos_lane[W];
    alignas(32) double neg_lane[W];
    _mm256_store_pd(pos_lane, pos);
    _mm256_store_pd(neg_lane, neg);
    for (std::size_t l = 0; l < lanes; ++l) {
      if (bad_bits & (1 << l)) {
        detail::diagonalize_flat(t.diag, t.w2, t.parent, -c_lane[l], full);
        out[base + l] = detail::count_signs(full.d);
      } else {
        out[base + l] = Inertia{static_cast<std::size_t>(pos_lane[l]),
                                static_cast<std::size_t>(neg_lane[l]), 0};
      }
    }
  }
}

}  // namespace alimit::kernels
