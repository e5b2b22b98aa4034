// Lane-wise transcription of detail::fixed_point and the F formulas.

#include <immintrin.h>

#include <algorithm>

#include "alimit/kernels.hpp"

namespace alimit::kernels {

namespace {

inline __m256d eval4(FKind kind, __m256d l, __m256d a) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d half = _mm256_set1_pd(0.5);

  const __m256d om = _mm256_sub_pd(one, a);
  const __m256d om2 = _mm256_mul_pd(om, om);
  const __m256d delta = _mm256_add_pd(a, _mm256_div_pd(om2, _mm256_sub_pd(l, a)));
  const __m256d disc = _mm256_mul_pd(_mm256_sub_pd(l, two),
                                     _mm256_sub_pd(_mm256_add_pd(l, two), _mm256_mul_pd(four, a)));
  const __m256d sq = _mm256_sqrt_pd(disc);
  const __m256d tam = _mm256_sub_pd(_mm256_mul_pd(two, a), l);
  const __m256d theta = _mm256_mul_pd(_mm256_sub_pd(tam, sq), half);
  const __m256d thp = _mm256_div_pd(om2, theta);

  switch (kind) {
    case FKind::F0:
      return _mm256_sub_pd(delta, sq);
    case FKind::F1:
      return _mm256_sub_pd(
          _mm256_mul_pd(_mm256_add_pd(tam, delta), _mm256_sub_pd(thp, delta)),
          _mm256_mul_pd(two, om2));
    case FKind::F2:
      return _mm256_sub_pd(_mm256_add_pd(_mm256_sub_pd(a, one), delta), thp);
    case FKind::F3:
      return _mm256_add_pd(delta, thp);
  }
  return _mm256_setzero_pd();
}

}  // namespace

void evaluate_f_avx2(FKind kind, std::span<const double> lambdas, std::span<const double> alphas,
                     std::span<double> out) {
  const std::size_t n = lambdas.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d l = _mm256_loadu_pd(&lambdas[i]);
    const __m256d a = _mm256_loadu_pd(&alphas[i]);
    _mm256_storeu_pd(&out[i], eval4(kind, l, a));
  }
  if (i < n) {
    alignas(32) double lt[4], at[4], ot[4];
    for (std::size_t l = 0; l < 4; ++l) {
      const std::size_t src = std::min(i + l, n - 1);
      lt[l] = lambdas[src];
      at[l] = alphas[src];
    }
    _mm256_store_pd(ot, eval4(kind, _mm256_load_pd(lt), _mm256_load_pd(at)));
    for (std::size_t l = 0; i + l < n; ++l) out[i + l] = ot[l];
  }
}

}  // namespace alimit::kernels
