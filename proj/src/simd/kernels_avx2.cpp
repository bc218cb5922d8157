#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <numbers>

#include "vpd/simd.hpp"

// Compiled for the baseline ISA; only these functions carry the avx2 target, so
// no AVX code leaks into inline functions shared with other translation units.
// FMA is deliberately not enabled: mul + add per lane matches the scalar path.

namespace vpd::simd::detail {

__attribute__((target("avx2"))) void dirichlet_avx2(const EdgeView& edges,
                                                    const double* cos_table,
                                                    const double* sin_table, std::size_t batch,
                                                    double* lambda) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t node = 0;
  for (; node + 4 <= batch; node += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t e = 0; e < edges.count; ++e) {
      const std::size_t iu = edges.u[e] * batch + node;
      const std::size_t iv = edges.v[e] * batch + node;
      const __m256d prod_c =
          _mm256_mul_pd(_mm256_loadu_pd(cos_table + iu), _mm256_loadu_pd(cos_table + iv));
      const __m256d prod_s =
          _mm256_mul_pd(_mm256_loadu_pd(sin_table + iu), _mm256_loadu_pd(sin_table + iv));
      const __m256d gap = _mm256_max_pd(_mm256_sub_pd(one, _mm256_add_pd(prod_c, prod_s)), zero);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(edges.weight[e]), gap));
    }
    _mm256_storeu_pd(lambda + node, acc);
  }
  for (; node < batch; ++node) {
    double acc = 0.0;
    for (std::size_t e = 0; e < edges.count; ++e) {
      const std::size_t iu = edges.u[e] * batch + node;
      const std::size_t iv = edges.v[e] * batch + node;
      const double prod_c = cos_table[iu] * cos_table[iv];
      const double prod_s = sin_table[iu] * sin_table[iv];
      double gap = 1.0 - (prod_c + prod_s);
      gap = gap > 0.0 ? gap : 0.0;
      acc = acc + edges.weight[e] * gap;
    }
    lambda[node] = acc;
  }
}

__attribute__((target("avx2"))) void phase_lip_avx2(const EdgeView& edges, const double* phases,
                                                    std::size_t batch, double* lip) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  std::size_t node = 0;
  for (; node + 4 <= batch; node += 4) {
    __m256d best = _mm256_setzero_pd();
    for (std::size_t e = 0; e < edges.count; ++e) {
      const __m256d a = _mm256_loadu_pd(phases + edges.u[e] * batch + node);
      const __m256d b = _mm256_loadu_pd(phases + edges.v[e] * batch + node);
      const __m256d diff = _mm256_and_pd(_mm256_sub_pd(a, b), abs_mask);
      const __m256d gap = _mm256_min_pd(diff, _mm256_sub_pd(two_pi, diff));
      best = _mm256_max_pd(best, _mm256_div_pd(gap, _mm256_set1_pd(edges.length[e])));
    }
    _mm256_storeu_pd(lip + node, best);
  }
  for (; node < batch; ++node) {
    double best = 0.0;
    for (std::size_t e = 0; e < edges.count; ++e) {
      double diff = phases[edges.u[e] * batch + node] - phases[edges.v[e] * batch + node];
      diff = diff < 0.0 ? -diff : diff;
      const double wrapped = kTwoPi - diff;
      const double gap = wrapped < diff ? wrapped : diff;
      const double ratio = gap / edges.length[e];
      best = best < ratio ? ratio : best;
    }
    lip[node] = best;
  }
}

}  // namespace vpd::simd::detail

#endif
