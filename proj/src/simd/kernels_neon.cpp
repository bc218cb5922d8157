#if defined(__aarch64__)

#include <arm_neon.h>

#include <numbers>

#include "vpd/simd.hpp"

// Two lanes per vector. vmulq/vaddq are kept separate (no vfmaq) so each lane
// rounds exactly like the scalar kernel.

namespace vpd::simd::detail {

void dirichlet_neon(const EdgeView& edges, const double* cos_table, const double* sin_table,
                    std::size_t batch, double* lambda) {
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t node = 0;
  for (; node + 2 <= batch; node += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t e = 0; e < edges.count; ++e) {
      const std::size_t iu = edges.u[e] * batch + node;
      const std::size_t iv = edges.v[e] * batch + node;
      const float64x2_t prod_c = vmulq_f64(vld1q_f64(cos_table + iu), vld1q_f64(cos_table + iv));
      const float64x2_t prod_s = vmulq_f64(vld1q_f64(sin_table + iu), vld1q_f64(sin_table + iv));
      const float64x2_t gap = vmaxq_f64(vsubq_f64(one, vaddq_f64(prod_c, prod_s)), zero);
      acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(edges.weight[e]), gap));
    }
    vst1q_f64(lambda + node, acc);
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

void phase_lip_neon(const EdgeView& edges, const double* phases, std::size_t batch,
                    double* lip) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const float64x2_t two_pi = vdupq_n_f64(kTwoPi);
  std::size_t node = 0;
  for (; node + 2 <= batch; node += 2) {
    float64x2_t best = vdupq_n_f64(0.0);
    for (std::size_t e = 0; e < edges.count; ++e) {
      const float64x2_t a = vld1q_f64(phases + edges.u[e] * batch + node);
      const float64x2_t b = vld1q_f64(phases + edges.v[e] * batch + node);
      const float64x2_t diff = vabsq_f64(vsubq_f64(a, b));
      const float64x2_t gap = vminq_f64(diff, vsubq_f64(two_pi, diff));
      best = vmaxq_f64(best, vdivq_f64(gap, vdupq_n_f64(edges.length[e])));
    }
    vst1q_f64(lip + node, best);
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
