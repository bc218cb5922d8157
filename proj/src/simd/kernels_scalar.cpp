#include <algorithm>
#include <cmath>
#include <numbers>

#include "vpd/simd.hpp"

namespace vpd::simd::detail {

void dirichlet_scalar(const EdgeView& edges, const double* cos_table, const double* sin_table,
                      std::size_t batch, double* lambda) {
  for (std::size_t node = 0; node < batch; ++node) {
    double acc = 0.0;
    for (std::size_t e = 0; e < edges.count; ++e) {
      const std::size_t iu = edges.u[e] * batch + node;
      const std::size_t iv = edges.v[e] * batch + node;
      const double prod_c = cos_table[iu] * cos_table[iv];
      const double prod_s = sin_table[iu] * sin_table[iv];
      const double gap = std::max(1.0 - (prod_c + prod_s), 0.0);
      acc = acc + edges.weight[e] * gap;
    }
    lambda[node] = acc;
  }
}

void phase_lip_scalar(const EdgeView& edges, const double* phases, std::size_t batch,
                      double* lip) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t node = 0; node < batch; ++node) {
    double best = 0.0;
    for (std::size_t e = 0; e < edges.count; ++e) {
      const double diff = std::fabs(phases[edges.u[e] * batch + node] -
                                    phases[edges.v[e] * batch + node]);
      const double gap = std::min(diff, kTwoPi - diff);
      best = std::max(best, gap / edges.length[e]);
    }
    lip[node] = best;
  }
}

}  // namespace vpd::simd::detail
