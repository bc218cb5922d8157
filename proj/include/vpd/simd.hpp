#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "vpd/metric_pair.hpp"

// Batched edge kernels evaluated at many torus points at once.
//
// Layout: per-vertex tables are stored vertex-major, `table[vertex * batch + node]`,
// so each vector lane holds one torus point and the edge loop runs in the same
// order in every lane. Every backend performs the identical sequence of IEEE
// operations per lane (no FMA contraction), so results are bit-identical
// across backends.

namespace vpd::simd {

enum class Backend { scalar, avx2, neon };

std::string_view name(Backend b) noexcept;
std::optional<Backend> parse_backend(std::string_view s) noexcept;

/// Whether the running CPU and this build can execute `b`.
bool available(Backend b) noexcept;

/// Best available backend, unless VPD_SIMD names another available one.
Backend active_backend() noexcept;

struct EdgeView {
  const std::uint32_t* u;
  const std::uint32_t* v;
  const double* length;
  const double* weight;
  std::size_t count;

  static EdgeView of(const EdgeList& e) noexcept {
    return {e.u.data(), e.v.data(), e.length.data(), e.weight.data(), e.size()};
  }
};

/// lambda[node] = sum_e w_e * max(0, 1 - (cos_u cos_v + sin_u sin_v)).
/// `cos_table`/`sin_table` hold cos/sin of each vertex phase.
void dirichlet_symbol_batch(Backend b, const EdgeView& edges, std::span<const double> cos_table,
                            std::span<const double> sin_table, std::size_t batch,
                            std::span<double> lambda);

/// lip[node] = max_e circle_dist(phase_u, phase_v) / length_e,
/// circle_dist(a, b) = min(|a - b|, 2pi - |a - b|) for phases in [0, 2pi).
void phase_lip_batch(Backend b, const EdgeView& edges, std::span<const double> phases,
                     std::size_t batch, std::span<double> lip);

inline void dirichlet_symbol_batch(const EdgeView& edges, std::span<const double> cos_table,
                                   std::span<const double> sin_table, std::size_t batch,
                                   std::span<double> lambda) {
  dirichlet_symbol_batch(active_backend(), edges, cos_table, sin_table, batch, lambda);
}

inline void phase_lip_batch(const EdgeView& edges, std::span<const double> phases,
                            std::size_t batch, std::span<double> lip) {
  phase_lip_batch(active_backend(), edges, phases, batch, lip);
}

namespace detail {
// Raw-pointer entry points implemented per backend.
void dirichlet_scalar(const EdgeView&, const double*, const double*, std::size_t, double*);
void phase_lip_scalar(const EdgeView&, const double*, std::size_t, double*);
#if defined(__x86_64__) || defined(_M_X64)
void dirichlet_avx2(const EdgeView&, const double*, const double*, std::size_t, double*);
void phase_lip_avx2(const EdgeView&, const double*, std::size_t, double*);
#endif
#if defined(__aarch64__)
void dirichlet_neon(const EdgeView&, const double*, const double*, std::size_t, double*);
void phase_lip_neon(const EdgeView&, const double*, std::size_t, double*);
#endif
}  // namespace detail

}  // namespace vpd::simd
