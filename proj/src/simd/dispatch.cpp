#include <algorithm>
#include <cstdlib>
#include <string>

#include "vpd/error.hpp"
#include "vpd/simd.hpp"

namespace vpd::simd {

std::string_view name(Backend b) noexcept {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

std::optional<Backend> parse_backend(std::string_view s) noexcept {
  if (s == "scalar") return Backend::scalar;
  if (s == "avx2") return Backend::avx2;
  if (s == "neon") return Backend::neon;
  return std::nullopt;
}

bool available(Backend b) noexcept {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

namespace {

Backend detect() noexcept {
  if (const char* env = std::getenv("VPD_SIMD")) {
    if (auto b = parse_backend(env); b && available(*b)) return *b;
  }
  if (available(Backend::avx2)) return Backend::avx2;
  if (available(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

void check_sizes(std::size_t table, std::size_t vertices, std::size_t batch, std::size_t out) {
  if (table < vertices * batch || out < batch) {
    throw InvalidArgument("simd kernel buffers too small for batch of " + std::to_string(batch));
  }
}

std::size_t vertex_count(const EdgeView& edges) {
  std::size_t n = 0;
  for (std::size_t e = 0; e < edges.count; ++e) {
    n = std::max<std::size_t>(n, std::max(edges.u[e], edges.v[e]) + 1);
  }
  return n;
}

}  // namespace

Backend active_backend() noexcept {
  static const Backend backend = detect();
  return backend;
}

void dirichlet_symbol_batch(Backend b, const EdgeView& edges, std::span<const double> cos_table,
                            std::span<const double> sin_table, std::size_t batch,
                            std::span<double> lambda) {
  const std::size_t nv = vertex_count(edges);
  check_sizes(std::min(cos_table.size(), sin_table.size()), nv, batch, lambda.size());
  if (!available(b)) b = Backend::scalar;
  switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
      detail::dirichlet_avx2(edges, cos_table.data(), sin_table.data(), batch, lambda.data());
      return;
#endif
#if defined(__aarch64__)
    case Backend::neon:
      detail::dirichlet_neon(edges, cos_table.data(), sin_table.data(), batch, lambda.data());
      return;
#endif
    default:
      detail::dirichlet_scalar(edges, cos_table.data(), sin_table.data(), batch, lambda.data());
  }
}

void phase_lip_batch(Backend b, const EdgeView& edges, std::span<const double> phases,
                     std::size_t batch, std::span<double> lip) {
  check_sizes(phases.size(), vertex_count(edges), batch, lip.size());
  if (!available(b)) b = Backend::scalar;
  switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
      detail::phase_lip_avx2(edges, phases.data(), batch, lip.data());
      return;
#endif
#if defined(__aarch64__)
    case Backend::neon:
      detail::phase_lip_neon(edges, phases.data(), batch, lip.data());
      return;
#endif
    default:
      detail::phase_lip_scalar(edges, phases.data(), batch, lip.data());
  }
}

}  // namespace vpd::simd
