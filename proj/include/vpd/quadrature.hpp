#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vpd/metric_pair.hpp"

namespace vpd {

enum class QuadratureMode { tensor_grid, monte_carlo };

struct QuadratureSpec {
  QuadratureMode mode = QuadratureMode::tensor_grid;
  std::size_t grid_points_per_dim = 64;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 0;

  static QuadratureSpec tensor(std::size_t points_per_dim) {
    return {QuadratureMode::tensor_grid, points_per_dim, 0, 0};
  }
  static QuadratureSpec monte_carlo(std::size_t samples, std::uint64_t seed) {
    return {QuadratureMode::monte_carlo, 0, samples, seed};
  }

  /// Tensor mode needs dim <= 3 (TensorTooHighDim); counts must be >= 2.
  void validate(std::size_t dim) const;
  std::size_t node_count(std::size_t dim) const;
  std::string describe() const;
};

inline constexpr std::size_t kMaxTensorDim = 3;

/// Mean of an integrand against normalized Haar measure. `std_error` is zero
/// for the tensor rule.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// A block of torus nodes with the per-node quantities every integrand needs.
/// theta is stored dimension-major: theta[j * count + node].
struct NodeBatch {
  std::size_t count = 0;
  std::size_t dim = 0;
  std::span<const double> theta;
  std::span<const double> lambda;  // Dirichlet symbol
  std::span<const double> lip;     // phase_lip, the upper bound on Lip_rho(chi)
  std::span<const double> heat;    // exp(-t lambda) for the sweep's t

  double theta_at(std::size_t j, std::size_t node) const { return theta[j * count + node]; }
};

/// Writes one value per node of the batch into `out`.
using Integrand = std::function<void(const NodeBatch&, std::span<double> out)>;

/// Integrates every integrand over T^N in a single sweep; `heat_t` selects the
/// heat weight exposed as NodeBatch::heat. Nodes are processed
/// in fixed-size chunks; each chunk is summed pairwise and the chunk partials
/// are summed pairwise in chunk order, so results do not depend on `threads`.
/// threads == 0 uses default_thread_count().
std::vector<Estimate> integrate_torus(const QuotientGraph& g, const QuadratureSpec& q,
                                      double heat_t, std::span<const Integrand> integrands,
                                      std::size_t threads = 0);

/// Worker count from VPD_THREADS, else hardware concurrency.
std::size_t default_thread_count();

/// Fixed-order pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

inline constexpr std::size_t kQuadratureChunk = 512;

}  // namespace vpd
