#include "vpd/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "vpd/dual.hpp"
#include "vpd/error.hpp"
#include "vpd/simd.hpp"

namespace vpd {

void QuadratureSpec::validate(std::size_t dim) const {
  if (mode == QuadratureMode::tensor_grid) {
    if (dim > kMaxTensorDim) {
      throw TensorTooHighDim("tensor-grid quadrature supports N <= 3, got N=" +
                             std::to_string(dim) + "; use Monte Carlo");
    }
    if (grid_points_per_dim < 2) throw InvalidArgument("grid needs at least 2 points per dim");
  } else if (mc_samples < 2) {
    throw InvalidArgument("Monte Carlo needs at least 2 samples");
  }
}

std::size_t QuadratureSpec::node_count(std::size_t dim) const {
  if (mode == QuadratureMode::monte_carlo) return mc_samples;
  std::size_t n = 1;
  for (std::size_t j = 0; j < dim; ++j) n *= grid_points_per_dim;
  return n;
}

std::string QuadratureSpec::describe() const {
  if (mode == QuadratureMode::tensor_grid) {
    return "tensor_grid(" + std::to_string(grid_points_per_dim) + ")";
  }
  return "monte_carlo(" + std::to_string(mc_samples) + ", seed=" + std::to_string(seed) + ")";
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("VPD_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

struct ChunkScratch {
  std::vector<double> theta, phase, cos_tab, sin_tab, lambda, lip, heat, values, squares;
};

// Fill theta (dimension-major) for nodes [begin, begin + count).
void fill_nodes(const QuadratureSpec& q, std::size_t dim, std::size_t chunk_index,
                std::size_t begin, std::size_t count, std::vector<double>& theta) {
  theta.assign(dim * count, 0.0);
  if (q.mode == QuadratureMode::tensor_grid) {
    const std::size_t gp = q.grid_points_per_dim;
    const double h = kTwoPi / static_cast<double>(gp);
    for (std::size_t node = 0; node < count; ++node) {
      std::size_t idx = begin + node;
      for (std::size_t j = 0; j < dim; ++j) {
        theta[j * count + node] = (static_cast<double>(idx % gp) + 0.5) * h;
        idx /= gp;
      }
    }
    return;
  }
  // Each chunk owns an independent stream derived from (seed, chunk).
  std::seed_seq seq{static_cast<std::uint32_t>(q.seed), static_cast<std::uint32_t>(q.seed >> 32),
                    static_cast<std::uint32_t>(chunk_index),
                    static_cast<std::uint32_t>(chunk_index >> 32), 0x9e3779b9u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unif(0.0, kTwoPi);
  for (std::size_t node = 0; node < count; ++node)
    for (std::size_t j = 0; j < dim; ++j) theta[j * count + node] = wrap_angle(unif(rng));
}

}  // namespace

std::vector<Estimate> integrate_torus(const QuotientGraph& g, const QuadratureSpec& q,
                                      double heat_t, std::span<const Integrand> integrands,
                                      std::size_t threads) {
  const std::size_t dim = g.n_offdiag();
  q.validate(dim);
  if (!(heat_t >= 0.0) || !std::isfinite(heat_t)) {
    throw InvalidArgument("diffusion time t must be finite and >= 0");
  }
  const std::size_t total = q.node_count(dim);
  const std::size_t n_chunks = (total + kQuadratureChunk - 1) / kQuadratureChunk;
  const std::size_t n_int = integrands.size();
  const std::size_t nv = g.n_vertices();
  const auto edges = simd::EdgeView::of(g.edges());
  const auto backend = simd::active_backend();

  // partial[(chunk * n_int + k) * 2 + {0: sum, 1: sum of squares}]
  std::vector<double> partial(n_chunks * n_int * 2, 0.0);

  auto run_chunk = [&](std::size_t c, ChunkScratch& s) {
    const std::size_t begin = c * kQuadratureChunk;
    const std::size_t count = std::min(kQuadratureChunk, total - begin);
    fill_nodes(q, dim, c, begin, count, s.theta);

    // Vertex-major phase table; the basepoint row is all zeros.
    s.phase.assign(nv * count, 0.0);
    std::copy(s.theta.begin(), s.theta.end(), s.phase.begin());
    s.cos_tab.resize(nv * count);
    s.sin_tab.resize(nv * count);
    for (std::size_t i = 0; i < nv * count; ++i) {
      s.cos_tab[i] = std::cos(s.phase[i]);
      s.sin_tab[i] = std::sin(s.phase[i]);
    }
    s.lambda.resize(count);
    s.lip.resize(count);
    simd::dirichlet_symbol_batch(backend, edges, s.cos_tab, s.sin_tab, count, s.lambda);
    simd::phase_lip_batch(backend, edges, s.phase, count, s.lip);

    s.heat.resize(count);
    for (std::size_t i = 0; i < count; ++i) s.heat[i] = std::exp(-heat_t * s.lambda[i]);

    NodeBatch batch{count, dim, s.theta, s.lambda, s.lip, s.heat};
    s.values.resize(count);
    s.squares.resize(count);
    for (std::size_t k = 0; k < n_int; ++k) {
      integrands[k](batch, s.values);
      for (std::size_t i = 0; i < count; ++i) s.squares[i] = s.values[i] * s.values[i];
      partial[(c * n_int + k) * 2] = pairwise_sum(s.values);
      partial[(c * n_int + k) * 2 + 1] = pairwise_sum(s.squares);
    }
  };

  const std::size_t workers = std::min(threads == 0 ? default_thread_count() : threads, n_chunks);
  if (workers <= 1) {
    ChunkScratch s;
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c, s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        ChunkScratch s;
        for (std::size_t c = next++; c < n_chunks; c = next++) {
          try {
            run_chunk(c, s);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<Estimate> out(n_int);
  std::vector<double> sums(n_chunks), squares(n_chunks);
  const double n = static_cast<double>(total);
  for (std::size_t k = 0; k < n_int; ++k) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      sums[c] = partial[(c * n_int + k) * 2];
      squares[c] = partial[(c * n_int + k) * 2 + 1];
    }
    const double mean = pairwise_sum(sums) / n;
    out[k].value = mean;
    if (q.mode == QuadratureMode::monte_carlo) {
      const double var = std::max(0.0, (pairwise_sum(squares) - n * mean * mean) / (n - 1.0));
      out[k].std_error = std::sqrt(var / n);
    }
  }
  return out;
}

}  // namespace vpd
