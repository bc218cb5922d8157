#include <doctest.h>

#include <cstring>
#include <random>

#include "oracles.hpp"
#include "vpd/heat_kernel.hpp"
#include "vpd/simd.hpp"

using namespace vpd;

namespace {

std::vector<simd::Backend> backends() {
  std::vector<simd::Backend> out;
  for (auto b : {simd::Backend::scalar, simd::Backend::avx2, simd::Backend::neon})
    if (simd::available(b)) out.push_back(b);
  return out;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("backend names round-trip") {
  for (auto b : {simd::Backend::scalar, simd::Backend::avx2, simd::Backend::neon})
    CHECK(simd::parse_backend(simd::name(b)) == b);
  CHECK_FALSE(simd::parse_backend("sse9").has_value());
  CHECK(simd::available(simd::Backend::scalar));
  CHECK(simd::available(simd::active_backend()));
}

TEST_CASE("every backend is bit-identical to the scalar kernels, tails included") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    const auto g = oracle::random_graph(rng, n);
    const auto edges = simd::EdgeView::of(g.edges());
    const std::size_t nv = g.n_vertices();
    for (std::size_t batch = 1; batch <= 19; ++batch) {
      std::vector<double> ph(nv * batch), c(nv * batch), s(nv * batch);
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t k = 0; k < batch; ++k) {
          const double p = v + 1 == nv ? 0.0 : u(rng);
          ph[v * batch + k] = p;
          c[v * batch + k] = std::cos(p);
          s[v * batch + k] = std::sin(p);
        }
      std::vector<double> lam_ref(batch), lip_ref(batch);
      simd::dirichlet_symbol_batch(simd::Backend::scalar, edges, c, s, batch, lam_ref);
      simd::phase_lip_batch(simd::Backend::scalar, edges, ph, batch, lip_ref);
      for (auto b : backends()) {
        std::vector<double> lam(batch), lip(batch);
        simd::dirichlet_symbol_batch(b, edges, c, s, batch, lam);
        simd::phase_lip_batch(b, edges, ph, batch, lip);
        CHECK_MESSAGE(same_bits(lam, lam_ref), simd::name(b), " batch ", batch);
        CHECK_MESSAGE(same_bits(lip, lip_ref), simd::name(b), " batch ", batch);
      }
      // Per-node values agree with the single-point implementations.
      for (std::size_t k = 0; k < batch; ++k) {
        std::vector<double> th(n);
        for (std::size_t j = 0; j < n; ++j) th[j] = ph[j * batch + k];
        const TorusPoint p(th);
        CHECK(std::abs(lam_ref[k] - dirichlet_symbol(p, g)) <= 1e-12);
        CHECK(std::abs(lip_ref[k] - phase_lip(p, g)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("quadrature does not depend on the thread count") {
  std::mt19937_64 rng(12);
  const auto g = oracle::random_graph(rng, 2);
  const Integrand f = [](const NodeBatch& b, std::span<double> out) {
    for (std::size_t i = 0; i < b.count; ++i) out[i] = b.lip[i] * b.heat[i] + b.lambda[i];
  };
  for (const auto& q : {QuadratureSpec::tensor(97), QuadratureSpec::monte_carlo(20011, 5)}) {
    const auto one = integrate_torus(g, q, 0.7, std::span(&f, 1), 1);
    for (std::size_t threads : {2u, 3u, 8u}) {
      const auto many = integrate_torus(g, q, 0.7, std::span(&f, 1), threads);
      CHECK(std::memcmp(&one[0].value, &many[0].value, sizeof(double)) == 0);
      CHECK(std::memcmp(&one[0].std_error, &many[0].std_error, sizeof(double)) == 0);
    }
  }
}

TEST_CASE("pairwise summation is exact on integer data") {
  std::vector<double> v(10001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  CHECK(pairwise_sum(v) == 10000.0 * 10001.0 / 2.0);
  CHECK(pairwise_sum({}) == 0.0);
}
