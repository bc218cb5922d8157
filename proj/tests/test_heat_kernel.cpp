#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vpd/error.hpp"
#include "vpd/heat_kernel.hpp"

using namespace vpd;
using std::numbers::pi;

namespace {

const auto kGrid = QuadratureSpec::tensor(64);

VirtualDiagram vd(std::vector<std::int64_t> c) { return VirtualDiagram(std::move(c)); }

// Midpoint tensor rule for N = 2 summed in reverse node order.
double reverse_order_kernel(double t, const VirtualDiagram& gamma, const QuotientGraph& g, std::size_t m) {
  long double s = 0.0;
  for (std::size_t a = m; a-- > 0;)
    for (std::size_t b = m; b-- > 0;) {
      const TorusPoint p({(a + 0.5) * 2 * pi / m, (b + 0.5) * 2 * pi / m});
      s += std::cos(pairing(gamma, p)) * std::exp(-t * dirichlet_symbol(p, g));
    }
  return static_cast<double>(s / (m * m));
}

}  // namespace

TEST_CASE("heat mass") {
  const auto g = oracle::single_edge();
  CHECK(heat_mass(0.0, g, kGrid).value == 1.0);
  const double bessel = std::exp(-1.0) * std::cyl_bessel_i(0.0, 1.0);
  const double dense = oracle::circle_mean([](double th) { return std::exp(-(1 - std::cos(th))); });
  CHECK(std::abs(dense - bessel) <= 1e-10);
  CHECK(std::abs(heat_mass(1.0, g, kGrid).value - bessel) <= 1e-10);
  CHECK(bessel == doctest::Approx(0.4658).epsilon(1e-4));
  CHECK_THROWS_AS(heat_mass(-1.0, g, kGrid), InvalidArgument);
}

TEST_CASE("heat mass and Lipschitz prefactor are nonincreasing in t") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracle::random_graph(rng, 1 + trial % 2);
    double pm = 2.0, pl = 1e300;
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const auto p = heat_profile(t, g, kGrid);
      CHECK(p.mass.value <= pm + 1e-8);
      CHECK(p.lip_prefactor.value <= pl + 1e-8);
      CHECK(p.mass.value > 0.0);
      CHECK(p.spectral_moment.value > 0.0);
      pm = p.mass.value;
      pl = p.lip_prefactor.value;
    }
  }
}

TEST_CASE("kernel at t = 0 is the Kronecker delta") {
  std::mt19937_64 rng(32);
  const auto g = oracle::random_graph(rng, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = oracle::random_virtual(rng, 2, 3), v = oracle::random_virtual(rng, 2, 3);
    const double k = kernel_eval(0.0, u, v, g, kGrid).value;
    CHECK(std::abs(k - (u == v ? 1.0 : 0.0)) <= 1e-10);
  }
}

TEST_CASE("single-edge kernel matches the 1-D oracle, and Monte Carlo stays in band") {
  const auto g = oracle::single_edge();
  const double dense =
      oracle::circle_mean([](double th) { return std::cos(th) * std::exp(-(1 - std::cos(th))); });
  CHECK(std::abs(dense - std::exp(-1.0) * std::cyl_bessel_i(1.0, 1.0)) <= 1e-10);
  const auto k = kernel_eval(1.0, vd({1}), VirtualDiagram(1), g, kGrid);
  CHECK(std::abs(k.value - dense) <= 1e-10);
  const auto mc = kernel_eval(1.0, vd({1}), VirtualDiagram(1), g, QuadratureSpec::monte_carlo(100000, 9));
  CHECK(mc.std_error > 0.0);
  CHECK(std::abs(mc.value - dense) <= 3 * mc.std_error);
  const auto mm = heat_mass(1.0, g, QuadratureSpec::monte_carlo(100000, 10));
  CHECK(std::abs(mm.value - std::exp(-1.0) * std::cyl_bessel_i(0.0, 1.0)) <= 3 * mm.std_error);
}

TEST_CASE("kernel is bounded by the mass, real and translation invariant") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracle::random_graph(rng, 2);
    const auto u = oracle::random_virtual(rng, 2, 2), v = oracle::random_virtual(rng, 2, 2),
               w = oracle::random_virtual(rng, 2, 2);
    const double mass = heat_mass(1.0, g, kGrid).value;
    const auto k = kernel_eval(1.0, u, v, g, kGrid);
    CHECK(std::abs(k.value) <= mass + 1e-12);
    CHECK(std::abs(k.imag) < 1e-10);
    CHECK(std::abs(kernel_eval(1.0, v, v, g, kGrid).value - mass) <= 1e-12);
    CHECK(std::abs(kernel_eval(1.0, u + w, v + w, g, kGrid).value - k.value) <= 1e-12);
    CHECK(std::abs(reverse_order_kernel(1.0, u - v, g, 64) - k.value) <= 1e-12);
  }
  CHECK_THROWS_AS(kernel_eval(1.0, VirtualDiagram(1), VirtualDiagram(2), oracle::single_edge(), kGrid),
                  DimensionMismatch);
}

TEST_CASE("Gram matrices") {
  const auto g = oracle::single_edge();
  const VirtualDiagram one[] = {vd({2})};
  const auto G1 = gram_matrix(1.0, one, g, kGrid);
  REQUIRE(G1.rows() == 1);
  CHECK(G1(0, 0) == doctest::Approx(heat_mass(1.0, g, kGrid).value).epsilon(1e-14));

  const VirtualDiagram dup[] = {vd({1}), vd({1}), vd({-1})};
  const auto Gd = gram_matrix(1.0, dup, g, kGrid);
  CHECK(min_eigenvalue(Gd) <= 1e-12);
  CHECK(min_eigenvalue(Gd) >= -1e-8 * Gd.trace());

  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g2 = oracle::random_graph(rng, 2);
    std::vector<VirtualDiagram> vs;
    for (int i = 0; i < 6; ++i) vs.push_back(oracle::random_virtual(rng, 2, 3));
    const auto G = gram_matrix(0.5, vs, g2, kGrid);
    CHECK((G - G.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(min_eigenvalue(G) >= -1e-8 * G.trace());
  }
  CHECK_THROWS_AS(gram_matrix(1.0, std::span<const VirtualDiagram>{}, g, kGrid), InvalidArgument);
}

TEST_CASE("prefactor integrals on a single edge") {
  const auto g = oracle::single_edge();
  const double third = oracle::circle_mean([](double th) {
    const double d = std::min(th, 2 * pi - th);
    return d * d;
  });
  CHECK(third == doctest::Approx(pi * pi / 3).epsilon(1e-7));
  CHECK(lip_prefactor(0.0, g, QuadratureSpec::tensor(4096)).value == doctest::Approx(pi * pi / 3).epsilon(1e-6));
  CHECK(spectral_moment(0.0, g, kGrid).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lip_prefactor(50.0, g, kGrid).value < lip_prefactor(1.0, g, kGrid).value);

  const double sm1 = oracle::circle_mean([](double th) {
    const double l = 1 - std::cos(th);
    return l * std::exp(-l);
  });
  CHECK(std::abs(spectral_moment(1.0, g, kGrid).value - sm1) <= 1e-10);
  const auto mc = spectral_moment(1.0, g, QuadratureSpec::monte_carlo(100000, 3));
  CHECK(std::abs(mc.value - sm1) <= 3 * mc.std_error);
}

TEST_CASE("spectral and geometric majorants of the prefactor") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracle::random_graph(rng, 1 + trial % 2);
    const double c = pi * pi / (2 * g.w_min() * g.d_min() * g.d_min());
    for (double t : {0.0, 0.5, 2.0, 10.0}) {
      const auto p = heat_profile(t, g, kGrid);
      CHECK(p.lip_prefactor.value <= c * p.spectral_moment.value * (1 + 1e-9));
      CHECK(p.lip_prefactor.value <= p.geometric_bound.value * (1 + 1e-9));
      CHECK(p.lip_transform.value * p.lip_transform.value <= p.lip_prefactor.value * p.mass.value * (1 + 1e-9));
    }
  }
}

TEST_CASE("tensor quadrature refuses dimension 4") {
  std::mt19937_64 rng(36);
  const auto g = oracle::random_graph(rng, 4);
  CHECK_THROWS_AS(heat_mass(1.0, g, kGrid), TensorTooHighDim);
  CHECK(heat_mass(1.0, g, QuadratureSpec::monte_carlo(1000, 1)).value > 0.0);
}

TEST_CASE("RKHS Lipschitz bound holds for kernel combinations") {
  const auto g = oracle::single_edge();
  {
    const VirtualDiagram none[] = {VirtualDiagram(1)};
    const double zero[] = {0.0};
    const auto pairs = random_virtual_pairs(20, 1, 2, 1);
    const auto r = rkhs_function_lip_check(1.0, g, kGrid, none, zero, pairs);
    CHECK(r.lip_bound == 0.0);
    CHECK(r.empirical_ratio_max == 0.0);
  }
  {
    const VirtualDiagram c[] = {VirtualDiagram(1)};
    const double a[] = {1.0};
    std::vector<std::pair<VirtualDiagram, VirtualDiagram>> pairs;
    for (int x = -2; x <= 2; ++x)
      for (int y = -2; y <= 2; ++y)
        if (x != y) pairs.emplace_back(vd({x}), vd({y}));
    const auto r = rkhs_function_lip_check(1.0, g, kGrid, c, a, pairs);
    CHECK(r.pairs_evaluated == pairs.size());
    CHECK(r.empirical_ratio_max > 0.0);
    CHECK(r.empirical_ratio_max <= r.lip_bound);
  }
  std::mt19937_64 rng(37);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    const auto g2 = oracle::random_graph(rng, 2);
    std::vector<VirtualDiagram> c;
    std::vector<double> a;
    for (int i = 0; i < 3; ++i) {
      c.push_back(oracle::random_virtual(rng, 2, 2));
      a.push_back(nd(rng));
    }
    const auto pairs = random_virtual_pairs(100, 2, 3, 100 + trial);
    const auto r = rkhs_function_lip_check(1.0, g2, kGrid, c, a, pairs);
    CHECK(r.empirical_ratio_max <= r.lip_bound * (1 + 1e-9));
  }
}

TEST_CASE("random virtual pairs are distinct and deterministic") {
  const auto a = random_virtual_pairs(50, 3, 2, 4), b = random_virtual_pairs(50, 3, 2, 4);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first == b[i].first);
    CHECK(a[i].second == b[i].second);
    CHECK_FALSE(a[i].first == a[i].second);
  }
}
