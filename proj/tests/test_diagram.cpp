#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "vpd/assignment.hpp"
#include "vpd/diagram.hpp"
#include "vpd/error.hpp"

using namespace vpd;

namespace {

// Plane points under l_inf with A = their diagonal projections.
MetricPair plane_pair(const std::vector<std::pair<double, double>>& pts) {
  std::vector<std::pair<double, double>> all = pts;
  std::vector<std::size_t> a;
  for (const auto& [b, d] : pts) {
    a.push_back(all.size());
    all.emplace_back(0.5 * (b + d), 0.5 * (b + d));
  }
  DistanceMatrix m(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      m(i, j) = std::max(std::abs(all[i].first - all[j].first), std::abs(all[i].second - all[j].second));
  return MetricPair::build(m, a);
}

}  // namespace

TEST_CASE("assignment solver matches permutation enumeration") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> c(n * n);
      for (auto& x : c) x = u(rng);
      const auto sol = solve_assignment(c, n);
      double got = 0.0;
      for (std::size_t i = 0; i < n; ++i) got += c[i * n + sol[i]];
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      double best = 1e300;
      do {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += c[i * n + perm[i]];
        best = std::min(best, s);
      } while (std::next_permutation(perm.begin(), perm.end()));
      CHECK(got == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("single point against the empty diagram goes to the basepoint") {
  const auto g = QuotientGraph::from_pair(oracle::line_pair());
  const Diagram a(std::vector<std::int64_t>{1, 0});
  const auto m = w1_matching(a, Diagram(2), g);
  CHECK(m.total_cost == 1.0);
  REQUIRE(m.pairs.size() == 1);
  CHECK(m.pairs[0] == MatchedPair{0, g.basepoint(), 1});
}

TEST_CASE("w1 of a diagram with itself is zero") {
  const auto g = QuotientGraph::from_pair(oracle::line_pair());
  const Diagram a(std::vector<std::int64_t>{2, 3});
  CHECK(w1_distance(a, a, g) == 0.0);
  CHECK(w1_bruteforce(Diagram(2), Diagram(2), g) == 0.0);
}

TEST_CASE("classical (1,3) point against the empty diagram costs 1") {
  const auto g = QuotientGraph::from_pair(plane_pair({{1.0, 3.0}}));
  CHECK(w1_distance(Diagram(std::vector<std::int64_t>{1}), Diagram(1), g) == 1.0);
}

TEST_CASE("two copies of x1 against one x2 on the line triangle") {
  const auto g = QuotientGraph::from_pair(oracle::line_pair());
  const Diagram a(std::vector<std::int64_t>{2, 0}), b(std::vector<std::int64_t>{0, 1});
  // Candidates: x1->x2 and x1->A (1 + 1), both x1->A and x2->A (1 + 1 + 2).
  CHECK(w1_bruteforce(a, b, g) == 2.0);
  CHECK(w1_distance(a, b, g) == 2.0);
}

TEST_CASE("matching marginals reproduce both diagrams") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = oracle::random_graph(rng, 4);
    const auto a = oracle::random_diagram(rng, 4, 5), b = oracle::random_diagram(rng, 4, 5);
    const auto m = w1_matching(a, b, g);
    std::vector<std::int64_t> out(5, 0), in(5, 0);
    double cost = 0.0;
    for (const auto& p : m.pairs) {
      out[p.source] += p.multiplicity;
      in[p.target] += p.multiplicity;
      cost += static_cast<double>(p.multiplicity) * g.distance(p.source, p.target);
    }
    for (std::size_t v = 0; v < 4; ++v) {
      CHECK(out[v] == a.counts[v]);
      CHECK(in[v] == b.counts[v]);
    }
    CHECK(cost == doctest::Approx(m.total_cost).epsilon(1e-12));
  }
}

TEST_CASE("exact solver, brute force and raw-metric oracle agree") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(1, 4), na(1, 3), split_pts(0, 6);
    const std::size_t n = nd(rng), n_a = na(rng);
    const auto pair = oracle::random_pair(rng, n + n_a, n_a);
    const auto g = QuotientGraph::from_pair(pair);
    const std::size_t total = split_pts(rng);
    std::uniform_int_distribution<std::size_t> take(0, total);
    const std::size_t ka = take(rng);
    Diagram da(n), db(n);
    std::uniform_int_distribution<std::size_t> vert(0, n - 1);
    for (std::size_t i = 0; i < ka; ++i) ++da.counts[vert(rng)];
    for (std::size_t i = ka; i < total; ++i) ++db.counts[vert(rng)];
    const double exact = w1_distance(da, db, g);
    CHECK(exact == doctest::Approx(w1_bruteforce(da, db, g)).epsilon(1e-12));
    CHECK(exact == doctest::Approx(oracle::w1_raw(pair, da, db)).epsilon(1e-12));
    CHECK(exact == doctest::Approx(w1_distance(db, da, g)).epsilon(1e-12));
  }
}

TEST_CASE("brute force refuses large inputs and dimension mismatches are caught") {
  const auto g = QuotientGraph::from_pair(oracle::line_pair());
  CHECK_THROWS_AS(w1_bruteforce(Diagram(std::vector<std::int64_t>{4, 3}), Diagram(2), g), TooLarge);
  CHECK_THROWS_AS(w1_distance(Diagram(3), Diagram(2), g), GraphMismatch);
  CHECK_THROWS_AS(rho(VirtualDiagram(3), VirtualDiagram(3), g), GraphMismatch);
  CHECK_THROWS_AS(Diagram(std::vector<std::int64_t>{-1}), InvalidArgument);
}

TEST_CASE("split gives the canonical disjoint representative") {
  auto [p, n] = split(VirtualDiagram(std::vector<std::int64_t>{3, -2}));
  CHECK(p.counts == std::vector<std::int64_t>{3, 0});
  CHECK(n.counts == std::vector<std::int64_t>{0, 2});
  std::tie(p, n) = split(VirtualDiagram(3));
  CHECK(p.empty());
  CHECK(n.empty());
  std::tie(p, n) = split(VirtualDiagram(std::vector<std::int64_t>{-1, 0, 5}));
  CHECK(p.counts == std::vector<std::int64_t>{0, 0, 5});
  CHECK(n.counts == std::vector<std::int64_t>{1, 0, 0});
}

TEST_CASE("rho of e_x - e_y is the edge length when the direct route wins") {
  const auto g = QuotientGraph::from_pair(oracle::line_pair());
  const VirtualDiagram v(std::vector<std::int64_t>{1, -1});
  CHECK(rho_norm(v, g) == 1.0);
  CHECK(rho(v, v, g) == 0.0);
}

TEST_CASE("rho is a translation-invariant metric independent of representatives") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(1, 4);
    const std::size_t n = nd(rng);
    const auto g = oracle::random_graph(rng, n);
    const auto u = oracle::random_virtual(rng, n, 3), v = oracle::random_virtual(rng, n, 3),
               w = oracle::random_virtual(rng, n, 3);
    const double uv = rho(u, v, g);
    CHECK(uv == doctest::Approx(rho(v, u, g)).epsilon(1e-12));
    CHECK(uv <= rho(u, w, g) + rho(w, v, g) + 1e-9);
    CHECK(std::abs(rho(u + w, v + w, g) - uv) <= 1e-9);
    CHECK((uv == 0.0) == (u == v));
    // Non-canonical representative: (a + c) - (b + c) gives the same class.
    const auto [a, b] = split(u);
    const auto [c, e] = split(v);
    const Diagram extra = oracle::random_diagram(rng, n, 2);
    const double via = w1_distance(a + extra + e, c + b + extra, g);
    CHECK(std::abs(via - uv) <= 1e-9);
  }
}

TEST_CASE("rho is bounded below by the smallest ground distance") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_graph(rng, 3);
    const auto u = oracle::random_virtual(rng, 3, 2), v = oracle::random_virtual(rng, 3, 2);
    if (u == v) continue;
    CHECK(rho(u, v, g) >= g.d_min() - 1e-12);
  }
}
