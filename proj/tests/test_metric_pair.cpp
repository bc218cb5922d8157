#include <cmath>
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vpd/error.hpp"
#include "vpd/metric_pair.hpp"

using namespace vpd;

TEST_CASE("line pair builds with N = 2") {
  const auto p = oracle::line_pair();
  CHECK(p.n_offdiag() == 2);
  CHECK(p.off_diagonal() == std::vector<std::size_t>{1, 2});
  CHECK(p.distance_to_a(2) == 2.0);
}

TEST_CASE("triangle inequality violation names the triple") {
  const auto d = DistanceMatrix::from_rows({{0, 5, 10}, {5, 0, 1}, {10, 1, 0}});
  try {
    MetricPair::build(d, {0});
    FAIL("expected MetricViolation");
  } catch (const MetricViolation& e) {
    CHECK(std::string(e.what()).find("(0,1,2)") != std::string::npos);
    CHECK(e.kind() == "MetricViolation");
  }
}

TEST_CASE("other metric axioms are enforced") {
  CHECK_THROWS_AS(MetricPair::build(DistanceMatrix::from_rows({{0, 1}, {2, 0}}), {0}), MetricViolation);
  CHECK_THROWS_AS(MetricPair::build(DistanceMatrix::from_rows({{1, 1}, {1, 0}}), {0}), MetricViolation);
  CHECK_THROWS_AS(MetricPair::build(DistanceMatrix::from_rows({{0, 0}, {0, 0}}), {0}), MetricViolation);
  CHECK_THROWS_AS(DistanceMatrix::from_rows({{0, 1}, {1}}), MetricViolation);
}

TEST_CASE("subset A must be nonempty, in range and proper") {
  const auto d = oracle::line_pair().dist();
  CHECK_THROWS_AS(MetricPair::build(d, {}), EmptySubset);
  CHECK_THROWS_AS(MetricPair::build(d, {0, 1, 2}), SubsetCoversAll);
  CHECK_THROWS_AS(MetricPair::build(d, {7}), InvalidArgument);
}

TEST_CASE("quotient metric on the line example") {
  const auto q = quotient_metric_1(oracle::line_pair());
  // vertices: x1, x2, [A]
  CHECK(q(0, 1) == 1.0);
  CHECK(q(0, 2) == 1.0);
  CHECK(q(1, 2) == 2.0);
  CHECK(q(0, 0) == 0.0);
}

TEST_CASE("quotient metric routes through A when that is shorter") {
  // p, q far apart but close to different points of A.
  const auto d = DistanceMatrix::from_rows({
      {0, 10, 1, 9},   // p
      {10, 0, 9, 2},   // q
      {1, 9, 0, 8},    // a1
      {9, 2, 8, 0}});  // a2
  const auto q = quotient_metric_1(MetricPair::build(d, {2, 3}));
  CHECK(q(0, 1) == 3.0);
  CHECK(q(0, 2) == 1.0);
  CHECK(q(1, 2) == 2.0);
}

TEST_CASE("graph model of a two-vertex quotient") {
  DistanceMatrix d(2);
  d(0, 1) = d(1, 0) = 1.0;
  const auto g = QuotientGraph::build(d);
  CHECK(g.edge_count() == 1);
  CHECK(g.w_min() == 1.0);
  CHECK(g.d_min() == 1.0);
  CHECK(g.basepoint() == 1);
}

TEST_CASE("graph model of the line example is a 1-1-2 triangle") {
  const auto g = QuotientGraph::from_pair(oracle::line_pair());
  CHECK(g.edge_count() == 3);
  std::vector<double> lengths = g.edges().length;
  std::sort(lengths.begin(), lengths.end());
  CHECK(lengths == std::vector<double>{1, 1, 2});
  CHECK(g.edges().weight == g.edges().length);
  CHECK(g.w_max() == 2.0);
  CHECK(g.d_max() == 2.0);
  CHECK(g.shortest_paths() == g.metric());
}

TEST_CASE("random pairs: quotient is a metric, below d, and equals graph shortest paths") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> n_dist(2, 8);
    const std::size_t n = n_dist(rng);
    std::uniform_int_distribution<std::size_t> a_dist(1, n - 1);
    const auto p = oracle::random_pair(rng, n, a_dist(rng));
    const auto q = quotient_metric_1(p);
    CHECK_NOTHROW(validate_metric(q));
    const auto& off = p.off_diagonal();
    for (std::size_t i = 0; i < off.size(); ++i) {
      for (std::size_t j = 0; j < off.size(); ++j) CHECK(q(i, j) <= p.dist()(off[i], off[j]));
      CHECK(q(i, off.size()) == p.distance_to_a(off[i]));
    }
    const auto g = QuotientGraph::build(q);
    // A direct edge is already a shortest path, up to rounding in the sums.
    const auto sp = g.shortest_paths();
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) CHECK(std::abs(sp(i, j) - q(i, j)) <= 1e-12);
    CHECK(g.edge_count() == (off.size() + 1) * off.size() / 2);
  }
}
