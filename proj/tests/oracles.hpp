// Independent reference implementations used by the unit and acceptance
// tests. None of these call into the code paths they are used to check.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "vpd/cubical.hpp"
#include "vpd/diagram.hpp"
#include "vpd/dual.hpp"
#include "vpd/metric_pair.hpp"

namespace oracle {

// Random Euclidean (or l1) point cloud with a random nonempty strict subset A.
inline vpd::MetricPair random_pair(std::mt19937_64& rng, std::size_t n, std::size_t n_a) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const bool l1 = u(rng) < 0.3;
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  vpd::DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1];
      d(i, j) = i == j ? 0.0 : (l1 ? std::abs(dx) + std::abs(dy) : std::hypot(dx, dy));
    }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(n_a);
  return vpd::MetricPair::build(d, idx);
}

inline vpd::QuotientGraph random_graph(std::mt19937_64& rng, std::size_t n_offdiag) {
  std::uniform_int_distribution<std::size_t> na(1, 3);
  const std::size_t n_a = na(rng);
  return vpd::QuotientGraph::from_pair(random_pair(rng, n_offdiag + n_a, n_a));
}

// Single edge [A] -- x1 with w = l = 1.
inline vpd::QuotientGraph single_edge(double length = 1.0) {
  vpd::DistanceMatrix d(2);
  d(0, 1) = d(1, 0) = length;
  return vpd::QuotientGraph::from_pair(vpd::MetricPair::build(d, {0}));
}

// Three points on a line at 0, 1, 2 with A = {0}.
inline vpd::MetricPair line_pair() {
  return vpd::MetricPair::build(vpd::DistanceMatrix::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}), {0});
}

// W1 on the raw ground metric: each point of `a` either pairs with a distinct
// point of `b` at cost d(x, y) or is left unmatched at cost d(x, A); leftover
// points of `b` pay d(y, A). Diagram entries are indexed like
// pair.off_diagonal().
inline double w1_raw(const vpd::MetricPair& pair, const vpd::Diagram& a, const vpd::Diagram& b) {
  const auto& off = pair.off_diagonal();
  std::vector<std::size_t> pa, pb;
  for (std::size_t v = 0; v < a.dim(); ++v)
    for (std::int64_t k = 0; k < a.counts[v]; ++k) pa.push_back(off[v]);
  for (std::size_t v = 0; v < b.dim(); ++v)
    for (std::int64_t k = 0; k < b.counts[v]; ++k) pb.push_back(off[v]);
  std::vector<bool> used(pb.size(), false);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double)> go = [&](std::size_t i, double acc) {
    if (acc >= best) return;
    if (i == pa.size()) {
      for (std::size_t j = 0; j < pb.size(); ++j)
        if (!used[j]) acc += pair.distance_to_a(pb[j]);
      best = std::min(best, acc);
      return;
    }
    go(i + 1, acc + pair.distance_to_a(pa[i]));
    for (std::size_t j = 0; j < pb.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      go(i + 1, acc + pair.dist()(pa[i], pb[j]));
      used[j] = false;
    }
  };
  go(0, 0.0);
  return best;
}

// lambda via the explicit Laplacian matrix: (1/2) z^H (D - W) z, z_v = exp(i phi_v).
inline double laplacian_form(const vpd::QuotientGraph& g, const std::vector<double>& theta) {
  const std::size_t n = g.n_vertices();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) {
        const double w = g.metric()(u, v);
        L(u, v) -= w;
        L(u, u) += w;
      }
  Eigen::VectorXcd z(n);
  for (std::size_t v = 0; v < n; ++v) {
    const double phi = v + 1 == n ? 0.0 : theta[v];
    z(v) = std::polar(1.0, phi);
  }
  return 0.5 * (z.adjoint() * L.cast<std::complex<double>>() * z)(0, 0).real();
}

// Dense 1-D midpoint rule on [0, 2pi) normalized by 2pi.
inline double circle_mean(const std::function<double(double)>& f, std::size_t n = 10000) {
  long double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += f((k + 0.5) * 2.0 * std::numbers::pi / n);
  return static_cast<double>(s / n);
}

// Betti numbers of the sublevel complex {value <= s} of the V-construction:
// b0 by union-find on pixels and 4-neighbour edges, b1 = b0 - (V - E + F).
struct Betti {
  int b0 = 0;
  int b1 = 0;
};
inline Betti sublevel_betti(const vpd::GrayImage& img, double s) {
  const std::size_t W = img.width, H = img.height;
  std::vector<std::size_t> parent(W * H);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto in = [&](std::size_t r, std::size_t c) { return img.at(r, c) <= s; };
  long V = 0, E = 0, F = 0;
  for (std::size_t r = 0; r < H; ++r)
    for (std::size_t c = 0; c < W; ++c) {
      if (!in(r, c)) continue;
      ++V;
      if (c + 1 < W && in(r, c + 1)) {
        ++E;
        parent[find(r * W + c)] = find(r * W + c + 1);
      }
      if (r + 1 < H && in(r + 1, c)) {
        ++E;
        parent[find(r * W + c)] = find((r + 1) * W + c);
      }
      if (r + 1 < H && c + 1 < W && in(r, c + 1) && in(r + 1, c) && in(r + 1, c + 1)) ++F;
    }
  Betti b;
  for (std::size_t r = 0; r < H; ++r)
    for (std::size_t c = 0; c < W; ++c)
      if (in(r, c) && find(r * W + c) == r * W + c) ++b.b0;
  b.b1 = static_cast<int>(b.b0 - (V - E + F));
  return b;
}

// Betti numbers read off a diagram: points with birth <= s < death.
inline Betti diagram_betti(const vpd::RawDiagram& rd, double s) {
  Betti b;
  for (const auto& p : rd.points)
    if (p.birth <= s && s < p.death) (p.dim == 0 ? b.b0 : b.b1)++;
  return b;
}

// Bottleneck distance between finite diagrams (l_inf, diagonal allowed) by
// trying every candidate threshold with a bipartite perfect-matching check.
inline double bottleneck(const std::vector<std::pair<double, double>>& P,
                         const std::vector<std::pair<double, double>>& Q) {
  const std::size_t n = P.size(), m = Q.size(), k = n + m;
  auto linf = [](auto a, auto b) {
    return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
  };
  auto half = [](auto a) { return 0.5 * (a.second - a.first); };
  // Left: P then diagonal copies of Q. Right: Q then diagonal copies of P.
  auto cost = [&](std::size_t i, std::size_t j) {
    if (i < n && j < m) return linf(P[i], Q[j]);
    if (i < n) return j - m == i ? half(P[i]) : std::numeric_limits<double>::infinity();
    if (j < m) return i - n == j ? half(Q[j]) : std::numeric_limits<double>::infinity();
    return 0.0;
  };
  std::vector<double> cands{0.0};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (std::isfinite(cost(i, j))) cands.push_back(cost(i, j));
  std::sort(cands.begin(), cands.end());
  for (double eps : cands) {
    std::vector<int> match_r(k, -1);
    std::function<bool(std::size_t, std::vector<bool>&)> aug = [&](std::size_t i, std::vector<bool>& seen) {
      for (std::size_t j = 0; j < k; ++j) {
        if (seen[j] || cost(i, j) > eps) continue;
        seen[j] = true;
        if (match_r[j] < 0 || aug(static_cast<std::size_t>(match_r[j]), seen)) {
          match_r[j] = static_cast<int>(i);
          return true;
        }
      }
      return false;
    };
    std::size_t matched = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<bool> seen(k, false);
      if (aug(i, seen)) ++matched;
    }
    if (matched == k) return eps;
  }
  return std::numeric_limits<double>::infinity();
}

inline vpd::Diagram random_diagram(std::mt19937_64& rng, std::size_t n, std::size_t max_points) {
  std::uniform_int_distribution<std::size_t> count(0, max_points), vert(0, n - 1);
  vpd::Diagram d(n);
  const std::size_t c = count(rng);
  for (std::size_t i = 0; i < c; ++i) ++d.counts[vert(rng)];
  return d;
}

inline vpd::VirtualDiagram random_virtual(std::mt19937_64& rng, std::size_t n, int radius) {
  std::uniform_int_distribution<int> c(-radius, radius);
  vpd::VirtualDiagram v(n);
  for (auto& x : v.coeffs) x = c(rng);
  return v;
}

inline vpd::TorusPoint random_theta(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<double> th(n);
  for (auto& x : th) x = u(rng);
  return vpd::TorusPoint(th);
}

}  // namespace oracle
