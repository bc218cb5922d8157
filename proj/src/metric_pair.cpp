#include "vpd/metric_pair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "vpd/error.hpp"

namespace vpd {

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  DistanceMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw MetricViolation("matrix is not square: row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> DistanceMatrix::to_rows() const {
  std::vector<std::vector<double>> rows(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j);
  return rows;
}

void validate_metric(const DistanceMatrix& m, double tol) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = m(i, j);
      if (!std::isfinite(d)) {
        throw MetricViolation("non-finite entry at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
      if (i == j && d != 0.0) {
        throw MetricViolation("nonzero diagonal at index " + std::to_string(i));
      }
      if (i != j && !(d > 0.0)) {
        throw MetricViolation("non-positive distance between distinct points (" +
                              std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (std::abs(d - m(j, i)) > kSymmetryTolerance) {
        throw MetricViolation("asymmetric entries at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m(i, k) > m(i, j) + m(j, k) + tol) {
          std::ostringstream msg;
          msg << "triangle inequality fails on triple (" << std::min(i, k) << ","
              << j << "," << std::max(i, k) << "): d(" << i << "," << k
              << ")=" << m(i, k) << " > d(" << i << "," << j << ")+d(" << j
              << "," << k << ")=" << m(i, j) + m(j, k);
          throw MetricViolation(msg.str());
        }
      }
    }
  }
}

MetricPair MetricPair::build(DistanceMatrix dist, std::vector<std::size_t> subset_a) {
  validate_metric(dist);
  const std::size_t n = dist.size();
  if (subset_a.empty()) throw EmptySubset("the distinguished subset A must be nonempty");
  std::sort(subset_a.begin(), subset_a.end());
  subset_a.erase(std::unique(subset_a.begin(), subset_a.end()), subset_a.end());
  if (subset_a.back() >= n) {
    throw InvalidArgument("subset index " + std::to_string(subset_a.back()) +
                          " out of range for " + std::to_string(n) + " points");
  }
  if (subset_a.size() == n) throw SubsetCoversAll("A contains every point, X\\A is empty");

  MetricPair pair;
  pair.dist_ = std::move(dist);
  pair.subset_a_ = std::move(subset_a);
  for (std::size_t i = 0; i < n; ++i)
    if (!pair.in_a(i)) pair.off_diag_.push_back(i);
  return pair;
}

bool MetricPair::in_a(std::size_t i) const {
  return std::binary_search(subset_a_.begin(), subset_a_.end(), i);
}

double MetricPair::distance_to_a(std::size_t i) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a : subset_a_) best = std::min(best, dist_(i, a));
  return best;
}

DistanceMatrix quotient_metric_1(const MetricPair& pair) {
  const auto& off = pair.off_diagonal();
  const std::size_t n = off.size();
  DistanceMatrix q(n + 1);
  std::vector<double> to_a(n);
  for (std::size_t i = 0; i < n; ++i) to_a[i] = pair.distance_to_a(off[i]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::min(pair.dist()(off[i], off[j]), to_a[i] + to_a[j]);
      q(i, j) = d;
      q(j, i) = d;
    }
    q(i, n) = to_a[i];
    q(n, i) = to_a[i];
  }
  return q;
}

QuotientGraph QuotientGraph::build(const DistanceMatrix& quotient) {
  if (quotient.size() < 2) {
    throw InvalidArgument("quotient metric needs the basepoint and at least one vertex");
  }
  validate_metric(quotient);

  QuotientGraph g;
  g.metric_ = quotient;
  const std::size_t nv = quotient.size();
  g.w_min_ = std::numeric_limits<double>::infinity();
  g.d_min_ = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::size_t v = u + 1; v < nv; ++v) {
      const double len = quotient(u, v);
      g.edges_.u.push_back(static_cast<std::uint32_t>(u));
      g.edges_.v.push_back(static_cast<std::uint32_t>(v));
      g.edges_.length.push_back(len);
      g.edges_.weight.push_back(len);
      g.w_min_ = std::min(g.w_min_, len);
      g.w_max_ = std::max(g.w_max_, len);
      g.d_min_ = std::min(g.d_min_, len);
      g.d_max_ = std::max(g.d_max_, len);
    }
  }
  return g;
}

QuotientGraph QuotientGraph::from_pair(const MetricPair& pair) {
  return build(quotient_metric_1(pair));
}

DistanceMatrix QuotientGraph::shortest_paths() const {
  const std::size_t nv = n_vertices();
  DistanceMatrix sp(nv);
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = 0; j < nv; ++j)
      sp(i, j) = i == j ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    sp(edges_.u[e], edges_.v[e]) = edges_.length[e];
    sp(edges_.v[e], edges_.u[e]) = edges_.length[e];
  }
  for (std::size_t k = 0; k < nv; ++k)
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = 0; j < nv; ++j)
        if (sp(i, k) + sp(k, j) < sp(i, j)) sp(i, j) = sp(i, k) + sp(k, j);
  return sp;
}

}  // namespace vpd
