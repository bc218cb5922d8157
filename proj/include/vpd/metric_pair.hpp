#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vpd {

/// Dense symmetric matrix of ground distances, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

inline constexpr double kMetricTolerance = 1e-9;
inline constexpr double kSymmetryTolerance = 1e-12;

/// Finite metric pair (X, d, A). Immutable once built.
class MetricPair {
 public:
  /// Validates the metric axioms and the distinguished subset.
  /// Throws MetricViolation, EmptySubset, SubsetCoversAll or InvalidArgument.
  static MetricPair build(DistanceMatrix dist, std::vector<std::size_t> subset_a);

  std::size_t n_points() const noexcept { return dist_.size(); }
  const DistanceMatrix& dist() const noexcept { return dist_; }
  /// Sorted, deduplicated indices of A.
  const std::vector<std::size_t>& subset_a() const noexcept { return subset_a_; }
  /// Sorted indices of X \ A; position in this list is the graph vertex id.
  const std::vector<std::size_t>& off_diagonal() const noexcept { return off_diag_; }
  std::size_t n_offdiag() const noexcept { return off_diag_.size(); }
  bool in_a(std::size_t i) const;

  /// d(x, A) = min over a in A of d(x, a).
  double distance_to_a(std::size_t i) const;

 private:
  MetricPair() = default;
  DistanceMatrix dist_;
  std::vector<std::size_t> subset_a_;
  std::vector<std::size_t> off_diag_;
};

/// The 1-strengthened metric on X/A. Vertices 0..N-1 are the points of X\A in
/// increasing original index; vertex N is the basepoint [A].
/// d1(x,y) = min{ d(x,y), d(x,A) + d(y,A) },  d1(x,[A]) = d(x,A).
DistanceMatrix quotient_metric_1(const MetricPair& pair);

/// Checks that `m` is a metric within `tol`; throws MetricViolation naming the
/// failing axiom and indices.
void validate_metric(const DistanceMatrix& m, double tol = kMetricTolerance);

/// Structure-of-arrays edge list, the layout consumed by the simd kernels.
struct EdgeList {
  std::vector<std::uint32_t> u;
  std::vector<std::uint32_t> v;
  std::vector<double> length;
  std::vector<double> weight;

  std::size_t size() const noexcept { return u.size(); }
};

/// Complete weighted graph on X/A with lengths and weights both equal to the
/// quotient metric. Basepoint is the last vertex.
class QuotientGraph {
 public:
  /// `quotient` is an (N+1)x(N+1) metric whose last index is the basepoint.
  static QuotientGraph build(const DistanceMatrix& quotient);
  static QuotientGraph from_pair(const MetricPair& pair);

  std::size_t n_offdiag() const noexcept { return metric_.size() - 1; }
  std::size_t n_vertices() const noexcept { return metric_.size(); }
  std::size_t basepoint() const noexcept { return metric_.size() - 1; }
  const DistanceMatrix& metric() const noexcept { return metric_; }
  double distance(std::size_t u, std::size_t v) const { return metric_(u, v); }
  const EdgeList& edges() const noexcept { return edges_; }

  double w_min() const noexcept { return w_min_; }
  double w_max() const noexcept { return w_max_; }
  double d_min() const noexcept { return d_min_; }
  double d_max() const noexcept { return d_max_; }
  /// Number of edges with positive weight.
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// All-pairs shortest paths over the edge lengths (Floyd-Warshall).
  DistanceMatrix shortest_paths() const;

 private:
  QuotientGraph() = default;
  DistanceMatrix metric_;
  EdgeList edges_;
  double w_min_ = 0, w_max_ = 0, d_min_ = 0, d_max_ = 0;
};

}  // namespace vpd
