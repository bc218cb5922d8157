#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "vpd/metric_pair.hpp"

namespace vpd {

/// A finite diagram in D(X,A): nonnegative multiplicity per off-diagonal vertex.
struct Diagram {
  std::vector<std::int64_t> counts;

  Diagram() = default;
  explicit Diagram(std::size_t n) : counts(n, 0) {}
  explicit Diagram(std::vector<std::int64_t> c);

  std::size_t dim() const noexcept { return counts.size(); }
  std::int64_t total_mass() const noexcept;
  bool empty() const noexcept { return total_mass() == 0; }

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

/// An element of K(X,A) = Z^N.
struct VirtualDiagram {
  std::vector<std::int64_t> coeffs;

  VirtualDiagram() = default;
  explicit VirtualDiagram(std::size_t n) : coeffs(n, 0) {}
  explicit VirtualDiagram(std::vector<std::int64_t> c) : coeffs(std::move(c)) {}

  std::size_t dim() const noexcept { return coeffs.size(); }
  bool is_zero() const noexcept;
  static VirtualDiagram from_diagram(const Diagram& d);

  friend bool operator==(const VirtualDiagram&, const VirtualDiagram&) = default;
};

VirtualDiagram operator+(const VirtualDiagram& a, const VirtualDiagram& b);
VirtualDiagram operator-(const VirtualDiagram& a, const VirtualDiagram& b);
Diagram operator+(const Diagram& a, const Diagram& b);

/// One block of a matching. Endpoints are graph vertices; the basepoint vertex
/// (QuotientGraph::basepoint()) stands for mass matched into A.
struct MatchedPair {
  std::size_t source;
  std::size_t target;
  std::int64_t multiplicity;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct Matching {
  std::vector<MatchedPair> pairs;
  double total_cost = 0.0;
};

/// Exact W1 between two diagrams under the quotient metric of `g`.
/// Multiplicities are expanded to unit points, both sides padded with
/// basepoint copies, and the square assignment problem solved exactly.
/// Throws GraphMismatch when a diagram's dimension differs from the graph's.
Matching w1_matching(const Diagram& a, const Diagram& b, const QuotientGraph& g);
double w1_distance(const Diagram& a, const Diagram& b, const QuotientGraph& g);

/// Exhaustive enumeration over all partial matchings (each point of `a` goes
/// to a distinct point of `b` or to the basepoint). Independent of the
/// assignment solver; at most 6 expanded points in total (TooLarge otherwise).
double w1_bruteforce(const Diagram& a, const Diagram& b, const QuotientGraph& g);
inline constexpr std::size_t kBruteForceMaxPoints = 6;

/// Canonical representative v = pos - neg with disjoint supports.
std::pair<Diagram, Diagram> split(const VirtualDiagram& v);

/// Lifted translation-invariant metric on K(X,A):
/// rho(a - b, c - e) = W1(a + e, c + b) using canonical splits.
double rho(const VirtualDiagram& u, const VirtualDiagram& v, const QuotientGraph& g);

/// rho(gamma, 0) = W1(gamma+, gamma-).
double rho_norm(const VirtualDiagram& gamma, const QuotientGraph& g);

}  // namespace vpd
