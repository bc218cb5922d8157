#include "vpd/diagram.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "vpd/assignment.hpp"
#include "vpd/error.hpp"

namespace vpd {

Diagram::Diagram(std::vector<std::int64_t> c) : counts(std::move(c)) {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) {
      throw InvalidArgument("diagram multiplicity at vertex " + std::to_string(i) +
                            " is negative");
    }
  }
}

std::int64_t Diagram::total_mass() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

bool VirtualDiagram::is_zero() const noexcept {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0; });
}

VirtualDiagram VirtualDiagram::from_diagram(const Diagram& d) { return VirtualDiagram(d.counts); }

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) +
                            " and " + std::to_string(b) + " differ");
  }
}

void require_graph(const Diagram& d, const QuotientGraph& g) {
  if (d.dim() != g.n_offdiag()) {
    throw GraphMismatch("diagram has " + std::to_string(d.dim()) +
                        " vertices, graph has " + std::to_string(g.n_offdiag()));
  }
}

std::vector<std::size_t> expand(const Diagram& d) {
  std::vector<std::size_t> points;
  points.reserve(static_cast<std::size_t>(d.total_mass()));
  for (std::size_t v = 0; v < d.counts.size(); ++v)
    for (std::int64_t k = 0; k < d.counts[v]; ++k) points.push_back(v);
  return points;
}

}  // namespace

VirtualDiagram operator+(const VirtualDiagram& a, const VirtualDiagram& b) {
  require_same_dim(a.dim(), b.dim(), "virtual diagram sum");
  VirtualDiagram out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.coeffs[i] = a.coeffs[i] + b.coeffs[i];
  return out;
}

VirtualDiagram operator-(const VirtualDiagram& a, const VirtualDiagram& b) {
  require_same_dim(a.dim(), b.dim(), "virtual diagram difference");
  VirtualDiagram out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.coeffs[i] = a.coeffs[i] - b.coeffs[i];
  return out;
}

Diagram operator+(const Diagram& a, const Diagram& b) {
  require_same_dim(a.dim(), b.dim(), "diagram sum");
  Diagram out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.counts[i] = a.counts[i] + b.counts[i];
  return out;
}

Matching w1_matching(const Diagram& a, const Diagram& b, const QuotientGraph& g) {
  require_graph(a, g);
  require_graph(b, g);
  const std::size_t base = g.basepoint();
  const auto left = expand(a);
  const auto right = expand(b);
  const std::size_t k = left.size();
  const std::size_t m = right.size();
  const std::size_t n = k + m;

  // Rows: points of a, then m basepoint copies. Columns: points of b, then k
  // basepoint copies.
  auto row_vertex = [&](std::size_t r) { return r < k ? left[r] : base; };
  auto col_vertex = [&](std::size_t c) { return c < m ? right[c] : base; };
  std::vector<double> cost(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) cost[r * n + c] = g.distance(row_vertex(r), col_vertex(c));

  const auto col_of_row = solve_assignment(cost, n);

  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> blocks;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t src = row_vertex(r);
    const std::size_t tgt = col_vertex(col_of_row[r]);
    if (src == base && tgt == base) continue;
    ++blocks[{src, tgt}];
  }
  Matching out;
  for (const auto& [key, mult] : blocks) {
    out.pairs.push_back({key.first, key.second, mult});
    out.total_cost += static_cast<double>(mult) * g.distance(key.first, key.second);
  }
  return out;
}

double w1_distance(const Diagram& a, const Diagram& b, const QuotientGraph& g) {
  return w1_matching(a, b, g).total_cost;
}

namespace {

void enumerate_matchings(const std::vector<std::size_t>& left,
                         const std::vector<std::size_t>& right, const QuotientGraph& g,
                         std::size_t i, std::vector<char>& taken, double cost, double& best) {
  const std::size_t base = g.basepoint();
  if (i == left.size()) {
    for (std::size_t j = 0; j < right.size(); ++j)
      if (!taken[j]) cost += g.distance(right[j], base);
    best = std::min(best, cost);
    return;
  }
  enumerate_matchings(left, right, g, i + 1, taken, cost + g.distance(left[i], base), best);
  for (std::size_t j = 0; j < right.size(); ++j) {
    if (taken[j]) continue;
    taken[j] = 1;
    enumerate_matchings(left, right, g, i + 1, taken, cost + g.distance(left[i], right[j]), best);
    taken[j] = 0;
  }
}

}  // namespace

double w1_bruteforce(const Diagram& a, const Diagram& b, const QuotientGraph& g) {
  require_graph(a, g);
  require_graph(b, g);
  const auto left = expand(a);
  const auto right = expand(b);
  if (left.size() + right.size() > kBruteForceMaxPoints) {
    throw TooLarge("brute-force W1 supports at most " + std::to_string(kBruteForceMaxPoints) +
                   " expanded points, got " + std::to_string(left.size() + right.size()));
  }
  std::vector<char> taken(right.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  enumerate_matchings(left, right, g, 0, taken, 0.0, best);
  return best;
}

std::pair<Diagram, Diagram> split(const VirtualDiagram& v) {
  Diagram pos(v.dim()), neg(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v.coeffs[i] > 0) pos.counts[i] = v.coeffs[i];
    if (v.coeffs[i] < 0) neg.counts[i] = -v.coeffs[i];
  }
  return {std::move(pos), std::move(neg)};
}

double rho(const VirtualDiagram& u, const VirtualDiagram& v, const QuotientGraph& g) {
  if (u.dim() != g.n_offdiag() || v.dim() != g.n_offdiag()) {
    throw GraphMismatch("virtual diagram dimension does not match graph with " +
                        std::to_string(g.n_offdiag()) + " vertices");
  }
  auto [a, b] = split(u);
  auto [c, e] = split(v);
  return w1_distance(a + e, c + b, g);
}

double rho_norm(const VirtualDiagram& gamma, const QuotientGraph& g) {
  return rho(gamma, VirtualDiagram(gamma.dim()), g);
}

}  // namespace vpd
