#include "vpd/assignment.hpp"

#include <algorithm>
#include <limits>

#include "vpd/error.hpp"

namespace vpd {

// Hungarian method in its potential form: rows are inserted one at a time and
// a Dijkstra-like scan over reduced costs finds the augmenting path. Index 0 of
// the 1-based arrays is a virtual column.
std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n) {
  if (cost.size() != n * n) {
    throw InvalidArgument("assignment cost matrix must have n*n entries");
  }
  if (n == 0) return {};

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> row_pot(n + 1, 0.0), col_pot(n + 1, 0.0), min_slack(n + 1);
  std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    row_of_col[0] = row;
    std::size_t col0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const std::size_t r = row_of_col[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double reduced = cost[(r - 1) * n + (c - 1)] - row_pot[r] - col_pot[c];
        if (reduced < min_slack[c]) {
          min_slack[c] = reduced;
          way[c] = col0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          row_pot[row_of_col[c]] += delta;
          col_pot[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col0 = col1;
    } while (row_of_col[col0] != 0);
    do {
      const std::size_t prev = way[col0];
      row_of_col[col0] = row_of_col[prev];
      col0 = prev;
    } while (col0 != 0);
  }

  std::vector<std::size_t> col_of_row(n);
  for (std::size_t c = 1; c <= n; ++c) col_of_row[row_of_col[c] - 1] = c - 1;
  return col_of_row;
}

}  // namespace vpd
