#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vpd {

/// Exact minimum-cost perfect matching on a dense square cost matrix
/// (row-major, n*n entries). Shortest augmenting paths with dual potentials,
/// O(n^3). Returns col_of_row.
std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n);

}  // namespace vpd
