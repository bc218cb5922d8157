#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "vpd/diagram.hpp"
#include "vpd/metric_pair.hpp"

namespace vpd::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kNumeric = 3 };

/// Runs one `vpd` command; `args` excludes the program name. Results go to
/// `out` (or the --out file), diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SliceSpec {
  std::vector<std::size_t> axes;  // 1 or 2 varying coordinates; empty means all (N <= 2)
  std::vector<double> base;       // values of the fixed coordinates, default 0
  std::size_t resolution = 64;    // theta_k = 2 pi k / resolution
  VirtualDiagram gamma;           // character for the re/im columns; empty means 0
};

/// CSV over a 1-D or 2-D slice of the dual torus with columns
/// theta_<axis>..., lambda, heat, re, im where heat = exp(-t lambda) and
/// re + i im = chi_theta(gamma) exp(-t lambda). Throws TooHighDim for N > 2
/// without explicit axes.
void emit_torus_slice(std::ostream& out, double t, const QuotientGraph& g, const SliceSpec& spec);

}  // namespace vpd::cli
