#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "vpd/cubical.hpp"
#include "vpd/diagram.hpp"
#include "vpd/quadrature.hpp"
#include "vpd/rff.hpp"

namespace vpd {

/// gamma = D_pred - D_true in K(X,A). Throws GridMismatch when the two
/// diagrams live on ground sets of different size.
VirtualDiagram error_diagram(const Diagram& truth, const Diagram& pred);

/// 2 (k_t(0,0) - k_t(gamma,0)) from one quadrature sweep.
double topo_loss_exact(const VirtualDiagram& gamma, double t, const QuotientGraph& g,
                       const QuadratureSpec& q);

/// 2 (nu/R) sum_r (1 - cos<gamma, theta_r>): the plug-in estimate of the
/// exact loss built from <Phi(gamma), Phi(0)>, not from ||Phi(gamma)||^2,
/// which equals nu for every gamma.
double topo_loss_rff(const VirtualDiagram& gamma, const FrequencySample& fs);

/// topo_loss_rff(gamma) averaged over resamples against topo_loss_exact.
UnbiasedReport loss_unbiasedness_check(double t, const QuotientGraph& g, std::size_t R,
                                       std::size_t resamples,
                                       std::span<const VirtualDiagram> gammas,
                                       const SamplerOptions& options,
                                       std::size_t grid_points = 256, double bands = 3.0);

/// Binary (0/1) or probability mask, row-major.
struct Mask {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;
};

/// 1 - (2<y, yh> + 1) / (|y|_1 + |yh|_1 + 1). Throws ShapeMismatch, and
/// InvalidArgument for entries outside [0, 1].
double dice_loss(const Mask& y, const Mask& yh);

struct LossReport {
  std::size_t mask_id = 0;
  double gamma_mass = 0.0;  // rho(gamma, 0)
  double loss_exact = 0.0;
  double loss_rff = 0.0;
  double dice = 0.0;
  double rff_abs_error = 0.0;
  double weighted_total = 0.0;  // dice + w_topo * loss_exact
};

struct LossDemoConfig {
  std::uint64_t seed = 7;
  std::size_t n_masks = 20;
  double noise_level = 0.05;
  double t = 10.0;
  std::size_t R = 256;
  std::size_t side = 32;
  std::size_t grid_cells = 2;    // ground grid cells per axis
  std::size_t quad_points = 256; // tensor quadrature per dimension
  double w_topo = 500.0;
};

struct LossDemoResult {
  std::vector<LossReport> rows;
  double spearman_mass_vs_exact = 0.0;
  std::size_t ground_dim = 0;
};

/// Synthetic ring and blob masks, each compared with a copy whose pixels are
/// flipped independently with probability `noise_level`. Diagrams come from
/// the sublevel filtration 255 (1 - mask) on a ground grid over [0, 255].
LossDemoResult loss_demo(const LossDemoConfig& cfg);

/// The mask generator used by loss_demo; even ids are rings, odd ids blobs.
Mask synthetic_mask(std::size_t id, std::size_t side, std::uint64_t seed);
Mask perturb_mask(const Mask& m, double noise_level, std::uint64_t seed);
GrayImage mask_filtration(const Mask& m);

void write_loss_csv(std::ostream& out, const LossDemoResult& res);

/// Spearman rank correlation with average ranks for ties; 0 if either side
/// is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace vpd
