#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vpd/diagram.hpp"
#include "vpd/metric_pair.hpp"
#include "vpd/quadrature.hpp"

namespace vpd {

// Heat measure d nu_t = exp(-t lambda(theta)) d mu(theta) on the dual torus and
// the translation-invariant kernel it induces,
//   k_t(u, v) = int cos<u - v, theta> exp(-t lambda(theta)) d mu(theta).
// The imaginary part vanishes because lambda(theta) = lambda(-theta).
//
// Every Lipschitz integral below uses phase_lip(theta), the computable upper
// bound on Lip_rho(chi_theta), in place of Lip_rho(chi_theta) itself. This can
// only enlarge the bounds, so every inequality they enter is preserved.

/// nu_t(T^N).
Estimate heat_mass(double t, const QuotientGraph& g, const QuadratureSpec& q);

struct KernelValue {
  double value = 0.0;       // real part
  double imag = 0.0;        // should be ~0; reported for diagnostics
  double std_error = 0.0;   // Monte Carlo only
};

/// k_t(gamma, 0) for each gamma, in one quadrature sweep.
std::vector<KernelValue> kernel_values(double t, std::span<const VirtualDiagram> gammas,
                                       const QuotientGraph& g, const QuadratureSpec& q);

/// k_t(u, v), computed through u - v.
KernelValue kernel_eval(double t, const VirtualDiagram& u, const VirtualDiagram& v,
                        const QuotientGraph& g, const QuadratureSpec& q);

/// [k_t(v_i, v_j)]. Symmetric by construction.
Eigen::MatrixXd gram_matrix(double t, std::span<const VirtualDiagram> vs, const QuotientGraph& g,
                            const QuadratureSpec& q);

double min_eigenvalue(const Eigen::MatrixXd& symmetric);

/// int phase_lip^2 exp(-t lambda) d mu; upper bound on the RKHS Lipschitz prefactor.
Estimate lip_prefactor(double t, const QuotientGraph& g, const QuadratureSpec& q);

/// int lambda exp(-t lambda) d mu.
Estimate spectral_moment(double t, const QuotientGraph& g, const QuadratureSpec& q);

/// int phase_lip exp(-t lambda) d mu; bounds Lip_rho of F_{nu_t}.
Estimate lip_transform_bound(double t, const QuotientGraph& g, const QuadratureSpec& q);

/// int phase_lip^2 exp(-t (8 w_min d_min^2 / pi^4) phase_lip^2) d mu, the
/// geometric-form majorant of lip_prefactor.
Estimate geometric_prefactor_bound(double t, const QuotientGraph& g, const QuadratureSpec& q);

/// All of the above heat integrals at one t, from a single sweep.
struct HeatProfile {
  double t = 0.0;
  Estimate mass;
  Estimate lip_prefactor;
  Estimate spectral_moment;
  Estimate lip_transform;
  Estimate geometric_bound;
};
HeatProfile heat_profile(double t, const QuotientGraph& g, const QuadratureSpec& q);

/// Lipschitz check for f = sum_i c_i k_t(., v_i).
struct RkhsLipReport {
  double norm = 0.0;               // ||f||_{H_t} = sqrt(c^T G c)
  double prefactor = 0.0;          // lip_prefactor(t)
  double lip_bound = 0.0;          // norm * sqrt(prefactor)
  double empirical_ratio_max = 0.0;  // max |f(a) - f(b)| / rho(a, b) over the pairs
  std::size_t pairs_evaluated = 0;
};

/// Throws NegativeNormSquared if c^T G c < -1e-8 * trace(G) * |c|^2.
RkhsLipReport rkhs_function_lip_check(
    double t, const QuotientGraph& g, const QuadratureSpec& q,
    std::span<const VirtualDiagram> centers, std::span<const double> coeffs,
    std::span<const std::pair<VirtualDiagram, VirtualDiagram>> pairs);

/// Random distinct pairs with coefficients in [-radius, radius]. Half of them
/// are nearest neighbours (differ by one unit vector), where ratios peak.
std::vector<std::pair<VirtualDiagram, VirtualDiagram>> random_virtual_pairs(
    std::size_t count, std::size_t dim, int radius, std::uint64_t seed);

}  // namespace vpd
