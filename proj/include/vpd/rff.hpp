#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vpd/diagram.hpp"
#include "vpd/dual.hpp"
#include "vpd/metric_pair.hpp"
#include "vpd/quadrature.hpp"

namespace vpd {

enum class SamplerMode { grid_icdf, metropolis };

std::string to_string(SamplerMode m);
/// "grid_icdf" or "metropolis"; throws InvalidArgument otherwise.
SamplerMode parse_sampler_mode(const std::string& s);

struct SamplerOptions {
  SamplerMode mode = SamplerMode::grid_icdf;
  std::uint64_t seed = 0;
  std::size_t burn_in = 1000;       // metropolis, >= 1000
  std::size_t thinning = 10;        // metropolis, >= 10
  std::size_t grid_cells = 512;     // grid_icdf, per dimension
  std::size_t mass_samples = 65536; // uniform MC budget for the mass estimate
};

struct SamplerMeta {
  SamplerMode mode = SamplerMode::grid_icdf;
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;
  std::size_t thinning = 0;
  std::size_t grid_cells = 0;
  std::size_t mass_samples = 0;
  double acceptance_rate = 1.0;  // post burn-in; 1 for exact samplers
  double proposal_step = 0.0;    // final wrapped-Gaussian sigma
};

/// R draws from the normalized heat law exp(-t lambda) / nu_t, plus an
/// independent uniform Monte Carlo estimate of nu_t(T^N).
struct FrequencySample {
  std::size_t dim = 0;
  double t = 0.0;
  std::vector<TorusPoint> thetas;
  double mass_estimate = 1.0;
  double mass_std_error = 0.0;
  SamplerMeta meta;

  std::size_t size() const noexcept { return thetas.size(); }
};

/// Deterministic in (t, g, R, options). At t = 0 both modes draw uniformly.
/// Throws TooHighDimForGrid (grid_icdf with N > 2), InvalidArgument (bad
/// budgets) and BadAcceptanceRate.
FrequencySample sample_heat_law(double t, const QuotientGraph& g, std::size_t R,
                                const SamplerOptions& options);

/// exp(-t lambda) tabulated at cell midpoints of a regular grid on T^N (N <= 2)
/// and normalized to cell probabilities. Cell index is i0 + cells * i1.
struct GridHeatLaw {
  std::size_t dim = 0;
  std::size_t cells = 0;
  std::vector<double> probability;
  std::vector<double> cumulative;  // cumulative[k] = sum of probability[0..k]

  /// CDF of the first coordinate of the piecewise-uniform law (N = 1 only).
  double cdf_1d(double theta) const;
  std::size_t cell_of(const TorusPoint& p) const;
};
GridHeatLaw tabulate_heat_law(double t, const QuotientGraph& g, std::size_t cells_per_dim);

/// sqrt(nu/R) (cos<v,theta_r>, sin<v,theta_r>) interleaved, length 2R.
std::vector<double> feature_map(const VirtualDiagram& v, const FrequencySample& fs);

/// <Phi(u), Phi(v)> = (nu/R) sum_r cos<u - v, theta_r>.
double rff_kernel(const VirtualDiagram& u, const VirtualDiagram& v, const FrequencySample& fs);

/// sqrt(2 nu) (mean_r phase_lip(theta_r)^2)^(1/2); phase_lip stands in for
/// Lip_rho(chi), so the bound is conservative.
double rff_lip_bound(const FrequencySample& fs, const QuotientGraph& g);

struct RffLipReport {
  double bound = 0.0;
  double empirical_ratio_max = 0.0;  // max ||Phi(u) - Phi(v)|| / rho(u, v)
  std::size_t pairs_evaluated = 0;
};
RffLipReport rff_lip_check(const FrequencySample& fs, const QuotientGraph& g,
                           std::size_t n_pairs, int radius, std::uint64_t pair_seed);

struct SpectralCheckReport {
  double t = 0.0;
  std::size_t R = 0;
  std::size_t trials = 0;
  std::size_t passes = 0;
  double spectral_moment = 0.0;
  double constant = 0.0;        // pi^2 / (2 d_min sqrt(w_min)) * sqrt(spectral_moment)
  double slack = 0.05;
  double max_bound = 0.0;       // largest rff_lip_bound over trials
  double pass_rate() const { return trials ? static_cast<double>(passes) / trials : 0.0; }
};

/// Fraction of independent draws whose rff_lip_bound stays below the spectral
/// constant times (1 + slack). Needs N <= 2 and t > 0. Trial k uses seed
/// derive_seed(options.seed, k).
SpectralCheckReport rff_spectral_asymptotic_check(double t, const QuotientGraph& g,
                                                  std::size_t trials, std::size_t R,
                                                  const SamplerOptions& options,
                                                  std::size_t grid_points = 256,
                                                  double slack = 0.05);

/// Mean and standard error of each statistic over `resamples` independent
/// frequency samples; resample k uses seed derive_seed(options.seed, k).
struct ResampleStats {
  std::vector<double> mean;
  std::vector<double> std_error;
};
using SampleStatistic = std::function<void(const FrequencySample&, std::span<double> out)>;
ResampleStats resample_statistics(double t, const QuotientGraph& g, std::size_t R,
                                  std::size_t resamples, const SamplerOptions& options,
                                  std::size_t n_stats, const SampleStatistic& stat);

struct UnbiasedRow {
  VirtualDiagram gamma;
  double exact = 0.0;  // tensor quadrature
  double mean = 0.0;
  double std_error = 0.0;
  bool within = false;  // |mean - exact| <= bands * std_error
};
struct UnbiasedReport {
  std::vector<UnbiasedRow> rows;
  std::size_t outside() const;
};

/// rff_kernel(gamma, 0) averaged over resamples against k_t(gamma, 0).
UnbiasedReport rff_unbiasedness_check(double t, const QuotientGraph& g, std::size_t R,
                                      std::size_t resamples,
                                      std::span<const VirtualDiagram> gammas,
                                      const SamplerOptions& options,
                                      std::size_t grid_points = 256, double bands = 3.0);

/// Independent 64-bit stream seed (splitmix64 of seed and stream index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace vpd
