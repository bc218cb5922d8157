#include "vpd/rff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "vpd/error.hpp"
#include "vpd/heat_kernel.hpp"
#include "vpd/simd.hpp"

namespace vpd {

std::string to_string(SamplerMode m) {
  return m == SamplerMode::grid_icdf ? "grid_icdf" : "metropolis";
}

SamplerMode parse_sampler_mode(const std::string& s) {
  if (s == "grid_icdf" || s == "grid") return SamplerMode::grid_icdf;
  if (s == "metropolis" || s == "mh") return SamplerMode::metropolis;
  throw InvalidArgument("unknown sampler mode '" + s + "' (grid_icdf | metropolis)");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t kMassStream = 0x6d617373;
constexpr std::uint64_t kChainStream = 0x636861696e;

std::mt19937_64 make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

// lambda at `count` torus points given dimension-major.
class SymbolEvaluator {
 public:
  explicit SymbolEvaluator(const QuotientGraph& g)
      : g_(g), edges_(simd::EdgeView::of(g.edges())) {}

  void evaluate(std::span<const double> theta, std::size_t count, std::span<double> out) {
    const std::size_t nv = g_.n_vertices();
    cos_.assign(nv * count, 1.0);
    sin_.assign(nv * count, 0.0);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      cos_[i] = std::cos(theta[i]);
      sin_[i] = std::sin(theta[i]);
    }
    simd::dirichlet_symbol_batch(edges_, cos_, sin_, count, out);
  }

  double at(std::span<const double> theta) {
    double out = 0.0;
    evaluate(theta, 1, std::span<double>(&out, 1));
    return out;
  }

 private:
  const QuotientGraph& g_;
  simd::EdgeView edges_;
  std::vector<double> cos_, sin_;
};

std::vector<TorusPoint> sample_uniform(std::size_t dim, std::size_t R, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, kTwoPi);
  std::vector<TorusPoint> out;
  out.reserve(R);
  std::vector<double> th(dim);
  for (std::size_t r = 0; r < R; ++r) {
    for (auto& x : th) x = unif(rng);
    out.emplace_back(th);
  }
  return out;
}

std::vector<TorusPoint> sample_grid(const GridHeatLaw& law, std::size_t R, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double h = kTwoPi / static_cast<double>(law.cells);
  std::vector<TorusPoint> out;
  out.reserve(R);
  std::vector<double> th(law.dim);
  for (std::size_t r = 0; r < R; ++r) {
    const double u = unif(rng);
    auto it = std::upper_bound(law.cumulative.begin(), law.cumulative.end(), u);
    std::size_t cell = static_cast<std::size_t>(it - law.cumulative.begin());
    cell = std::min(cell, law.cumulative.size() - 1);
    for (std::size_t j = 0; j < law.dim; ++j) {
      th[j] = (static_cast<double>(cell % law.cells) + unif(rng)) * h;
      cell /= law.cells;
    }
    out.emplace_back(th);
  }
  return out;
}

struct ChainResult {
  std::vector<TorusPoint> draws;
  double acceptance = 0.0;
  double sigma = 0.0;
};

ChainResult run_metropolis(double t, const QuotientGraph& g, std::size_t R,
                           const SamplerOptions& opt, std::mt19937_64& rng) {
  constexpr double kTarget = 0.35;
  constexpr double kSigmaMin = 1e-3;
  constexpr double kSigmaMax = kTwoPi;
  constexpr std::size_t kWindow = 50;
  const std::size_t dim = g.n_offdiag();

  // Start from the local Gaussian scale at the mode theta = 0:
  // lambda ~ (1/2) sum w dphi^2, so precision per coordinate ~ t * weighted degree.
  std::vector<double> degree(g.n_vertices(), 0.0);
  const auto& e = g.edges();
  for (std::size_t k = 0; k < e.size(); ++k) {
    degree[e.u[k]] += e.weight[k];
    degree[e.v[k]] += e.weight[k];
  }
  const double deg = *std::max_element(degree.begin(), degree.end());
  double sigma = std::clamp(2.38 / std::sqrt(static_cast<double>(dim) * t * deg), kSigmaMin,
                            kSigmaMax);

  SymbolEvaluator sym(g);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> cur(dim, 0.0), prop(dim);
  double cur_lambda = sym.at(cur);

  auto step = [&]() {
    for (std::size_t j = 0; j < dim; ++j) prop[j] = wrap_angle(cur[j] + sigma * normal(rng));
    const double prop_lambda = sym.at(prop);
    const double log_ratio = -t * (prop_lambda - cur_lambda);
    if (log_ratio >= 0.0 || unif(rng) < std::exp(log_ratio)) {
      cur.swap(prop);
      cur_lambda = prop_lambda;
      return true;
    }
    return false;
  };

  // Burn-in with Robbins-Monro style adaptation of log(sigma), gain halved
  // over the second half so the final step is not driven by one noisy window.
  std::size_t in_window = 0, acc_window = 0;
  for (std::size_t i = 0; i < opt.burn_in; ++i) {
    acc_window += step() ? 1 : 0;
    if (++in_window == kWindow) {
      const double rate = static_cast<double>(acc_window) / kWindow;
      const double gain = i < opt.burn_in / 2 ? 2.0 : 0.5;
      sigma = std::clamp(sigma * std::exp(gain * (rate - kTarget)), kSigmaMin, kSigmaMax);
      in_window = acc_window = 0;
    }
  }

  ChainResult res;
  res.sigma = sigma;
  res.draws.reserve(R);
  std::size_t accepted = 0, steps = 0;
  while (res.draws.size() < R) {
    for (std::size_t k = 0; k < opt.thinning; ++k, ++steps) accepted += step() ? 1 : 0;
    res.draws.emplace_back(cur);
  }
  res.acceptance = static_cast<double>(accepted) / static_cast<double>(steps);

  constexpr std::size_t kJudgeSteps = 500;
  if (steps >= kJudgeSteps) {
    const bool capped_high = sigma >= kSigmaMax && res.acceptance > 0.5;
    const bool in_band = res.acceptance >= 0.2 && res.acceptance <= 0.5;
    if (!in_band && !capped_high) {
      throw BadAcceptanceRate("acceptance " + std::to_string(res.acceptance) +
                              " outside [0.2, 0.5] with proposal step " + std::to_string(sigma));
    }
  }
  return res;
}

}  // namespace

GridHeatLaw tabulate_heat_law(double t, const QuotientGraph& g, std::size_t cells_per_dim) {
  const std::size_t dim = g.n_offdiag();
  if (dim > 2) {
    throw TooHighDimForGrid("grid inverse-CDF sampling needs N <= 2, got N=" +
                            std::to_string(dim) + "; use metropolis");
  }
  if (cells_per_dim < 2) throw InvalidArgument("grid needs at least 2 cells per dimension");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be finite and >= 0");

  GridHeatLaw law;
  law.dim = dim;
  law.cells = cells_per_dim;
  std::size_t total = 1;
  for (std::size_t j = 0; j < dim; ++j) total *= cells_per_dim;
  const double h = kTwoPi / static_cast<double>(cells_per_dim);

  std::vector<double> theta(dim * total);
  for (std::size_t c = 0; c < total; ++c) {
    std::size_t idx = c;
    for (std::size_t j = 0; j < dim; ++j) {
      theta[j * total + c] = (static_cast<double>(idx % cells_per_dim) + 0.5) * h;
      idx /= cells_per_dim;
    }
  }
  std::vector<double> lambda(total);
  SymbolEvaluator(g).evaluate(theta, total, lambda);

  law.probability.resize(total);
  for (std::size_t c = 0; c < total; ++c) law.probability[c] = std::exp(-t * lambda[c]);
  const double z = pairwise_sum(law.probability);
  for (auto& p : law.probability) p /= z;
  law.cumulative.resize(total);
  double run = 0.0;
  for (std::size_t c = 0; c < total; ++c) law.cumulative[c] = run += law.probability[c];
  law.cumulative.back() = 1.0;
  return law;
}

double GridHeatLaw::cdf_1d(double theta) const {
  if (dim != 1) throw DimensionMismatch("cdf_1d needs a one-dimensional law");
  if (theta <= 0.0) return 0.0;
  if (theta >= kTwoPi) return 1.0;
  const double x = theta / (kTwoPi / static_cast<double>(cells));
  const std::size_t k = std::min(static_cast<std::size_t>(x), cells - 1);
  const double below = k == 0 ? 0.0 : cumulative[k - 1];
  return below + (x - static_cast<double>(k)) * probability[k];
}

std::size_t GridHeatLaw::cell_of(const TorusPoint& p) const {
  if (p.dim() != dim) throw DimensionMismatch("torus point does not match the grid law");
  const double h = kTwoPi / static_cast<double>(cells);
  std::size_t idx = 0, stride = 1;
  for (std::size_t j = 0; j < dim; ++j) {
    const std::size_t k = std::min(static_cast<std::size_t>(p[j] / h), cells - 1);
    idx += k * stride;
    stride *= cells;
  }
  return idx;
}

FrequencySample sample_heat_law(double t, const QuotientGraph& g, std::size_t R,
                                const SamplerOptions& opt) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be finite and >= 0");
  if (R < 1) throw InvalidArgument("R must be >= 1");
  if (opt.mass_samples < 2) throw InvalidArgument("mass estimate needs >= 2 samples");
  const std::size_t dim = g.n_offdiag();
  if (opt.mode == SamplerMode::grid_icdf && dim > 2) {
    throw TooHighDimForGrid("grid inverse-CDF sampling needs N <= 2, got N=" +
                            std::to_string(dim) + "; use metropolis");
  }
  if (opt.mode == SamplerMode::metropolis && (opt.burn_in < 1000 || opt.thinning < 10)) {
    throw InvalidArgument("metropolis needs burn_in >= 1000 and thinning >= 10");
  }

  FrequencySample fs;
  fs.dim = dim;
  fs.t = t;
  fs.meta.mode = opt.mode;
  fs.meta.seed = opt.seed;
  fs.meta.mass_samples = opt.mass_samples;

  auto rng = make_rng(derive_seed(opt.seed, kChainStream));
  if (t == 0.0) {
    fs.thetas = sample_uniform(dim, R, rng);
  } else if (opt.mode == SamplerMode::grid_icdf) {
    fs.meta.grid_cells = opt.grid_cells;
    fs.thetas = sample_grid(tabulate_heat_law(t, g, opt.grid_cells), R, rng);
  } else {
    fs.meta.burn_in = opt.burn_in;
    fs.meta.thinning = opt.thinning;
    auto chain = run_metropolis(t, g, R, opt, rng);
    fs.thetas = std::move(chain.draws);
    fs.meta.acceptance_rate = chain.acceptance;
    fs.meta.proposal_step = chain.sigma;
  }

  const auto mass = heat_mass(
      t, g, QuadratureSpec::monte_carlo(opt.mass_samples, derive_seed(opt.seed, kMassStream)));
  fs.mass_estimate = std::min(1.0, mass.value);
  fs.mass_std_error = mass.std_error;
  return fs;
}

namespace {

void require_dim(const VirtualDiagram& v, const FrequencySample& fs) {
  if (v.dim() != fs.dim) {
    throw DimensionMismatch("virtual diagram has dimension " + std::to_string(v.dim()) +
                            ", frequency sample has " + std::to_string(fs.dim));
  }
}

double pair_with(const VirtualDiagram& v, const TorusPoint& th) {
  double s = 0.0;
  for (std::size_t j = 0; j < v.dim(); ++j) s += static_cast<double>(v.coeffs[j]) * th[j];
  return s;
}

}  // namespace

std::vector<double> feature_map(const VirtualDiagram& v, const FrequencySample& fs) {
  require_dim(v, fs);
  const double scale = std::sqrt(fs.mass_estimate / static_cast<double>(fs.size()));
  std::vector<double> out(2 * fs.size());
  for (std::size_t r = 0; r < fs.size(); ++r) {
    const double s = pair_with(v, fs.thetas[r]);
    out[2 * r] = scale * std::cos(s);
    out[2 * r + 1] = scale * std::sin(s);
  }
  return out;
}

double rff_kernel(const VirtualDiagram& u, const VirtualDiagram& v, const FrequencySample& fs) {
  require_dim(u, fs);
  require_dim(v, fs);
  const VirtualDiagram d = u - v;
  std::vector<double> c(fs.size());
  for (std::size_t r = 0; r < fs.size(); ++r) c[r] = std::cos(pair_with(d, fs.thetas[r]));
  return fs.mass_estimate / static_cast<double>(fs.size()) * pairwise_sum(c);
}

double rff_lip_bound(const FrequencySample& fs, const QuotientGraph& g) {
  std::vector<double> sq(fs.size());
  for (std::size_t r = 0; r < fs.size(); ++r) {
    const double l = phase_lip(fs.thetas[r], g);
    sq[r] = l * l;
  }
  const double mean = pairwise_sum(sq) / static_cast<double>(fs.size());
  return std::sqrt(2.0 * fs.mass_estimate) * std::sqrt(mean);
}

RffLipReport rff_lip_check(const FrequencySample& fs, const QuotientGraph& g,
                           std::size_t n_pairs, int radius, std::uint64_t pair_seed) {
  RffLipReport rep;
  rep.bound = rff_lip_bound(fs, g);
  for (const auto& [u, v] : random_virtual_pairs(n_pairs, fs.dim, radius, pair_seed)) {
    const auto pu = feature_map(u, fs);
    const auto pv = feature_map(v, fs);
    double s = 0.0;
    for (std::size_t k = 0; k < pu.size(); ++k) s += (pu[k] - pv[k]) * (pu[k] - pv[k]);
    rep.empirical_ratio_max = std::max(rep.empirical_ratio_max, std::sqrt(s) / rho(u, v, g));
    ++rep.pairs_evaluated;
  }
  return rep;
}

SpectralCheckReport rff_spectral_asymptotic_check(double t, const QuotientGraph& g,
                                                  std::size_t trials, std::size_t R,
                                                  const SamplerOptions& options,
                                                  std::size_t grid_points, double slack) {
  if (g.n_offdiag() > 2) {
    throw TooHighDimForGrid("spectral check needs N <= 2 for its quadrature oracle");
  }
  if (!(t > 0.0)) throw InvalidArgument("spectral check needs t > 0");
  SpectralCheckReport rep;
  rep.t = t;
  rep.R = R;
  rep.trials = trials;
  rep.slack = slack;
  rep.spectral_moment = spectral_moment(t, g, QuadratureSpec::tensor(grid_points)).value;
  rep.constant = std::numbers::pi * std::numbers::pi / (2.0 * g.d_min() * std::sqrt(g.w_min())) *
                 std::sqrt(rep.spectral_moment);
  for (std::size_t k = 0; k < trials; ++k) {
    SamplerOptions o = options;
    o.seed = derive_seed(options.seed, k);
    const double b = rff_lip_bound(sample_heat_law(t, g, R, o), g);
    rep.max_bound = std::max(rep.max_bound, b);
    if (b <= rep.constant * (1.0 + slack)) ++rep.passes;
  }
  return rep;
}

ResampleStats resample_statistics(double t, const QuotientGraph& g, std::size_t R,
                                  std::size_t resamples, const SamplerOptions& options,
                                  std::size_t n_stats, const SampleStatistic& stat) {
  if (resamples < 2) throw InvalidArgument("need at least 2 resamples");
  std::vector<std::vector<double>> values(n_stats, std::vector<double>(resamples));
  std::vector<double> row(n_stats);
  for (std::size_t k = 0; k < resamples; ++k) {
    SamplerOptions o = options;
    o.seed = derive_seed(options.seed, k);
    stat(sample_heat_law(t, g, R, o), row);
    for (std::size_t s = 0; s < n_stats; ++s) values[s][k] = row[s];
  }
  ResampleStats out;
  const double n = static_cast<double>(resamples);
  for (const auto& v : values) {
    const double mean = pairwise_sum(v) / n;
    std::vector<double> dev(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) dev[k] = (v[k] - mean) * (v[k] - mean);
    out.mean.push_back(mean);
    out.std_error.push_back(std::sqrt(pairwise_sum(dev) / (n - 1.0) / n));
  }
  return out;
}

std::size_t UnbiasedReport::outside() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const UnbiasedRow& r) { return !r.within; }));
}

UnbiasedReport rff_unbiasedness_check(double t, const QuotientGraph& g, std::size_t R,
                                      std::size_t resamples,
                                      std::span<const VirtualDiagram> gammas,
                                      const SamplerOptions& options, std::size_t grid_points,
                                      double bands) {
  const auto exact = kernel_values(t, gammas, g, QuadratureSpec::tensor(grid_points));
  const VirtualDiagram zero(g.n_offdiag());
  const auto stats = resample_statistics(
      t, g, R, resamples, options, gammas.size(), [&](const FrequencySample& fs, std::span<double> out) {
        for (std::size_t i = 0; i < gammas.size(); ++i) out[i] = rff_kernel(gammas[i], zero, fs);
      });
  UnbiasedReport rep;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    UnbiasedRow r{gammas[i], exact[i].value, stats.mean[i], stats.std_error[i], false};
    r.within = std::abs(r.mean - r.exact) <= bands * r.std_error;
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

}  // namespace vpd
