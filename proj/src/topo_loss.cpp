#include "vpd/topo_loss.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>

#include "vpd/error.hpp"
#include "vpd/heat_kernel.hpp"

namespace vpd {

VirtualDiagram error_diagram(const Diagram& truth, const Diagram& pred) {
  if (truth.dim() != pred.dim()) {
    throw GridMismatch("diagrams live on ground sets of size " + std::to_string(truth.dim()) +
                       " and " + std::to_string(pred.dim()));
  }
  return VirtualDiagram::from_diagram(pred) - VirtualDiagram::from_diagram(truth);
}

double topo_loss_exact(const VirtualDiagram& gamma, double t, const QuotientGraph& g,
                       const QuadratureSpec& q) {
  const VirtualDiagram args[] = {VirtualDiagram(gamma.dim()), gamma};
  const auto k = kernel_values(t, args, g, q);
  return std::max(0.0, 2.0 * (k[0].value - k[1].value));
}

double topo_loss_rff(const VirtualDiagram& gamma, const FrequencySample& fs) {
  if (gamma.dim() != fs.dim) {
    throw DimensionMismatch("error diagram has dimension " + std::to_string(gamma.dim()) +
                            ", frequency sample has " + std::to_string(fs.dim));
  }
  std::vector<double> gap(fs.size());
  for (std::size_t r = 0; r < fs.size(); ++r) {
    double s = 0.0;
    for (std::size_t j = 0; j < gamma.dim(); ++j) {
      s += static_cast<double>(gamma.coeffs[j]) * fs.thetas[r][j];
    }
    gap[r] = 1.0 - std::cos(s);
  }
  return 2.0 * fs.mass_estimate / static_cast<double>(fs.size()) * pairwise_sum(gap);
}

UnbiasedReport loss_unbiasedness_check(double t, const QuotientGraph& g, std::size_t R,
                                       std::size_t resamples,
                                       std::span<const VirtualDiagram> gammas,
                                       const SamplerOptions& options, std::size_t grid_points,
                                       double bands) {
  std::vector<VirtualDiagram> args{VirtualDiagram(g.n_offdiag())};
  args.insert(args.end(), gammas.begin(), gammas.end());
  const auto k = kernel_values(t, args, g, QuadratureSpec::tensor(grid_points));
  const auto stats = resample_statistics(
      t, g, R, resamples, options, gammas.size(), [&](const FrequencySample& fs, std::span<double> out) {
        for (std::size_t i = 0; i < gammas.size(); ++i) out[i] = topo_loss_rff(gammas[i], fs);
      });
  UnbiasedReport rep;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    UnbiasedRow r{gammas[i], 2.0 * (k[0].value - k[i + 1].value), stats.mean[i],
                  stats.std_error[i], false};
    r.within = std::abs(r.mean - r.exact) <= bands * r.std_error;
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

double dice_loss(const Mask& y, const Mask& yh) {
  if (y.width != yh.width || y.height != yh.height || y.values.size() != yh.values.size()) {
    throw ShapeMismatch("masks are " + std::to_string(y.height) + "x" + std::to_string(y.width) +
                        " and " + std::to_string(yh.height) + "x" + std::to_string(yh.width));
  }
  double inter = 0.0, sy = 0.0, syh = 0.0;
  for (std::size_t i = 0; i < y.values.size(); ++i) {
    const double a = y.values[i], b = yh.values[i];
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) {
      throw InvalidArgument("mask entries must lie in [0, 1]");
    }
    inter += a * b;
    sy += a;
    syh += b;
  }
  return 1.0 - (2.0 * inter + 1.0) / (sy + syh + 1.0);
}

Mask synthetic_mask(std::size_t id, std::size_t side, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, id));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s = static_cast<double>(side);
  Mask m{side, side, std::vector<double>(side * side, 0.0)};
  auto paint = [&](auto&& inside) {
    for (std::size_t r = 0; r < side; ++r)
      for (std::size_t c = 0; c < side; ++c)
        if (inside(static_cast<double>(r) + 0.5, static_cast<double>(c) + 0.5)) m.values[r * side + c] = 1.0;
  };
  if (id % 2 == 0) {
    const double cy = s * (0.4 + 0.2 * u(rng)), cx = s * (0.4 + 0.2 * u(rng));
    const double outer = s * (0.25 + 0.12 * u(rng));
    const double inner = outer - s * (0.06 + 0.06 * u(rng));
    paint([&](double y, double x) {
      const double d = std::hypot(y - cy, x - cx);
      return d <= outer && d >= inner;
    });
  } else {
    const int blobs = 2 + static_cast<int>(u(rng) * 3.0);
    for (int b = 0; b < blobs; ++b) {
      const double cy = s * (0.15 + 0.7 * u(rng)), cx = s * (0.15 + 0.7 * u(rng));
      const double rad = s * (0.08 + 0.1 * u(rng));
      paint([&](double y, double x) { return std::hypot(y - cy, x - cx) <= rad; });
    }
  }
  return m;
}

Mask perturb_mask(const Mask& m, double noise_level, std::uint64_t seed) {
  if (!(noise_level >= 0.0 && noise_level <= 1.0)) {
    throw InvalidArgument("noise level must lie in [0, 1]");
  }
  Mask out = m;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(noise_level);
  for (auto& v : out.values)
    if (flip(rng)) v = 1.0 - v;
  return out;
}

GrayImage mask_filtration(const Mask& m) {
  std::vector<std::vector<double>> rows(m.height, std::vector<double>(m.width));
  for (std::size_t r = 0; r < m.height; ++r)
    for (std::size_t c = 0; c < m.width; ++c) rows[r][c] = 255.0 * (1.0 - m.values[r * m.width + c]);
  return GrayImage::from_rows(rows);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeMismatch("spearman needs equal-length samples");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

LossDemoResult loss_demo(const LossDemoConfig& cfg) {
  if (cfg.n_masks < 1 || cfg.R < 1 || cfg.side < 2 || !(cfg.t >= 0.0)) {
    throw InvalidArgument("loss demo needs n >= 1, R >= 1, side >= 2 and t >= 0");
  }
  const auto grid = GroundGrid::build(0.0, 255.0, cfg.grid_cells);
  const auto& g = grid.graph();
  const std::size_t n = cfg.n_masks;

  std::vector<VirtualDiagram> gammas;
  std::vector<double> dice(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Mask y = synthetic_mask(i, cfg.side, cfg.seed);
    const Mask yh = perturb_mask(y, cfg.noise_level, derive_seed(cfg.seed, 1000 + i));
    dice[i] = dice_loss(y, yh);
    const auto dy = quantize_to_ground(cubical_diagrams(mask_filtration(y)), grid, 255.0);
    const auto dyh = quantize_to_ground(cubical_diagrams(mask_filtration(yh)), grid, 255.0);
    gammas.push_back(error_diagram(dy.diagram, dyh.diagram));
  }

  // One sweep gives k_t(0) and every k_t(gamma_i).
  std::vector<VirtualDiagram> args{VirtualDiagram(g.n_offdiag())};
  args.insert(args.end(), gammas.begin(), gammas.end());
  const auto k = kernel_values(cfg.t, args, g, QuadratureSpec::tensor(cfg.quad_points));

  SamplerOptions opt;
  opt.seed = derive_seed(cfg.seed, 0x726666);
  const auto fs = sample_heat_law(cfg.t, g, cfg.R, opt);

  LossDemoResult res;
  res.ground_dim = g.n_offdiag();
  std::vector<double> mass(n), exact(n);
  for (std::size_t i = 0; i < n; ++i) {
    LossReport row;
    row.mask_id = i;
    row.gamma_mass = rho_norm(gammas[i], g);
    row.loss_exact = gammas[i].is_zero() ? 0.0 : std::max(0.0, 2.0 * (k[0].value - k[i + 1].value));
    row.loss_rff = topo_loss_rff(gammas[i], fs);
    row.dice = dice[i];
    row.rff_abs_error = std::abs(row.loss_exact - row.loss_rff);
    row.weighted_total = row.dice + cfg.w_topo * row.loss_exact;
    mass[i] = row.gamma_mass;
    exact[i] = row.loss_exact;
    res.rows.push_back(row);
  }
  res.spearman_mass_vs_exact = spearman(mass, exact);
  return res;
}

void write_loss_csv(std::ostream& out, const LossDemoResult& res) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << "mask_id,gamma_mass,loss_exact,loss_rff,dice,rff_abs_error,weighted_total\n";
  out << std::setprecision(17);
  for (const auto& r : res.rows) {
    out << r.mask_id << ',' << r.gamma_mass << ',' << r.loss_exact << ',' << r.loss_rff << ','
        << r.dice << ',' << r.rff_abs_error << ',' << r.weighted_total << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

}  // namespace vpd
