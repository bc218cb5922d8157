#include "vpd/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "vpd/error.hpp"

namespace vpd {

namespace {

Integrand heat_weighted(auto&& factor) {
  return [factor](const NodeBatch& b, std::span<double> out) {
    for (std::size_t i = 0; i < b.count; ++i) out[i] = factor(b, i) * b.heat[i];
  };
}

Integrand mass_integrand() {
  return [](const NodeBatch& b, std::span<double> out) {
    std::copy(b.heat.begin(), b.heat.end(), out.begin());
  };
}

Integrand lip_sq_integrand() {
  return heat_weighted([](const NodeBatch& b, std::size_t i) { return b.lip[i] * b.lip[i]; });
}

Integrand lambda_integrand() {
  return heat_weighted([](const NodeBatch& b, std::size_t i) { return b.lambda[i]; });
}

Integrand lip_integrand() {
  return heat_weighted([](const NodeBatch& b, std::size_t i) { return b.lip[i]; });
}

Integrand geometric_integrand(double t, const QuotientGraph& g) {
  constexpr double pi4 = std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::pi;
  const double rate = t * 8.0 * g.w_min() * g.d_min() * g.d_min() / pi4;
  return [rate](const NodeBatch& b, std::span<double> out) {
    for (std::size_t i = 0; i < b.count; ++i) {
      const double l2 = b.lip[i] * b.lip[i];
      out[i] = l2 * std::exp(-rate * l2);
    }
  };
}

// Real (cos) or imaginary (sin) part of chi_theta(gamma) exp(-t lambda).
Integrand character_integrand(const VirtualDiagram& gamma, bool imaginary) {
  std::vector<double> coeffs(gamma.coeffs.begin(), gamma.coeffs.end());
  return [coeffs = std::move(coeffs), imaginary](const NodeBatch& b, std::span<double> out) {
    for (std::size_t i = 0; i < b.count; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * b.theta_at(j, i);
      out[i] = (imaginary ? std::sin(s) : std::cos(s)) * b.heat[i];
    }
  };
}

Estimate single(double t, const QuotientGraph& g, const QuadratureSpec& q, Integrand f) {
  const Integrand fs[] = {std::move(f)};
  return integrate_torus(g, q, t, fs).front();
}

void require_dim(const VirtualDiagram& v, const QuotientGraph& g) {
  if (v.dim() != g.n_offdiag()) {
    throw DimensionMismatch("virtual diagram has dimension " + std::to_string(v.dim()) +
                            ", graph has " + std::to_string(g.n_offdiag()));
  }
}

}  // namespace

Estimate heat_mass(double t, const QuotientGraph& g, const QuadratureSpec& q) {
  return single(t, g, q, mass_integrand());
}

std::vector<KernelValue> kernel_values(double t, std::span<const VirtualDiagram> gammas,
                                       const QuotientGraph& g, const QuadratureSpec& q) {
  std::vector<Integrand> fs;
  fs.reserve(2 * gammas.size());
  for (const auto& gamma : gammas) {
    require_dim(gamma, g);
    fs.push_back(character_integrand(gamma, false));
    fs.push_back(character_integrand(gamma, true));
  }
  const auto est = integrate_torus(g, q, t, fs);
  std::vector<KernelValue> out(gammas.size());
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    out[k] = {est[2 * k].value, est[2 * k + 1].value, est[2 * k].std_error};
  }
  return out;
}

KernelValue kernel_eval(double t, const VirtualDiagram& u, const VirtualDiagram& v,
                        const QuotientGraph& g, const QuadratureSpec& q) {
  require_dim(u, g);
  require_dim(v, g);
  const VirtualDiagram gamma[] = {u - v};
  return kernel_values(t, gamma, g, q).front();
}

Eigen::MatrixXd gram_matrix(double t, std::span<const VirtualDiagram> vs, const QuotientGraph& g,
                            const QuadratureSpec& q) {
  if (vs.empty()) throw InvalidArgument("gram_matrix needs at least one diagram");
  // k_t(v_i, v_j) depends only on v_i - v_j and is even in it, so evaluate each
  // distinct difference (up to sign) once.
  std::map<std::vector<std::int64_t>, std::size_t> index;
  std::vector<VirtualDiagram> diffs;
  const std::size_t n = vs.size();
  std::vector<std::size_t> slot(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      VirtualDiagram d = vs[i] - vs[j];
      VirtualDiagram neg = vs[j] - vs[i];
      const auto& key = std::min(d.coeffs, neg.coeffs);
      auto [it, inserted] = index.try_emplace(key, diffs.size());
      if (inserted) diffs.emplace_back(key);
      slot[i * n + j] = slot[j * n + i] = it->second;
    }
  }
  const auto values = kernel_values(t, diffs, g, q);
  Eigen::MatrixXd gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[slot[i * n + j]].value;
  return gram;
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Estimate lip_prefactor(double t, const QuotientGraph& g, const QuadratureSpec& q) {
  return single(t, g, q, lip_sq_integrand());
}

Estimate spectral_moment(double t, const QuotientGraph& g, const QuadratureSpec& q) {
  return single(t, g, q, lambda_integrand());
}

Estimate lip_transform_bound(double t, const QuotientGraph& g, const QuadratureSpec& q) {
  return single(t, g, q, lip_integrand());
}

Estimate geometric_prefactor_bound(double t, const QuotientGraph& g, const QuadratureSpec& q) {
  return single(t, g, q, geometric_integrand(t, g));
}

HeatProfile heat_profile(double t, const QuotientGraph& g, const QuadratureSpec& q) {
  const Integrand fs[] = {mass_integrand(), lip_sq_integrand(), lambda_integrand(),
                          lip_integrand(), geometric_integrand(t, g)};
  const auto est = integrate_torus(g, q, t, fs);
  return {t, est[0], est[1], est[2], est[3], est[4]};
}

RkhsLipReport rkhs_function_lip_check(
    double t, const QuotientGraph& g, const QuadratureSpec& q,
    std::span<const VirtualDiagram> centers, std::span<const double> coeffs,
    std::span<const std::pair<VirtualDiagram, VirtualDiagram>> pairs) {
  if (centers.size() != coeffs.size()) {
    throw InvalidArgument("rkhs check needs one coefficient per center");
  }
  for (const auto& c : centers) require_dim(c, g);

  RkhsLipReport report;
  report.pairs_evaluated = pairs.size();
  if (centers.empty()) return report;

  // Gram, prefactor and every f(point) share one quadrature rule, so the
  // Lipschitz inequality is an exact statement about that discrete measure.
  const auto gram = gram_matrix(t, centers, g, q);
  Eigen::VectorXd c(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) c(static_cast<Eigen::Index>(i)) = coeffs[i];
  const double norm_sq = c.dot(gram * c);
  const double tol = 1e-8 * gram.trace() * c.squaredNorm();
  if (norm_sq < -tol) {
    throw NegativeNormSquared("c^T G c = " + std::to_string(norm_sq) +
                              " is negative beyond tolerance " + std::to_string(tol));
  }
  report.norm = std::sqrt(std::max(0.0, norm_sq));
  report.prefactor = lip_prefactor(t, g, q).value;
  report.lip_bound = report.norm * std::sqrt(report.prefactor);

  // Every kernel argument alpha - v_i that f needs at the sampled points.
  std::vector<VirtualDiagram> points;
  for (const auto& [a, b] : pairs) {
    require_dim(a, g);
    require_dim(b, g);
    points.push_back(a);
    points.push_back(b);
  }
  std::map<std::vector<std::int64_t>, std::size_t> index;
  std::vector<VirtualDiagram> args;
  std::vector<std::size_t> slot(points.size() * centers.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t i = 0; i < centers.size(); ++i) {
      VirtualDiagram d = points[p] - centers[i];
      auto [it, inserted] = index.try_emplace(d.coeffs, args.size());
      if (inserted) args.push_back(std::move(d));
      slot[p * centers.size() + i] = it->second;
    }
  }
  const auto kv = kernel_values(t, args, g, q);
  auto f_at = [&](std::size_t p) {
    double s = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i) s += coeffs[i] * kv[slot[p * centers.size() + i]].value;
    return s;
  };
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double dist = rho(pairs[k].first, pairs[k].second, g);
    if (dist == 0.0) continue;
    report.empirical_ratio_max =
        std::max(report.empirical_ratio_max, std::abs(f_at(2 * k) - f_at(2 * k + 1)) / dist);
  }
  return report;
}

std::vector<std::pair<VirtualDiagram, VirtualDiagram>> random_virtual_pairs(
    std::size_t count, std::size_t dim, int radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-radius, radius);
  std::uniform_int_distribution<std::size_t> axis(0, dim - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<std::pair<VirtualDiagram, VirtualDiagram>> out;
  out.reserve(count);
  while (out.size() < count) {
    VirtualDiagram a(dim), b(dim);
    for (auto& x : a.coeffs) x = coef(rng);
    if (out.size() % 2 == 0) {
      b = a;
      b.coeffs[axis(rng)] += sign(rng) ? 1 : -1;
    } else {
      for (auto& x : b.coeffs) x = coef(rng);
    }
    if (a != b) out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

}  // namespace vpd
