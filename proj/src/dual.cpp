#include "vpd/dual.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vpd/error.hpp"
#include "vpd/simd.hpp"

namespace vpd {

double wrap_angle(double x) noexcept {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a value just below a multiple of 2pi can round up to 2pi itself.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

TorusPoint::TorusPoint(std::vector<double> theta) : theta_(std::move(theta)) {
  for (double& x : theta_) {
    if (!std::isfinite(x)) throw InvalidArgument("torus coordinate is not finite");
    x = wrap_angle(x);
  }
}

namespace {

void require_dim(std::size_t got, const QuotientGraph& g) {
  if (got != g.n_offdiag()) {
    throw DimensionMismatch("torus point has dimension " + std::to_string(got) +
                            ", graph has " + std::to_string(g.n_offdiag()) +
                            " off-diagonal vertices");
  }
}

}  // namespace

std::vector<double> phase_function(const TorusPoint& t, const QuotientGraph& g) {
  require_dim(t.dim(), g);
  std::vector<double> phi(t.values());
  phi.push_back(0.0);
  return phi;
}

double pairing(const VirtualDiagram& v, const TorusPoint& t) {
  if (v.dim() != t.dim()) {
    throw DimensionMismatch("pairing of dimension " + std::to_string(v.dim()) + " with " +
                            std::to_string(t.dim()));
  }
  double s = 0.0;
  for (std::size_t j = 0; j < v.dim(); ++j) s += static_cast<double>(v.coeffs[j]) * t[j];
  return s;
}

std::complex<double> character_eval(const TorusPoint& t, const VirtualDiagram& v) {
  const double s = pairing(v, t);
  return {std::cos(s), std::sin(s)};
}

double phase_lip(const TorusPoint& t, const QuotientGraph& g) {
  const auto phi = phase_function(t, g);
  double out = 0.0;
  simd::phase_lip_batch(simd::EdgeView::of(g.edges()), phi, 1, std::span<double>(&out, 1));
  return out;
}

CharLipBounds char_lip_bounds(const TorusPoint& t, const QuotientGraph& g) {
  const double lip = phase_lip(t, g);
  return {2.0 / std::numbers::pi * lip, lip};
}

double char_lip_bruteforce(const TorusPoint& t, const QuotientGraph& g, int radius) {
  require_dim(t.dim(), g);
  const std::size_t n = t.dim();
  if (n > 3 || radius > 3) {
    throw TooLarge("char_lip_bruteforce needs N <= 3 and radius <= 3 (got N=" +
                   std::to_string(n) + ", radius=" + std::to_string(radius) + ")");
  }
  if (radius < 0) throw InvalidArgument("radius must be nonnegative");

  VirtualDiagram gamma(n);
  std::fill(gamma.coeffs.begin(), gamma.coeffs.end(), -radius);
  double best = 0.0;
  // Odometer over the cube [-radius, radius]^N.
  while (true) {
    if (!gamma.is_zero()) {
      const double num = std::abs(character_eval(t, gamma) - 1.0);
      best = std::max(best, num / rho_norm(gamma, g));
    }
    std::size_t j = 0;
    while (j < n && gamma.coeffs[j] == radius) gamma.coeffs[j++] = -radius;
    if (j == n) break;
    ++gamma.coeffs[j];
  }
  return best;
}

double dirichlet_symbol(const TorusPoint& t, const QuotientGraph& g) {
  const auto phi = phase_function(t, g);
  std::vector<double> c(phi.size()), s(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    c[i] = std::cos(phi[i]);
    s[i] = std::sin(phi[i]);
  }
  double out = 0.0;
  simd::dirichlet_symbol_batch(simd::EdgeView::of(g.edges()), c, s, 1,
                               std::span<double>(&out, 1));
  return out;
}

LambdaLipConstants lambda_lip_constants(const QuotientGraph& g) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  const double m = static_cast<double>(g.edge_count());
  return {2.0 * g.w_min() * g.d_min() * g.d_min() / pi2,
          pi2 / 4.0 * g.w_max() * m * g.d_max() * g.d_max()};
}

}  // namespace vpd
