#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "vpd/diagram.hpp"
#include "vpd/metric_pair.hpp"

namespace vpd {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle into [0, 2pi).
double wrap_angle(double x) noexcept;

/// Geodesic distance on R/2piZ for angles already in [0, 2pi).
inline double circle_dist(double a, double b) noexcept {
  const double d = a > b ? a - b : b - a;
  const double w = kTwoPi - d;
  return w < d ? w : d;
}

/// A point of the dual torus T^N; each coordinate is kept in [0, 2pi).
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<double> theta);
  static TorusPoint zero(std::size_t n) { return TorusPoint(std::vector<double>(n, 0.0)); }

  std::size_t dim() const noexcept { return theta_.size(); }
  double operator[](std::size_t j) const { return theta_[j]; }
  const std::vector<double>& values() const noexcept { return theta_; }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

 private:
  std::vector<double> theta_;
};

/// Phase function on X/A: vertex j carries theta_j, the basepoint carries 0.
std::vector<double> phase_function(const TorusPoint& t, const QuotientGraph& g);

/// <v, theta> as a plain real sum (not reduced).
double pairing(const VirtualDiagram& v, const TorusPoint& t);

/// chi_theta(v) = exp(i <v, theta>).
std::complex<double> character_eval(const TorusPoint& t, const VirtualDiagram& v);

/// Lipschitz constant of the phase function w.r.t. the quotient metric:
/// max over edges of circle distance / edge length. Single pass over E.
double phase_lip(const TorusPoint& t, const QuotientGraph& g);

struct CharLipBounds {
  double lower;
  double upper;
};

/// ((2/pi) L, L) with L = phase_lip; brackets Lip_rho(chi_theta).
CharLipBounds char_lip_bounds(const TorusPoint& t, const QuotientGraph& g);

/// max |chi(gamma) - 1| / rho(gamma, 0) over gamma != 0 with |gamma|_inf <= radius.
/// A lower bound on Lip_rho(chi_theta). Requires N <= 3 and radius <= 3.
double char_lip_bruteforce(const TorusPoint& t, const QuotientGraph& g, int radius);

/// Dirichlet symbol lambda(theta) = sum_edges w (1 - cos dist(phi_u, phi_v)).
double dirichlet_symbol(const TorusPoint& t, const QuotientGraph& g);

struct LambdaLipConstants {
  double c_lo;
  double c_hi;
};

/// c_lo = 2 w_min d_min^2 / pi^2,  c_hi = (pi^2/4) w_max M d_max^2, so that
/// c_lo Lip^2 <= lambda <= c_hi Lip^2.
LambdaLipConstants lambda_lip_constants(const QuotientGraph& g);

}  // namespace vpd
