#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>

#include "uavloc/channel.hpp"
#include "uavloc/geometry.hpp"

namespace uavloc {

/// Symmetric 2x2 matrix stored as its upper triangle.
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }

  /// Smaller eigenvalue; both are real for a symmetric matrix.
  double min_eigenvalue() const {
    const double diff = xx - yy;
    const double disc = std::sqrt(diff * diff + 4.0 * xy * xy);
    return 0.5 * (trace() - disc);
  }

  Sym2& operator+=(const Sym2& o) {
    xx += o.xx;
    xy += o.xy;
    yy += o.yy;
    return *this;
  }
  friend Sym2 operator+(Sym2 a, const Sym2& b) { return a += b; }
  friend Sym2 operator*(double s, const Sym2& m) { return {s * m.xx, s * m.xy, s * m.yy}; }
  friend bool operator==(const Sym2&, const Sym2&) = default;
};

/// Fisher information about the target position, in 1/m^2.
using FimMatrix = Sym2;
/// Covariance bound, in m^2.
using Cov2 = Sym2;

/// Information scale factor (1/sigma_db) * (10*beta / ln 10).
/// Undefined for sigma_db = 0; pass the optimistic sigma (0.01 dB) instead.
inline double fim_scale(const ChannelParams& params) {
  if (!(params.sigma_db > 0.0))
    throw std::invalid_argument("fim_scale: sigma_db must be > 0 (use 0.01 for the noiseless case)");
  return (1.0 / params.sigma_db) * (10.0 * params.beta / std::log(10.0));
}

/// Fisher information contributed by one epoch of RSS measurements taken at
/// `uav_positions`, evaluated at the target estimate `r_hat`. Per-UAV distances
/// are clamped below by d_min_m, which bounds the 1/d^4 terms.
inline FimMatrix fim_epoch(std::span<const Point2> uav_positions, const Point2& r_hat,
                           const ChannelParams& params, double d_min_m) {
  if (uav_positions.empty())
    throw std::invalid_argument("fim_epoch: at least one UAV position required");
  const double k = fim_scale(params);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const Point2& uav : uav_positions) {
    const double dx = uav.x - r_hat.x;
    const double dy = uav.y - r_hat.y;
    const double d = std::max(std::sqrt(dx * dx + dy * dy), d_min_m);
    const double d2 = d * d;
    const double d4 = d2 * d2;
    sxx += dx * dx / d4;
    sxy += dx * dy / d4;
    syy += dy * dy / d4;
  }
  return FimMatrix{k * sxx, k * sxy, k * syy};
}

/// Element-wise sum of per-epoch information; the empty sum is the zero matrix.
inline FimMatrix fim_accumulate(std::span<const FimMatrix> history) {
  FimMatrix total;
  for (const FimMatrix& f : history) total += f;
  return total;
}

/// D-optimality score: the information determinant.
inline double d_optimality(const FimMatrix& fim) {
  return fim.det();
}

inline constexpr double kCrlbSingularDet = 1e-15;

/// Covariance lower bound: the information inverse. Returns nullopt when the
/// determinant is at or below kCrlbSingularDet, signalling unobservable
/// geometry (for example a single static UAV).
inline std::optional<Cov2> crlb(const FimMatrix& fim) {
  const double det = fim.det();
  if (!(det > kCrlbSingularDet)) return std::nullopt;
  return Cov2{fim.yy / det, -fim.xy / det, fim.xx / det};
}

}  // namespace uavloc
