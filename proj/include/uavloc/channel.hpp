#pragma once

#include <algorithm>
#include <cmath>

#include "uavloc/errors.hpp"
#include "uavloc/geometry.hpp"
#include "uavloc/rng.hpp"

namespace uavloc {

/// Log-distance path-loss channel with log-normal shadowing.
struct ChannelParams {
  double p0_dbm = 10.0;   ///< received power at the reference distance [dBm]
  double beta = 3.0;      ///< path-loss exponent
  double d0_m = 1.0;      ///< reference distance [m]
  double sigma_db = 6.0;  ///< shadowing standard deviation [dB]

  void validate() const {
    if (!std::isfinite(p0_dbm)) throw ConfigError("channel: p0_dbm must be finite");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("channel: beta must be > 0");
    if (!(d0_m > 0.0) || !std::isfinite(d0_m)) throw ConfigError("channel: d0_m must be > 0");
    if (!(sigma_db >= 0.0) || !std::isfinite(sigma_db))
      throw ConfigError("channel: sigma_db must be >= 0");
  }

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// One RSS observation at a known UAV position.
struct Measurement {
  int uav_id = 0;
  int epoch = 0;
  double rss_dbm = 0.0;
  Point2 uav_pos;

  friend bool operator==(const Measurement&, const Measurement&) = default;
};

/// Mean RSS in dBm at the given geometry: p0 - 10*beta*log10(d/d0).
/// The distance is clamped below by d_min_m, which keeps the value finite
/// when a UAV overflies the target.
inline double expected_rss(const Point2& uav, const Point2& target, const ChannelParams& params,
                           double d_min_m) {
  const double d = std::max(distance(uav, target), d_min_m);
  return params.p0_dbm - 10.0 * params.beta * std::log10(d / params.d0_m);
}

/// One noisy RSS sample: expected RSS plus a normal draw scaled by sigma_db.
/// With sigma_db = 0 the sample equals expected_rss exactly.
inline Measurement sample_rss(const Point2& uav, const Point2& target, const ChannelParams& params,
                              RngStream& rng, double d_min_m, int uav_id = 0, int epoch = 0) {
  const double rss = expected_rss(uav, target, params, d_min_m) + params.sigma_db * rng.normal();
  return Measurement{uav_id, epoch, rss, uav};
}

}  // namespace uavloc
