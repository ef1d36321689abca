#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "uavloc/channel.hpp"
#include "uavloc/errors.hpp"
#include "uavloc/geometry.hpp"

namespace uavloc {

/// Rectangular search grid. Points are visited in scan order: y outer
/// ascending, x inner ascending, so scan index = iy * nx() + ix.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double resolution = 1.0;

  int nx() const { return static_cast<int>(std::floor((x_max - x_min) / resolution)) + 1; }
  int ny() const { return static_cast<int>(std::floor((y_max - y_min) / resolution)) + 1; }
  std::size_t point_count() const {
    return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny());
  }

  Point2 point(std::size_t scan_index) const {
    const int ix = static_cast<int>(scan_index % static_cast<std::size_t>(nx()));
    const int iy = static_cast<int>(scan_index / static_cast<std::size_t>(nx()));
    return Point2{x_min + ix * resolution, y_min + iy * resolution};
  }

  bool contains(const Point2& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }

  void validate() const {
    if (!(x_min < x_max) || !(y_min < y_max))
      throw ConfigError("grid: min bounds must be strictly below max bounds");
    if (!(resolution > 0.0) || !std::isfinite(resolution))
      throw ConfigError("grid: resolution must be > 0");
    if (point_count() < 1) throw ConfigError("grid: must contain at least one point");
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Sum of squared dB residuals of `candidate` against all measurements, each
/// evaluated at its own recorded UAV position.
inline double residual_objective(std::span<const Measurement> measurements,
                                 const Point2& candidate, const ChannelParams& params,
                                 double d_min_m) {
  if (measurements.empty())
    throw std::invalid_argument("residual_objective: measurements must be non-empty");
  double sum = 0.0;
  for (const Measurement& m : measurements) {
    const double r = m.rss_dbm - expected_rss(m.uav_pos, candidate, params, d_min_m);
    sum += r * r;
  }
  return sum;
}

/// Incremental grid-search MLE state. Adding measurements one at a time and
/// taking argmin() reproduces mle_grid_search() over the same measurement list
/// bit-for-bit; the simulation loop uses this to avoid rescoring the whole
/// measurement history every epoch.
class MleAccumulator {
 public:
  MleAccumulator(const GridSpec& grid, const ChannelParams& params, double d_min_m)
      : grid_(grid), params_(params), d_min_m_(d_min_m), objective_(grid.point_count(), 0.0) {
    grid_.validate();
  }

  void add(const Measurement& m) {
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    double* obj = objective_.data();
    std::size_t idx = 0;
    for (int iy = 0; iy < ny; ++iy) {
      const double gy = grid_.y_min + iy * grid_.resolution;
      for (int ix = 0; ix < nx; ++ix, ++idx) {
        const Point2 candidate{grid_.x_min + ix * grid_.resolution, gy};
        const double r = m.rss_dbm - expected_rss(m.uav_pos, candidate, params_, d_min_m_);
        obj[idx] += r * r;
      }
    }
    ++count_;
  }

  void add_all(std::span<const Measurement> measurements) {
    for (const Measurement& m : measurements) add(m);
  }

  /// Grid point with the lowest accumulated objective; ties resolve to the
  /// lowest scan index.
  Point2 argmin() const {
    if (count_ == 0) throw std::invalid_argument("MleAccumulator: no measurements added");
    std::size_t best = 0;
    for (std::size_t i = 1; i < objective_.size(); ++i) {
      if (objective_[i] < objective_[best]) best = i;
    }
    return grid_.point(best);
  }

  std::span<const double> objective() const { return objective_; }

 private:
  GridSpec grid_;
  ChannelParams params_;
  double d_min_m_;
  std::vector<double> objective_;
  std::size_t count_ = 0;
};

/// Exhaustive grid-search MLE: the grid point minimizing residual_objective,
/// ties broken by lowest scan index. Fully deterministic.
inline Point2 mle_grid_search(std::span<const Measurement> measurements, const GridSpec& grid,
                              const ChannelParams& params, double d_min_m) {
  if (measurements.empty())
    throw std::invalid_argument("mle_grid_search: measurements must be non-empty");
  MleAccumulator acc(grid, params, d_min_m);
  acc.add_all(measurements);
  return acc.argmin();
}

}  // namespace uavloc
