#pragma once

#include <cmath>
#include <numbers>

namespace uavloc {

/// Planar position or displacement in meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline bool is_finite(const Point2& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

inline double distance(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double deg_to_rad(double deg) {
  return deg * (std::numbers::pi / 180.0);
}

inline double rad_to_deg(double rad) {
  return rad * (180.0 / std::numbers::pi);
}

/// Heading from `from` to `to` in degrees, normalized to [0, 360).
/// Zero-length direction maps to 0.
inline double bearing_deg(const Point2& from, const Point2& to) {
  if (from.x == to.x && from.y == to.y) return 0.0;
  const double deg = rad_to_deg(std::atan2(to.y - from.y, to.x - from.x));
  return deg < 0.0 ? deg + 360.0 : deg;
}

/// Smallest absolute angle between two headings, in [0, 180].
inline double heading_change_deg(double a_deg, double b_deg) {
  double d = std::fmod(std::fabs(a_deg - b_deg), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

}  // namespace uavloc
