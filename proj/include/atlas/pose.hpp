#pragma once

#include <cmath>
#include <numbers>

namespace atlas {

/// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a + std::numbers::pi, two_pi);
  if (r <= 0.0) r += two_pi;
  return r - std::numbers::pi;
}

/// Planar pose in meters with heading in radians.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose() = default;
  Pose(double x_, double y_, double theta_ = 0.0)
      : x(x_), y(y_), theta(normalize_angle(theta_)) {}

  friend bool operator==(const Pose&, const Pose&) = default;
};

inline double distance(const Pose& a, const Pose& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace atlas
