#include "navsim/tracking/reference_path.hpp"

#include <cmath>
#include <limits>

#include "navsim/core/angle.hpp"
#include "navsim/core/error.hpp"

namespace nav {

void ReferencePath::validate() const {
  require(waypoints.size() >= 2, "reference path needs at least two waypoints");
  for (std::size_t i = 1; i < waypoints.size(); ++i)
    require(std::hypot(waypoints[i].x - waypoints[i - 1].x, waypoints[i].y - waypoints[i - 1].y) > 1e-6,
            "consecutive waypoints coincide");
}

ReferencePath make_wavy_reference(double amplitude, double wavelength, double length, double spacing,
                                  double target_speed) {
  require(wavelength > 0 && length > 0 && spacing > 0, "invalid wavy reference parameters");
  const double k = 2.0 * kPi / wavelength;
  ReferencePath ref;
  const auto n = static_cast<std::size_t>(std::floor(length / spacing)) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) * spacing;
    const double d1 = amplitude * k * std::cos(k * x);
    const double d2 = -amplitude * k * k * std::sin(k * x);
    ref.waypoints.push_back({x, amplitude * std::sin(k * x), std::atan(d1), d2 / std::pow(1.0 + d1 * d1, 1.5),
                             target_speed});
  }
  ref.validate();
  return ref;
}

PathProjection nearest_path_point(const Pose2D& pose, const ReferencePath& ref) {
  require(!ref.waypoints.empty(), "empty reference path");
  PathProjection out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ref.waypoints.size(); ++i) {
    const double d = std::hypot(pose.x - ref.waypoints[i].x, pose.y - ref.waypoints[i].y);
    if (d < best) {
      best = d;
      out.index = i;
    }
  }
  const PathPoint& w = ref.waypoints[out.index];
  out.e = -(pose.x - w.x) * std::sin(w.yaw) + (pose.y - w.y) * std::cos(w.yaw);
  out.theta_e = normalize_angle(pose.yaw - w.yaw);
  return out;
}

}  // namespace nav
