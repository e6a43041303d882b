#pragma once

#include <cstddef>
#include <vector>

#include "navsim/core/types.hpp"

namespace nav {

struct PathPoint {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  double curvature = 0.0;
  double target_speed = 0.0;
};

struct ReferencePath {
  std::vector<PathPoint> waypoints;

  /// Throws InvalidInput unless there are ≥ 2 waypoints more than 1e-6 m apart.
  void validate() const;
};

/// y = amplitude·sin(2πx/wavelength) sampled every `spacing` metres of x, with
/// analytic heading and curvature.
ReferencePath make_wavy_reference(double amplitude, double wavelength, double length, double spacing,
                                  double target_speed);

struct PathProjection {
  std::size_t index = 0;
  double e = 0.0;        // cross-track, positive when left of the path tangent
  double theta_e = 0.0;  // normalize(yaw - path yaw)
};

PathProjection nearest_path_point(const Pose2D& pose, const ReferencePath& ref);

}  // namespace nav
