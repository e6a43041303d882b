#pragma once

#include <optional>

#include "navsim/core/mat.hpp"

namespace nav {

struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;  // (-pi, pi]

  bool operator==(const Pose2D&) const = default;
};

struct VehicleState {
  Pose2D pose;
  double v = 0.0;

  bool operator==(const VehicleState&) const = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

struct RangeBearing {
  double range = 0.0;
  double bearing = 0.0;
  std::optional<int> landmark_id;
};

/// Mean and covariance of a Kalman-family filter.
struct GaussianBelief {
  Vec mean;
  Mat cov;

  std::size_t dim() const { return mean.size(); }
};

}  // namespace nav
