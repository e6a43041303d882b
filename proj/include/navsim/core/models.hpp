#pragma once

#include "navsim/core/mat.hpp"
#include "navsim/core/types.hpp"

namespace nav {

// All models integrate with one forward-Euler step.

/// x += v·cos(yaw)·dt, y += v·sin(yaw)·dt, yaw += ω·dt; stored speed = v.
VehicleState motion_unicycle(const VehicleState& s, double v, double omega, double dt);

/// Kinematic bicycle about the rear axle; speed integrates accel.
VehicleState motion_bicycle(const VehicleState& s, double accel, double steer, double wheelbase, double dt);

/// ∂motion_unicycle/∂(x, y, yaw, v) at state `s` with commanded speed `v`.
/// The stored speed is overwritten by the command, so the speed row and
/// column are zero.
Mat motion_jacobian(const VehicleState& s, double v, double dt);

struct BicycleJacobians {
  Mat state;  // 4x4 over (x, y, yaw, v)
  Mat input;  // 4x2 over (accel, steer)
};

BicycleJacobians bicycle_jacobians(const VehicleState& s, double steer, double wheelbase, double dt);

/// Range and bearing of landmark `lm` seen from `p`. Throws
/// SingularObservation when the landmark sits on the robot.
RangeBearing observe_range_bearing(const Pose2D& p, const Point2& lm);

struct ObservationJacobians {
  Mat pose;      // 2x3 over (x, y, yaw)
  Mat landmark;  // 2x2 over (lx, ly)
};

ObservationJacobians observation_jacobians(const Pose2D& p, const Point2& lm);

/// Landmark position implied by a range-bearing reading; exact inverse of
/// observe_range_bearing.
Point2 landmark_init(const Pose2D& p, const RangeBearing& z);

struct InverseObservationJacobians {
  Mat pose;         // 2x3
  Mat measurement;  // 2x2 over (range, bearing)
};

InverseObservationJacobians landmark_init_jacobians(const Pose2D& p, const RangeBearing& z);

}  // namespace nav
