#pragma once

#include "navsim/core/mat.hpp"
#include "navsim/core/types.hpp"

namespace nav {

/// Odometry input shared by the localizers and SLAM.
struct Control {
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s
};

/// EKF belief over (x, y, yaw, v).
GaussianBelief make_ekf_belief(const VehicleState& s, const Mat& cov);

VehicleState ekf_state(const GaussianBelief& b);

/// Propagate mean through motion_unicycle and covariance as F·P·Fᵀ + Q.
GaussianBelief ekf_predict(const GaussianBelief& b, Control u, const Mat& Q, double dt);

/// Kalman update with a position fix z = (x, y) and noise covariance R.
/// Joseph form keeps the posterior symmetric positive semi-definite.
/// Throws NumericalFailure when the innovation covariance is singular.
GaussianBelief ekf_update(const GaussianBelief& b, const Point2& z, const Mat& R);

}  // namespace nav
