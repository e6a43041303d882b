#pragma once

#include <map>
#include <span>

#include "navsim/core/mat.hpp"
#include "navsim/core/types.hpp"
#include "navsim/localization/ekf.hpp"

namespace nav {

/// Joint Gaussian over (x, y, yaw, l1x, l1y, ..., lMx, lMy). `registry` maps
/// a landmark id to its slot; slot k occupies mean[3 + 2k], mean[4 + 2k].
struct EkfSlamState {
  GaussianBelief belief;
  std::map<int, std::size_t> registry;

  static EkfSlamState at_pose(const Pose2D& pose, const Mat& pose_cov);

  Pose2D pose() const { return {belief.mean[0], belief.mean[1], belief.mean[2]}; }
  std::size_t landmark_count() const { return registry.size(); }
  Point2 landmark(int id) const;
  Mat landmark_cov(int id) const;
};

/// Predict with the unicycle model (landmarks static), then for each reading:
/// EKF update if its id is registered, otherwise augment the state with the
/// inverse-observation estimate. Throws NumericalFailure when an innovation
/// covariance is singular.
EkfSlamState ekf_slam_step(const EkfSlamState& s, Control u, double dt, std::span<const RangeBearing> z,
                           const Mat& Q_pose, const Mat& R_obs);

}  // namespace nav
