#include "navsim/slam/ekf_slam.hpp"

#include <cmath>

#include "navsim/core/angle.hpp"
#include "navsim/core/error.hpp"
#include "navsim/core/linalg.hpp"
#include "navsim/core/models.hpp"

namespace nav {
namespace {

std::size_t offset_of(std::size_t slot) { return 3 + 2 * slot; }

void predict(EkfSlamState& s, Control u, double dt, const Mat& Q_pose) {
  const Pose2D prior = s.pose();
  const Pose2D next = motion_unicycle(VehicleState{prior, 0.0}, u.v, u.omega, dt).pose;
  Mat F = Mat::identity(3);
  F(0, 2) = -u.v * std::sin(prior.yaw) * dt;
  F(1, 2) = u.v * std::cos(prior.yaw) * dt;

  Mat& P = s.belief.cov;
  const std::size_t n = P.rows();
  const Mat Ppp = sandwich(F, P.block(0, 0, 3, 3)) + Q_pose;
  P.set_block(0, 0, Ppp);
  if (n > 3) {
    const Mat Ppl = F * P.block(0, 3, 3, n - 3);
    P.set_block(0, 3, Ppl);
    P.set_block(3, 0, Ppl.transpose());
  }
  P.symmetrize();
  s.belief.mean[0] = next.x;
  s.belief.mean[1] = next.y;
  s.belief.mean[2] = next.yaw;
}

void update(EkfSlamState& s, std::size_t slot, const RangeBearing& z, const Mat& R) {
  const std::size_t n = s.belief.dim();
  const std::size_t off = offset_of(slot);
  const Point2 lm{s.belief.mean[off], s.belief.mean[off + 1]};
  const Pose2D pose = s.pose();
  const RangeBearing pred = observe_range_bearing(pose, lm);
  const auto jac = observation_jacobians(pose, lm);

  Mat H(2, n);
  H.set_block(0, 0, jac.pose);
  H.set_block(0, off, jac.landmark);
  const Mat& P = s.belief.cov;
  const Mat PHt = P * H.transpose();
  Mat S = H * PHt + R;
  S.symmetrize();
  Mat K_t;
  try {
    K_t = solve_spd(S, PHt.transpose());
  } catch (const Error&) {
    fail(ErrorCode::NumericalFailure, "innovation covariance is singular");
  }
  const Mat K = K_t.transpose();
  const Vec innovation{z.range - pred.range, normalize_angle(z.bearing - pred.bearing)};
  s.belief.mean = s.belief.mean + K * innovation;
  s.belief.mean[2] = normalize_angle(s.belief.mean[2]);
  const Mat I_KH = Mat::identity(n) - K * H;
  s.belief.cov = sandwich(I_KH, P) + sandwich(K, R);
  s.belief.cov.symmetrize();
}

void augment(EkfSlamState& s, int id, const RangeBearing& z, const Mat& R) {
  const std::size_t n = s.belief.dim();
  const Pose2D pose = s.pose();
  const Point2 lm = landmark_init(pose, z);
  const auto g = landmark_init_jacobians(pose, z);

  const Mat& P = s.belief.cov;
  const Mat cross = g.pose * P.block(0, 0, 3, n);  // 2 x n
  const Mat Pll = sandwich(g.pose, P.block(0, 0, 3, 3)) + sandwich(g.measurement, R);

  Mat grown(n + 2, n + 2);
  grown.set_block(0, 0, P);
  grown.set_block(n, 0, cross);
  grown.set_block(0, n, cross.transpose());
  grown.set_block(n, n, Pll);
  grown.symmetrize();
  s.belief.cov = std::move(grown);
  s.belief.mean.push_back(lm.x);
  s.belief.mean.push_back(lm.y);
  const std::size_t slot = s.registry.size();
  s.registry.emplace(id, slot);
}

}  // namespace

EkfSlamState EkfSlamState::at_pose(const Pose2D& pose, const Mat& pose_cov) {
  require(pose_cov.rows() == 3 && pose_cov.cols() == 3, "pose covariance must be 3x3");
  return {{{pose.x, pose.y, pose.yaw}, pose_cov}, {}};
}

Point2 EkfSlamState::landmark(int id) const {
  const auto it = registry.find(id);
  require(it != registry.end(), "unknown landmark id");
  const std::size_t off = offset_of(it->second);
  return {belief.mean[off], belief.mean[off + 1]};
}

Mat EkfSlamState::landmark_cov(int id) const {
  const auto it = registry.find(id);
  require(it != registry.end(), "unknown landmark id");
  const std::size_t off = offset_of(it->second);
  return belief.cov.block(off, off, 2, 2);
}

EkfSlamState ekf_slam_step(const EkfSlamState& s, Control u, double dt, std::span<const RangeBearing> z,
                           const Mat& Q_pose, const Mat& R_obs) {
  require(Q_pose.rows() == 3 && Q_pose.cols() == 3, "Q_pose must be 3x3");
  require(R_obs.rows() == 2 && R_obs.cols() == 2, "R_obs must be 2x2");
  cholesky(R_obs);  // R_obs must be SPD
  require(s.belief.dim() == 3 + 2 * s.registry.size(), "state size does not match the registry");

  EkfSlamState out = s;
  predict(out, u, dt, Q_pose);
  for (const auto& reading : z) {
    require(reading.landmark_id.has_value(), "observation without landmark id");
    const auto it = out.registry.find(*reading.landmark_id);
    if (it != out.registry.end())
      update(out, it->second, reading, R_obs);
    else
      augment(out, *reading.landmark_id, reading, R_obs);
  }
  return out;
}

}  // namespace nav
