#include "navsim/localization/ekf.hpp"

#include "navsim/core/angle.hpp"
#include "navsim/core/error.hpp"
#include "navsim/core/linalg.hpp"
#include "navsim/core/models.hpp"

namespace nav {
namespace {

void check_belief(const GaussianBelief& b) {
  require(b.mean.size() == 4 && b.cov.rows() == 4 && b.cov.cols() == 4, "EKF belief must be 4-dimensional");
}

}  // namespace

GaussianBelief make_ekf_belief(const VehicleState& s, const Mat& cov) {
  GaussianBelief b{{s.pose.x, s.pose.y, s.pose.yaw, s.v}, cov};
  check_belief(b);
  return b;
}

VehicleState ekf_state(const GaussianBelief& b) {
  check_belief(b);
  return {{b.mean[0], b.mean[1], b.mean[2]}, b.mean[3]};
}

GaussianBelief ekf_predict(const GaussianBelief& b, Control u, const Mat& Q, double dt) {
  check_belief(b);
  require(Q.rows() == 4 && Q.cols() == 4, "process noise Q must be 4x4");
  const VehicleState prior = ekf_state(b);
  const VehicleState next = motion_unicycle(prior, u.v, u.omega, dt);
  const Mat F = motion_jacobian(prior, u.v, dt);
  Mat cov = sandwich(F, b.cov) + Q;
  cov.symmetrize();
  return make_ekf_belief(next, cov);
}

GaussianBelief ekf_update(const GaussianBelief& b, const Point2& z, const Mat& R) {
  check_belief(b);
  require(R.rows() == 2 && R.cols() == 2, "measurement noise R must be 2x2");
  const Mat H{{1, 0, 0, 0}, {0, 1, 0, 0}};
  const Mat Ht = H.transpose();
  Mat S = sandwich(H, b.cov) + R;
  S.symmetrize();

  Mat K_t;  // Kᵀ = S⁻¹·H·P
  try {
    K_t = solve_spd(S, H * b.cov);
  } catch (const Error&) {
    fail(ErrorCode::NumericalFailure, "innovation covariance is not invertible");
  }
  const Mat K = K_t.transpose();
  const Vec innovation{z.x - b.mean[0], z.y - b.mean[1]};

  GaussianBelief post;
  post.mean = b.mean + K * innovation;
  post.mean[2] = normalize_angle(post.mean[2]);
  const Mat I_KH = Mat::identity(4) - K * H;
  post.cov = sandwich(I_KH, b.cov) + sandwich(K, R);
  post.cov.symmetrize();
  return post;
}

}  // namespace nav
