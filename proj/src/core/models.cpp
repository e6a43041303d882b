#include "navsim/core/models.hpp"

#include <cmath>

#include "navsim/core/angle.hpp"
#include "navsim/core/error.hpp"

namespace nav {

VehicleState motion_unicycle(const VehicleState& s, double v, double omega, double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidInput, "dt must be positive");
  VehicleState out;
  out.pose.x = s.pose.x + v * std::cos(s.pose.yaw) * dt;
  out.pose.y = s.pose.y + v * std::sin(s.pose.yaw) * dt;
  out.pose.yaw = normalize_angle(s.pose.yaw + omega * dt);
  out.v = v;
  return out;
}

VehicleState motion_bicycle(const VehicleState& s, double accel, double steer, double wheelbase, double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidInput, "dt must be positive");
  if (!(wheelbase > 0.0)) fail(ErrorCode::InvalidInput, "wheelbase must be positive");
  if (!(std::abs(steer) <= kPi / 2.0 - 1e-6)) fail(ErrorCode::InvalidInput, "steering angle out of range");
  VehicleState out;
  out.pose.x = s.pose.x + s.v * std::cos(s.pose.yaw) * dt;
  out.pose.y = s.pose.y + s.v * std::sin(s.pose.yaw) * dt;
  out.pose.yaw = normalize_angle(s.pose.yaw + s.v * std::tan(steer) / wheelbase * dt);
  out.v = s.v + accel * dt;
  return out;
}

Mat motion_jacobian(const VehicleState& s, double v, double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidInput, "dt must be positive");
  Mat j = Mat::identity(4);
  j(0, 2) = -v * std::sin(s.pose.yaw) * dt;
  j(1, 2) = v * std::cos(s.pose.yaw) * dt;
  j(3, 3) = 0.0;
  return j;
}

BicycleJacobians bicycle_jacobians(const VehicleState& s, double steer, double wheelbase, double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidInput, "dt must be positive");
  if (!(wheelbase > 0.0)) fail(ErrorCode::InvalidInput, "wheelbase must be positive");
  const double c = std::cos(s.pose.yaw);
  const double sn = std::sin(s.pose.yaw);
  const double cs = std::cos(steer);
  Mat a = Mat::identity(4);
  a(0, 2) = -s.v * sn * dt;
  a(0, 3) = c * dt;
  a(1, 2) = s.v * c * dt;
  a(1, 3) = sn * dt;
  a(2, 3) = std::tan(steer) / wheelbase * dt;
  Mat b(4, 2);
  b(2, 1) = s.v / (wheelbase * cs * cs) * dt;
  b(3, 0) = dt;
  return {std::move(a), std::move(b)};
}

RangeBearing observe_range_bearing(const Pose2D& p, const Point2& lm) {
  const double dx = lm.x - p.x;
  const double dy = lm.y - p.y;
  const double r = std::hypot(dx, dy);
  if (!(r > 1e-9)) fail(ErrorCode::SingularObservation, "landmark coincides with robot position");
  return {r, normalize_angle(std::atan2(dy, dx) - p.yaw), std::nullopt};
}

ObservationJacobians observation_jacobians(const Pose2D& p, const Point2& lm) {
  const double dx = lm.x - p.x;
  const double dy = lm.y - p.y;
  const double q = dx * dx + dy * dy;
  const double r = std::sqrt(q);
  if (!(r > 1e-9)) fail(ErrorCode::SingularObservation, "landmark coincides with robot position");
  Mat hp{{-dx / r, -dy / r, 0.0}, {dy / q, -dx / q, -1.0}};
  Mat hl{{dx / r, dy / r}, {-dy / q, dx / q}};
  return {std::move(hp), std::move(hl)};
}

Point2 landmark_init(const Pose2D& p, const RangeBearing& z) {
  const double a = p.yaw + z.bearing;
  return {p.x + z.range * std::cos(a), p.y + z.range * std::sin(a)};
}

InverseObservationJacobians landmark_init_jacobians(const Pose2D& p, const RangeBearing& z) {
  const double a = p.yaw + z.bearing;
  const double c = std::cos(a);
  const double s = std::sin(a);
  Mat gp{{1.0, 0.0, -z.range * s}, {0.0, 1.0, z.range * c}};
  Mat gz{{c, -z.range * s}, {s, z.range * c}};
  return {std::move(gp), std::move(gz)};
}

}  // namespace nav
