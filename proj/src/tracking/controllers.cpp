#include "navsim/tracking/controllers.hpp"

#include <algorithm>
#include <cmath>

#include "navsim/core/error.hpp"

namespace nav {

PidOutput pid_step(const PidState& s, double error, double dt) {
  require(dt > 0.0, "dt must be positive");
  require(s.u_min < s.u_max, "u_min must be below u_max");
  const double integral = s.integral + error * dt;
  const double raw = s.kp * error + s.ki * integral + s.kd * (error - s.prev_error) / dt;
  PidOutput out{std::clamp(raw, s.u_min, s.u_max), s};
  if (raw >= s.u_min && raw <= s.u_max) out.state.integral = integral;
  out.state.prev_error = error;
  return out;
}

double rear_wheel_feedback(double v, double e, double theta_e, double kappa, const RearWheelGains& g) {
  const double denom = 1.0 - kappa * e;
  if (!(std::abs(denom) > 1e-6)) fail(ErrorCode::SingularGeometry, "1 - kappa*e is singular");
  const double sinc = theta_e == 0.0 ? 1.0 : std::sin(theta_e) / theta_e;
  return v * kappa * std::cos(theta_e) / denom - g.k_theta * std::abs(v) * theta_e - g.k_e * v * sinc * e;
}

}  // namespace nav
