#pragma once

namespace nav {

struct PidState {
  double kp = 1.0, ki = 0.0, kd = 0.0;
  double integral = 0.0;
  double prev_error = 0.0;
  double u_min = -1.0, u_max = 1.0;
};

struct PidOutput {
  double u = 0.0;
  PidState state;
};

/// Clamped PID; the integral is frozen on steps where the raw output
/// saturates.
PidOutput pid_step(const PidState& s, double error, double dt);

struct RearWheelGains {
  double k_theta = 1.0;
  double k_e = 0.5;
};

/// ω = vκcos(θe)/(1 − κe) − kθ|v|θe − kₑ v sinc(θe) e. Throws
/// SingularGeometry when |1 − κe| ≤ 1e-6.
double rear_wheel_feedback(double v, double e, double theta_e, double kappa, const RearWheelGains& g = {});

}  // namespace nav
