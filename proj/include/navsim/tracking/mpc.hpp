#pragma once

#include <span>
#include <vector>

#include "navsim/core/mat.hpp"
#include "navsim/core/types.hpp"
#include "navsim/tracking/qp.hpp"
#include "navsim/tracking/reference_path.hpp"

namespace nav {

// MPC states are ordered (x, y, v, yaw); inputs are (accel, steer).

struct AffineModel {
  Mat A;  // 4x4
  Mat B;  // 4x2
  Vec c;  // 4
};

/// First-order expansion of the bicycle step about (op, op_steer); yaw is not
/// wrapped, so A·op + B·u + c reproduces motion_bicycle up to 2π.
AffineModel linearize_bicycle(const Vec& op, double op_steer, double wheelbase, double dt);

/// One Euler step of the bicycle on an (x, y, v, yaw) vector without yaw wrap.
Vec bicycle_step(const Vec& z, double accel, double steer, double wheelbase, double dt);

struct MpcParams {
  int horizon = 5;
  Mat Q = Mat::diag({1.0, 1.0, 0.5, 0.5});
  Mat Qf = Mat::diag({1.0, 1.0, 0.5, 0.5});
  Mat R = Mat::diag({0.01, 0.01});
  Mat Rd = Mat::diag({0.01, 1.0});
  double a_max = 1.0;
  double steer_max = 0.44;
  double dsteer_max = 0.52;
  int max_outer_iters = 3;
  double du_tol = 0.1;
  AdmmParams qp;
};

struct MpcResult {
  double accel = 0.0;
  double steer = 0.0;
  std::vector<double> inputs;     // (a0, δ0, a1, δ1, ...), usable as the next warm start
  std::vector<Vec> predicted;     // T+1 states of the final linear prediction
  int outer_iterations = 0;
  bool qp_converged = false;
};

/// `window` holds T+1 reference states (x, y, v, yaw); entry 0 is the current
/// time and carries no cost. `warm_inputs` (2T values) seeds the first
/// linearization; zeros otherwise.
MpcResult mpc_track_step(const VehicleState& state, std::span<const Vec> window, const MpcParams& p,
                         double wheelbase, double dt, std::span<const double> warm_inputs = {});

/// T+1 reference states starting at the waypoint nearest to `state`, spaced by
/// the distance travelled per step at the current speed.
std::vector<Vec> mpc_reference_window(const VehicleState& state, const ReferencePath& ref, int horizon, double dt,
                                      std::size_t* nearest = nullptr);

}  // namespace nav
