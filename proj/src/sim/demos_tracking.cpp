#include <algorithm>
#include <cmath>

#include "demos.hpp"
#include "navsim/core/models.hpp"
#include "navsim/tracking/controllers.hpp"
#include "navsim/tracking/mpc.hpp"
#include "navsim/tracking/reference_path.hpp"

namespace nav::detail {

namespace {

// y = 1.5·sin(2πx/25) over 150 m
ReferencePath canonical_reference(double speed) { return make_wavy_reference(1.5, 25.0, 150.0, 0.1, speed); }

VehicleState offset_start(const ReferencePath& ref, double offset) {
  const PathPoint& w = ref.waypoints.front();
  return {{w.x - offset * std::sin(w.yaw), w.y + offset * std::cos(w.yaw), w.yaw}, 0.0};
}

std::vector<Point2> reference_points(const ReferencePath& ref, double x_max) {
  std::vector<Point2> out;
  for (const PathPoint& w : ref.waypoints)
    if (w.x <= x_max) out.push_back({w.x, w.y});
  return out;
}

}  // namespace

void rear_wheel_pid(DemoContext& ctx) {
  const double speed = ctx.p("target_speed"), a_max = ctx.p("a_max"), noise = ctx.p("speed_noise");
  require(speed > 0.0 && a_max > 0.0 && noise >= 0.0, "invalid tracking parameters");
  const RearWheelGains gains{ctx.p("k_theta"), ctx.p("k_e")};
  const ReferencePath ref = canonical_reference(speed);
  PidState pid{ctx.p("kp"), ctx.p("ki"), ctx.p("kd"), 0.0, 0.0, -a_max, a_max};
  RngStream rng = ctx.stream(0);
  const double dt = ctx.cfg.dt;

  ctx.out.trace = TraceTable({"t", "x", "y", "yaw", "v", "ref_x", "ref_y", "e", "theta_e", "omega", "accel",
                              "err_abs_e", "err_speed"});
  VehicleState s = offset_start(ref, ctx.p("offset"));
  pid.prev_error = speed - s.v;
  std::vector<Point2> driven{{s.pose.x, s.pose.y}};
  double max_e = 0.0;
  for (int k = 0; k < ctx.steps(); ++k) {
    const PathProjection pr = nearest_path_point(s.pose, ref);
    const PathPoint& w = ref.waypoints[pr.index];
    const double omega = rear_wheel_feedback(s.v, pr.e, pr.theta_e, w.curvature, gains);
    const double measured = s.v + rng.gaussian(0.0, noise);
    const PidOutput out = pid_step(pid, speed - measured, dt);
    pid = out.state;
    s = motion_unicycle(s, s.v + out.u * dt, omega, dt);

    const PathProjection after = nearest_path_point(s.pose, ref);
    max_e = std::max(max_e, std::abs(after.e));
    ctx.out.trace.add_row({(k + 1) * dt, s.pose.x, s.pose.y, s.pose.yaw, s.v, ref.waypoints[after.index].x,
                           ref.waypoints[after.index].y, after.e, after.theta_e, omega, out.u, std::abs(after.e),
                           std::abs(speed - s.v)});
    driven.push_back({s.pose.x, s.pose.y});
  }
  const auto& last = ctx.out.trace.rows.back();
  ctx.out.summary["final_abs_e"] = last[ctx.out.trace.column("err_abs_e")];
  ctx.out.summary["max_abs_e"] = max_e;
  ctx.out.plot_title = "Rear-wheel feedback + PID";
  ctx.out.plot = {{"reference", reference_points(ref, s.pose.x + 5.0), 7}, {"vehicle", driven, 1}};
}

void mpc_tracking(DemoContext& ctx) {
  const double speed = ctx.p("target_speed"), L = ctx.p("wheelbase"), noise = ctx.p("speed_noise");
  require(speed > 0.0 && L > 0.0 && noise >= 0.0, "invalid tracking parameters");
  MpcParams p;
  p.horizon = ctx.count("horizon", 1);
  p.a_max = ctx.p("a_max");
  p.steer_max = ctx.p("steer_max");
  p.dsteer_max = ctx.p("dsteer_max");
  require(p.steer_max < 1.5, "steer_max must stay below pi/2");
  const ReferencePath ref = canonical_reference(speed);
  RngStream rng = ctx.stream(0);
  const double dt = ctx.cfg.dt;

  ctx.out.trace = TraceTable({"t", "x", "y", "yaw", "v", "e", "theta_e", "accel", "steer", "outer_iterations",
                              "qp_converged", "err_abs_e", "err_speed"});
  VehicleState s = offset_start(ref, ctx.p("offset"));
  std::vector<Point2> driven{{s.pose.x, s.pose.y}};
  std::vector<double> warm;
  double max_e = 0.0;
  int unconverged = 0;
  for (int k = 0; k < ctx.steps(); ++k) {
    VehicleState sensed = s;
    sensed.v += rng.gaussian(0.0, noise);
    const auto window = mpc_reference_window(sensed, ref, p.horizon, dt);
    const MpcResult u = mpc_track_step(sensed, window, p, L, dt, warm);
    // shift the optimized sequence one step for the next warm start
    warm.assign(u.inputs.begin() + 2, u.inputs.end());
    warm.push_back(u.inputs[u.inputs.size() - 2]);
    warm.push_back(u.inputs.back());
    unconverged += !u.qp_converged;
    s = motion_bicycle(s, u.accel, u.steer, L, dt);

    const PathProjection pr = nearest_path_point(s.pose, ref);
    max_e = std::max(max_e, std::abs(pr.e));
    ctx.out.trace.add_row({(k + 1) * dt, s.pose.x, s.pose.y, s.pose.yaw, s.v, pr.e, pr.theta_e, u.accel, u.steer,
                           static_cast<double>(u.outer_iterations), u.qp_converged ? 1.0 : 0.0, std::abs(pr.e),
                           std::abs(speed - s.v)});
    driven.push_back({s.pose.x, s.pose.y});
  }
  const auto& last = ctx.out.trace.rows.back();
  ctx.out.summary["final_abs_e"] = last[ctx.out.trace.column("err_abs_e")];
  ctx.out.summary["max_abs_e"] = max_e;
  ctx.out.summary["qp_unconverged_steps"] = unconverged;
  ctx.out.plot_title = "Iterative linear MPC";
  ctx.out.plot = {{"reference", reference_points(ref, s.pose.x + 5.0), 7}, {"vehicle", driven, 1}};
}

}  // namespace nav::detail
