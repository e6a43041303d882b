#include "navsim/tracking/mpc.hpp"

#include <algorithm>
#include <cmath>

#include "navsim/core/angle.hpp"
#include "navsim/core/error.hpp"

namespace nav {

Vec bicycle_step(const Vec& z, double accel, double steer, double wheelbase, double dt) {
  return {z[0] + z[2] * std::cos(z[3]) * dt, z[1] + z[2] * std::sin(z[3]) * dt, z[2] + accel * dt,
          z[3] + z[2] * std::tan(steer) / wheelbase * dt};
}

AffineModel linearize_bicycle(const Vec& op, double op_steer, double wheelbase, double dt) {
  require(op.size() == 4, "operating point must be (x, y, v, yaw)");
  require(dt > 0.0 && wheelbase > 0.0, "dt and wheelbase must be positive");
  require(std::abs(op_steer) <= kPi / 2.0 - 1e-6, "steering angle out of range");
  const double v = op[2], yaw = op[3];
  const double c = std::cos(yaw), s = std::sin(yaw), cs = std::cos(op_steer);
  AffineModel m{Mat::identity(4), Mat::zeros(4, 2), {}};
  m.A(0, 2) = c * dt;
  m.A(0, 3) = -v * s * dt;
  m.A(1, 2) = s * dt;
  m.A(1, 3) = v * c * dt;
  m.A(3, 2) = std::tan(op_steer) / wheelbase * dt;
  m.B(2, 0) = dt;
  m.B(3, 1) = v / (wheelbase * cs * cs) * dt;
  const Vec f = bicycle_step(op, 0.0, op_steer, wheelbase, dt);
  const Vec lin = m.A * op + m.B * Vec{0.0, op_steer};
  m.c = f - lin;
  return m;
}

MpcResult mpc_track_step(const VehicleState& state, std::span<const Vec> window, const MpcParams& p,
                         double wheelbase, double dt, std::span<const double> warm_inputs) {
  const int T = p.horizon;
  require(T >= 1, "horizon must be at least 1");
  require(window.size() == static_cast<std::size_t>(T) + 1, "reference window must hold T+1 states");
  require(p.a_max > 0 && p.steer_max > 0 && p.dsteer_max > 0 && p.du_tol > 0 && p.max_outer_iters >= 1,
          "MPC bounds must be positive");
  require(warm_inputs.empty() || warm_inputs.size() == 2 * static_cast<std::size_t>(T),
          "warm start must hold 2T inputs");
  const std::size_t n = 2 * static_cast<std::size_t>(T);
  const Vec z0{state.pose.x, state.pose.y, state.v, state.pose.yaw};

  std::vector<Vec> ref(window.begin(), window.end());
  for (Vec& r : ref) r[3] = z0[3] + normalize_angle(r[3] - z0[3]);

  // constraints: input boxes, then steering-rate rows between consecutive steps
  const std::size_t m = n + static_cast<std::size_t>(T - 1);
  Qp qp{Mat::zeros(n, n), Vec(n, 0.0), Mat::zeros(m, n), Vec(m), Vec(m)};
  for (int t = 0; t < T; ++t) {
    qp.A(2 * t, 2 * t) = 1.0;
    qp.A(2 * t + 1, 2 * t + 1) = 1.0;
    qp.l[2 * t] = -p.a_max;
    qp.u[2 * t] = p.a_max;
    qp.l[2 * t + 1] = -p.steer_max;
    qp.u[2 * t + 1] = p.steer_max;
  }
  for (int t = 0; t + 1 < T; ++t) {
    const std::size_t row = n + t;
    qp.A(row, 2 * t + 3) = 1.0;
    qp.A(row, 2 * t + 1) = -1.0;
    qp.l[row] = -p.dsteer_max * dt;
    qp.u[row] = p.dsteer_max * dt;
  }

  MpcResult out;
  Vec u_bar = warm_inputs.empty() ? Vec(n, 0.0) : Vec(warm_inputs.begin(), warm_inputs.end());
  for (int outer = 0; outer < p.max_outer_iters; ++outer) {
    // z_t = G_t·U + h_t along the linearization of the current input guess
    std::vector<Vec> rollout{z0};
    for (int t = 0; t < T; ++t) rollout.push_back(bicycle_step(rollout.back(), u_bar[2 * t], u_bar[2 * t + 1], wheelbase, dt));
    std::vector<Mat> G{Mat::zeros(4, n)};
    std::vector<Vec> h{z0};
    for (int t = 0; t < T; ++t) {
      const AffineModel lin = linearize_bicycle(rollout[t], u_bar[2 * t + 1], wheelbase, dt);
      Mat g = lin.A * G.back();
      g.set_block(0, 2 * t, lin.B);
      G.push_back(std::move(g));
      h.push_back(lin.A * h.back() + lin.c);
    }

    std::fill(qp.q.begin(), qp.q.end(), 0.0);
    qp.P = Mat::zeros(n, n);
    for (int t = 1; t <= T; ++t) {
      const Mat& W = t == T ? p.Qf : p.Q;
      const Mat& g = G[t];
      const Mat wg = W * g;
      const Vec d = h[t] - ref[t];
      const Vec wd = W * d;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          double acc = 0.0;
          for (std::size_t k = 0; k < 4; ++k) acc += g(k, a) * wg(k, b);
          qp.P(a, b) += 2.0 * acc;
        }
        double acc = 0.0;
        for (std::size_t k = 0; k < 4; ++k) acc += g(k, a) * wd[k];
        qp.q[a] += 2.0 * acc;
      }
    }
    for (int t = 0; t < T; ++t)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) qp.P(2 * t + i, 2 * t + j) += 2.0 * p.R(i, j);
    for (int t = 0; t + 1 < T; ++t)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const double w = 2.0 * p.Rd(i, j);
          qp.P(2 * t + i, 2 * t + j) += w;
          qp.P(2 * t + 2 + i, 2 * t + 2 + j) += w;
          qp.P(2 * t + i, 2 * t + 2 + j) -= w;
          qp.P(2 * t + 2 + i, 2 * t + j) -= w;
        }
    qp.P.symmetrize();

    const QpResult sol = qp_solve_admm(qp, p.qp);
    Vec u_new(sol.z.begin(), sol.z.begin() + static_cast<std::ptrdiff_t>(n));
    double du = 0.0;
    for (std::size_t i = 0; i < n; ++i) du = std::max(du, std::abs(u_new[i] - u_bar[i]));
    u_bar = std::move(u_new);
    out.qp_converged = sol.converged;
    out.outer_iterations = outer + 1;
    out.predicted.clear();
    for (int t = 0; t <= T; ++t) out.predicted.push_back(G[t] * sol.x + h[t]);
    if (du < p.du_tol) break;
  }
  out.accel = u_bar[0];
  out.steer = u_bar[1];
  out.inputs = u_bar;
  return out;
}

std::vector<Vec> mpc_reference_window(const VehicleState& state, const ReferencePath& ref, int horizon, double dt,
                                      std::size_t* nearest) {
  require(horizon >= 1 && dt > 0.0, "invalid window parameters");
  const std::size_t start = nearest_path_point(state.pose, ref).index;
  if (nearest) *nearest = start;
  const auto& w = ref.waypoints;
  std::vector<Vec> out;
  std::size_t i = start;
  double along = 0.0;
  for (int k = 0; k <= horizon; ++k) {
    const double target = std::abs(state.v) * dt * k;
    while (i + 1 < w.size() && along < target) {
      along += std::hypot(w[i + 1].x - w[i].x, w[i + 1].y - w[i].y);
      ++i;
    }
    out.push_back({w[i].x, w[i].y, w[i].target_speed, w[i].yaw});
  }
  return out;
}

}  // namespace nav
