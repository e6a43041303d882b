#include <cmath>

#include "demos.hpp"
#include "navsim/slam/ekf_slam.hpp"
#include "navsim/slam/fastslam2.hpp"
#include "navsim/sim/scenarios.hpp"

namespace nav::detail {

namespace {

DriveNoise slam_noise(const DemoContext& ctx) {
  DriveNoise n;
  n.v_std = ctx.p("v_std");
  n.omega_std = ctx.p("omega_std");
  n.range_std = ctx.p("range_std");
  n.bearing_std = ctx.p("bearing_std");
  require(n.v_std >= 0 && n.omega_std >= 0 && n.range_std > 0 && n.bearing_std > 0, "invalid SLAM noise parameters");
  return n;
}

struct SlamRecorder {
  DemoArtifacts& out;
  const DriveScenario& sc;
  std::vector<Point2> truth, est, dr;
  std::vector<double> err_est, err_dr;

  SlamRecorder(DemoArtifacts& o, const DriveScenario& s, const std::string& extra) : out(o), sc(s) {
    out.trace = TraceTable({"t", "true_x", "true_y", "true_yaw", "est_x", "est_y", "est_yaw", "dr_x", "dr_y",
                            "landmarks_mapped", extra, "err_est", "err_dr"});
  }

  void record(int k, const Pose2D& e, std::size_t mapped, double extra) {
    const Pose2D& t = sc.truth[k + 1].pose;
    const Pose2D& d = sc.dead_reckoning[k + 1].pose;
    err_est.push_back(std::hypot(e.x - t.x, e.y - t.y));
    err_dr.push_back(std::hypot(d.x - t.x, d.y - t.y));
    out.trace.add_row({(k + 1) * sc.dt, t.x, t.y, t.yaw, e.x, e.y, e.yaw, d.x, d.y, static_cast<double>(mapped),
                       extra, err_est.back(), err_dr.back()});
    truth.push_back({t.x, t.y});
    est.push_back({e.x, e.y});
    dr.push_back({d.x, d.y});
  }

  template <class Lookup>
  void finish(const std::string& title, Lookup estimate_of) {
    TraceTable lm({"id", "true_x", "true_y", "est_x", "est_y", "err"});
    std::vector<Point2> true_pts, est_pts;
    for (const auto& [id, p] : sc.landmarks) {
      true_pts.push_back(p);
      Point2 e;
      if (!estimate_of(id, e)) continue;
      lm.add_row({static_cast<double>(id), p.x, p.y, e.x, e.y, std::hypot(e.x - p.x, e.y - p.y)});
      est_pts.push_back(e);
    }
    out.tables["landmarks"] = std::move(lm);
    out.summary["rmse_est"] = rms(err_est);
    out.summary["rmse_dr"] = rms(err_dr);
    out.plot_title = title;
    out.plot = {{"truth", truth}, {"estimate", est}, {"dead reckoning", dr}};
    true_pts.push_back(true_pts.front());
    out.plot.push_back({"landmarks (true)", true_pts});
    if (!est_pts.empty()) {
      est_pts.push_back(est_pts.front());
      out.plot.push_back({"landmarks (estimated)", est_pts});
    }
  }
};

}  // namespace

void ekf_slam(DemoContext& ctx) {
  const DriveNoise n = slam_noise(ctx);
  const DriveScenario sc = slam_scenario(ctx.cfg.seed, ctx.steps(), ctx.cfg.dt, n);
  const Mat R = Mat::diag({n.range_std * n.range_std, n.bearing_std * n.bearing_std});
  const double dt = ctx.cfg.dt;

  SlamRecorder rec(ctx.out, sc, "pose_cov_trace");
  EkfSlamState s = EkfSlamState::at_pose(sc.truth[0].pose, Mat::zeros(3, 3));
  for (int k = 0; k < static_cast<int>(sc.odometry.size()); ++k) {
    // odometry noise mapped into pose space at the current heading
    const double yaw = s.pose().yaw;
    Mat V = Mat::zeros(3, 2);
    V(0, 0) = std::cos(yaw) * dt;
    V(1, 0) = std::sin(yaw) * dt;
    V(2, 1) = dt;
    const Mat Q = sandwich(V, Mat::diag({n.v_std * n.v_std, n.omega_std * n.omega_std}));
    s = ekf_slam_step(s, sc.odometry[k], dt, sc.readings[k], Q, R);
    const double pose_trace = s.belief.cov(0, 0) + s.belief.cov(1, 1) + s.belief.cov(2, 2);
    rec.record(k, s.pose(), s.landmark_count(), pose_trace);
  }
  rec.finish("EKF-SLAM", [&](int id, Point2& e) {
    if (!s.registry.count(id)) return false;
    e = s.landmark(id);
    return true;
  });
}

void fastslam2(DemoContext& ctx) {
  const DriveNoise n = slam_noise(ctx);
  const DriveScenario sc = slam_scenario(ctx.cfg.seed, ctx.steps(), ctx.cfg.dt, n);
  const int count = ctx.count("particles", 1);
  const FastSlamNoise fn{n.v_std, n.omega_std, n.range_std, n.bearing_std};
  RngStream rng = ctx.stream(1);

  SlamRecorder rec(ctx.out, sc, "ess");
  auto particles = make_fastslam_particles(sc.truth[0].pose, static_cast<std::size_t>(count));
  auto best = [&] {
    std::size_t b = 0;
    for (std::size_t i = 1; i < particles.size(); ++i)
      if (particles[i].weight > particles[b].weight) b = i;
    return b;
  };
  for (int k = 0; k < static_cast<int>(sc.odometry.size()); ++k) {
    particles = fastslam2_step(particles, sc.odometry[k], ctx.cfg.dt, sc.readings[k], fn, rng);
    double sq = 0.0;
    for (const auto& p : particles) sq += p.weight * p.weight;
    rec.record(k, fastslam_estimate(particles), particles[best()].landmarks.size(), 1.0 / sq);
  }
  const FastSlamParticle& top = particles[best()];
  rec.finish("FastSLAM 2.0", [&](int id, Point2& e) {
    const auto it = top.landmarks.find(id);
    if (it == top.landmarks.end()) return false;
    e = it->second.mean;
    return true;
  });
}

}  // namespace nav::detail
