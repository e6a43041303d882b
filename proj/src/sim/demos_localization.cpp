#include <cmath>

#include "demos.hpp"
#include "navsim/core/angle.hpp"
#include "navsim/localization/ekf.hpp"
#include "navsim/localization/histogram_filter.hpp"
#include "navsim/localization/particle_filter.hpp"
#include "navsim/sim/scenarios.hpp"

namespace nav::detail {

namespace {

double dist(double ax, double ay, double bx, double by) { return std::hypot(ax - bx, ay - by); }

DriveNoise noise_from(const DemoContext& ctx) {
  DriveNoise n;
  auto take = [&](const char* key, double& slot) {
    if (ctx.params.count(key)) {
      slot = ctx.p(key);
      require(slot >= 0.0, std::string(key) + " must be non-negative");
    }
  };
  take("v_std", n.v_std);
  take("omega_std", n.omega_std);
  take("gnss_std", n.gnss_std);
  take("range_std", n.range_std);
  take("bearing_std", n.bearing_std);
  return n;
}

// Shared trace layout: truth, estimate, dead reckoning and their errors.
struct LocalizationRecorder {
  DemoArtifacts& out;
  const DriveScenario& sc;
  std::vector<Point2> truth, est, dr;
  std::vector<double> err_est, err_dr;

  LocalizationRecorder(DemoArtifacts& o, const DriveScenario& s, std::vector<std::string> extra) : out(o), sc(s) {
    std::vector<std::string> cols{"t", "true_x", "true_y", "true_yaw", "est_x", "est_y", "est_yaw",
                                  "dr_x", "dr_y", "dr_yaw"};
    cols.insert(cols.end(), extra.begin(), extra.end());
    cols.insert(cols.end(), {"err_est", "err_dr"});
    out.trace = TraceTable(cols);
  }

  void record(int k, const Pose2D& e, std::vector<double> extra) {
    const Pose2D& t = sc.truth[k + 1].pose;
    const Pose2D& d = sc.dead_reckoning[k + 1].pose;
    std::vector<double> row{(k + 1) * sc.dt, t.x, t.y, t.yaw, e.x, e.y, e.yaw, d.x, d.y, d.yaw};
    row.insert(row.end(), extra.begin(), extra.end());
    err_est.push_back(dist(e.x, e.y, t.x, t.y));
    err_dr.push_back(dist(d.x, d.y, t.x, t.y));
    row.push_back(err_est.back());
    row.push_back(err_dr.back());
    out.trace.add_row(std::move(row));
    truth.push_back({t.x, t.y});
    est.push_back({e.x, e.y});
    dr.push_back({d.x, d.y});
  }

  void finish(const std::string& title, const std::string& est_name) {
    out.summary["rmse_est"] = rms(err_est);
    out.summary["rmse_dr"] = rms(err_dr);
    out.plot_title = title;
    out.plot.insert(out.plot.begin(), {{"truth", truth}, {est_name, est}, {"dead reckoning", dr}});
    std::vector<Point2> lms;
    for (const auto& [id, lm] : sc.landmarks) lms.push_back(lm);
    if (!lms.empty()) {
      lms.push_back(lms.front());
      out.plot.push_back({"landmarks", lms});
    }
  }
};

}  // namespace

void ekf_localization(DemoContext& ctx) {
  const DriveNoise noise = noise_from(ctx);
  const DriveScenario sc = localization_scenario(ctx.cfg.seed, ctx.steps(), ctx.cfg.dt, noise);
  const double qp = ctx.p("q_pos"), qy = ctx.p("q_yaw"), qv = ctx.p("q_v");
  const Mat Q = Mat::diag({qp * qp, qp * qp, qy * qy, qv * qv});
  const Mat R = Mat::diag({noise.gnss_std * noise.gnss_std, noise.gnss_std * noise.gnss_std});

  LocalizationRecorder rec(ctx.out, sc, {"gnss_x", "gnss_y", "cov_trace"});
  GaussianBelief b = make_ekf_belief(sc.truth[0], Mat::diag({1e-4, 1e-4, 1e-4, 1e-4}));
  std::vector<Point2> fixes;
  for (int k = 0; k < static_cast<int>(sc.odometry.size()); ++k) {
    b = ekf_predict(b, sc.odometry[k], Q, sc.dt);
    b = ekf_update(b, sc.gnss[k], R);
    rec.record(k, ekf_state(b).pose, {sc.gnss[k].x, sc.gnss[k].y, b.cov.trace()});
    fixes.push_back(sc.gnss[k]);
  }
  rec.finish("EKF localization", "EKF estimate");
  ctx.out.plot.push_back({"GNSS fixes", fixes});
}

void particle_localization(DemoContext& ctx) {
  const DriveNoise noise = noise_from(ctx);
  const DriveScenario sc = localization_scenario(ctx.cfg.seed, ctx.steps(), ctx.cfg.dt, noise);
  const int n = ctx.count("particles", 1);
  const PfNoise pf{noise.v_std, noise.omega_std, noise.range_std, noise.bearing_std};
  RngStream rng = ctx.stream(1);

  LocalizationRecorder rec(ctx.out, sc, {"ess", "weight_sum", "observations"});
  ParticleSet ps = ParticleSet::uniform(sc.truth[0].pose, static_cast<std::size_t>(n));
  for (int k = 0; k < static_cast<int>(sc.odometry.size()); ++k) {
    ps = pf_step(ps, sc.odometry[k], sc.dt, sc.landmarks, sc.readings[k], pf, rng);
    double wsum = 0.0;
    for (const Particle& p : ps.particles) wsum += p.weight;
    rec.record(k, pf_estimate(ps), {effective_sample_size(ps), wsum, static_cast<double>(sc.readings[k].size())});
  }
  rec.finish("Particle filter localization", "PF estimate");
  std::vector<Point2> cloud;
  for (const Particle& p : ps.particles) cloud.push_back({p.pose.x, p.pose.y});
  ctx.out.plot.push_back({"final particles", cloud});
}

void histogram_localization(DemoContext& ctx) {
  const DriveNoise noise = noise_from(ctx);
  const DriveScenario sc = localization_scenario(ctx.cfg.seed, ctx.steps(), ctx.cfg.dt, noise);
  const double res = ctx.p("resolution"), motion_std = ctx.p("motion_std_cells"), obs_std = ctx.p("obs_std");
  require(res > 0.0 && motion_std >= 0.0 && obs_std > 0.0, "invalid histogram parameters");
  const Point2 origin{-15.0, -5.0};
  const int cells = static_cast<int>(std::ceil(30.0 / res));
  HistogramBelief h = HistogramBelief::uniform(cells, cells, res, origin);

  LocalizationRecorder rec(ctx.out, sc, {"mass", "peak_probability"});
  double acc_x = 0.0, acc_y = 0.0;
  for (int k = 0; k < static_cast<int>(sc.odometry.size()); ++k) {
    // odometry displacement with the dead-reckoned heading, quantized to cells
    acc_x += sc.dead_reckoning[k + 1].pose.x - sc.dead_reckoning[k].pose.x;
    acc_y += sc.dead_reckoning[k + 1].pose.y - sc.dead_reckoning[k].pose.y;
    const int dx = static_cast<int>(std::trunc(acc_x / res)), dy = static_cast<int>(std::trunc(acc_y / res));
    acc_x -= dx * res;
    acc_y -= dy * res;
    h = hf_predict(h, dx, dy, motion_std);
    std::vector<RangeReading> z;
    for (const RangeBearing& r : sc.readings[k]) z.push_back({sc.landmarks.at(*r.landmark_id), r.range});
    h = hf_update(h, z, obs_std);
    const Point2 e = hf_estimate(h);
    double peak = 0.0;
    for (double v : h.p) peak = std::max(peak, v);
    rec.record(k, {e.x, e.y, sc.dead_reckoning[k + 1].pose.yaw}, {h.total_mass(), peak});
  }
  rec.finish("Histogram filter localization", "histogram estimate");
}

}  // namespace nav::detail
