// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Runtimes are measured against each criterion's budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "navsim/core/angle.hpp"
#include "navsim/core/error.hpp"
#include "navsim/core/linalg.hpp"
#include "navsim/core/models.hpp"
#include "navsim/core/rng.hpp"
#include "navsim/localization/ekf.hpp"
#include "navsim/localization/histogram_filter.hpp"
#include "navsim/localization/particle_filter.hpp"
#include "navsim/mapping/kmeans.hpp"
#include "navsim/planning/grid_planner.hpp"
#include "navsim/planning/sampling_planner.hpp"
#include "navsim/sim/demo.hpp"
#include "navsim/sim/scenarios.hpp"
#include "navsim/slam/ekf_slam.hpp"
#include "navsim/slam/fastslam2.hpp"
#include "navsim/tracking/mpc.hpp"
#include "navsim/tracking/qp.hpp"
#include "support/control_oracles.hpp"
#include "support/estimation_oracles.hpp"
#include "support/oracles.hpp"
#include "support/planning_oracles.hpp"

using namespace nav;

namespace {

class Outcome {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  bool passed() const { return failures_.empty() && checks_ > 0; }
  std::size_t checks() const { return checks_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

// ---------------------------------------------------------------------------

void jacobians(Outcome& o) {
  using oracle::finite_difference_jacobian;
  using oracle::relative_error;
  RngStream rng(101);
  auto yaw_sample = [&] { return (rng.uniform() - 0.5) * 5.0; };
  auto state_vec = [](const VehicleState& s) { return Vec{s.pose.x, s.pose.y, s.pose.yaw, s.v}; };
  double worst = 0.0;
  auto record = [&](double err, const char* what) {
    worst = std::max(worst, err);
    o.check(err < 1e-5, std::string(what) + " relative error " + fmt("%.3g", err));
  };
  for (int t = 0; t < 100; ++t) {
    const VehicleState s{{rng.gaussian(0, 5), rng.gaussian(0, 5), yaw_sample()}, rng.uniform() * 3.0};
    const double v = rng.uniform() * 4.0 - 1.0, omega = rng.gaussian(0, 0.5);
    const double dt = 0.05 + rng.uniform() * 0.2;
    const double steer = (rng.uniform() - 0.5) * 1.2, accel = rng.gaussian(0, 1);
    const double L = 1.0 + rng.uniform() * 2.0;
    const Vec sx = state_vec(s);

    auto uni = [&](const Vec& x) { return state_vec(motion_unicycle({{x[0], x[1], x[2]}, x[3]}, v, omega, dt)); };
    record(relative_error(motion_jacobian(s, v, dt), finite_difference_jacobian(uni, sx)), "unicycle");

    const auto bj = bicycle_jacobians(s, steer, L, dt);
    auto bic_state = [&](const Vec& x) { return state_vec(motion_bicycle({{x[0], x[1], x[2]}, x[3]}, accel, steer, L, dt)); };
    auto bic_input = [&](const Vec& u) { return state_vec(motion_bicycle(s, u[0], u[1], L, dt)); };
    record(relative_error(bj.state, finite_difference_jacobian(bic_state, sx)), "bicycle state");
    record(relative_error(bj.input, finite_difference_jacobian(bic_input, Vec{accel, steer})), "bicycle input");

    const Point2 lm{s.pose.x + 2.0 + rng.uniform() * 5.0, s.pose.y + rng.gaussian(0, 4)};
    const auto oj = observation_jacobians(s.pose, lm);
    auto h_pose = [&](const Vec& x) {
      const auto z = observe_range_bearing({x[0], x[1], x[2]}, lm);
      return Vec{z.range, z.bearing};
    };
    auto h_lm = [&](const Vec& m) {
      const auto z = observe_range_bearing(s.pose, {m[0], m[1]});
      return Vec{z.range, z.bearing};
    };
    record(relative_error(oj.pose, finite_difference_jacobian(h_pose, Vec{s.pose.x, s.pose.y, s.pose.yaw})),
           "range-bearing pose");
    record(relative_error(oj.landmark, finite_difference_jacobian(h_lm, Vec{lm.x, lm.y})), "range-bearing landmark");

    const RangeBearing z = observe_range_bearing(s.pose, lm);
    const auto gj = landmark_init_jacobians(s.pose, z);
    auto g_pose = [&](const Vec& x) {
      const Point2 m = landmark_init({x[0], x[1], x[2]}, z);
      return Vec{m.x, m.y};
    };
    auto g_z = [&](const Vec& zz) {
      const Point2 m = landmark_init(s.pose, RangeBearing{zz[0], zz[1], {}});
      return Vec{m.x, m.y};
    };
    record(relative_error(gj.pose, finite_difference_jacobian(g_pose, Vec{s.pose.x, s.pose.y, s.pose.yaw})),
           "inverse observation pose");
    record(relative_error(gj.measurement, finite_difference_jacobian(g_z, Vec{z.range, z.bearing})),
           "inverse observation measurement");

    // linearization state order (x, y, v, yaw), yaw kept continuous around the operating point
    const Vec op{s.pose.x, s.pose.y, s.v, s.pose.yaw};
    const AffineModel m = linearize_bicycle(op, steer, L, dt);
    auto lin_state = [&](const Vec& x) {
      const VehicleState n = motion_bicycle({{x[0], x[1], x[3]}, x[2]}, accel, steer, L, dt);
      return Vec{n.pose.x, n.pose.y, n.v, op[3] + normalize_angle(n.pose.yaw - op[3])};
    };
    auto lin_input = [&](const Vec& u) {
      const VehicleState n = motion_bicycle(s, u[0], u[1], L, dt);
      return Vec{n.pose.x, n.pose.y, n.v, op[3] + normalize_angle(n.pose.yaw - op[3])};
    };
    record(relative_error(m.A, finite_difference_jacobian(lin_state, op)), "bicycle linearization A");
    record(relative_error(m.B, finite_difference_jacobian(lin_input, Vec{accel, steer})), "bicycle linearization B");
  }
  std::printf("  worst relative error %.3g\n", worst);
}

void riccati(Outcome& o) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto scalar = solve_dare(Mat{{1}}, Mat{{1}}, Mat{{1}}, Mat{{1}});
  o.check(std::abs(scalar.P(0, 0) - phi) < 1e-8, "scalar P " + fmt("%.17g", scalar.P(0, 0)));

  RngStream rng(2024);
  double worst_res = 0.0, worst_rho = 0.0;
  for (int t = 0; t < 20; ++t) {
    Mat A(3, 3), B(3, 1 + t % 2);
    for (double& v : A.data()) v = rng.uniform() * 2.4 - 1.2;
    for (double& v : B.data()) v = rng.uniform() * 2.0 - 1.0;
    const Mat Q = Mat::identity(3), R = Mat::identity(B.cols());
    try {
      const auto sol = solve_dare(A, B, Q, R);
      const double res = oracle::dare_residual(A, B, Q, R, sol.P);
      const double rho = oracle::spectral_radius(A - B * sol.K);
      worst_res = std::max(worst_res, res);
      worst_rho = std::max(worst_rho, rho);
      o.check(res < 1e-8, "system " + std::to_string(t) + " residual " + fmt("%.3g", res));
      o.check(rho < 1.0, "system " + std::to_string(t) + " closed-loop spectral radius " + fmt("%.6f", rho));
    } catch (const Error& e) {
      o.check(false, "system " + std::to_string(t) + ": " + e.what());
    }
  }
  std::printf("  max residual %.3g, max spectral radius %.4f\n", worst_res, worst_rho);
}

void check_cov(Outcome& o, const Mat& P, const std::string& where) {
  const double asym = P.asymmetry();
  o.check(asym <= 1e-9, where + " asymmetry " + fmt("%.3g", asym));
  const double ev = oracle::min_eigenvalue(P);
  o.check(ev >= -1e-9, where + " min eigenvalue " + fmt("%.3g", ev));
}

void filter_consistency(Outcome& o) {
  const int steps = 600;
  const DriveNoise noise;
  const DriveScenario loc = localization_scenario(1, steps, 0.1, noise);

  {
    const Mat Q = Mat::diag({0.02 * 0.02, 0.02 * 0.02, 0.01 * 0.01, 0.1 * 0.1});
    const Mat R = Mat::diag({noise.gnss_std * noise.gnss_std, noise.gnss_std * noise.gnss_std});
    GaussianBelief b = make_ekf_belief(loc.truth[0], Mat::diag({1e-4, 1e-4, 1e-4, 1e-4}));
    for (int k = 0; k < steps; ++k) {
      b = ekf_predict(b, loc.odometry[k], Q, loc.dt);
      check_cov(o, b.cov, "EKF predict step " + std::to_string(k));
      b = ekf_update(b, loc.gnss[k], R);
      check_cov(o, b.cov, "EKF update step " + std::to_string(k));
    }
  }
  {
    const PfNoise pn{noise.v_std, noise.omega_std, noise.range_std, noise.bearing_std};
    RngStream rng(11);
    ParticleSet ps = ParticleSet::uniform(loc.truth[0].pose, 100);
    double worst = 0.0;
    for (int k = 0; k < steps; ++k) {
      ps = pf_step(ps, loc.odometry[k], loc.dt, loc.landmarks, loc.readings[k], pn, rng);
      double sum = 0.0;
      for (const Particle& p : ps.particles) sum += p.weight;
      worst = std::max(worst, std::abs(sum - 1.0));
      o.check(std::abs(sum - 1.0) <= 1e-9, "PF weight sum at step " + std::to_string(k) + " " + fmt("%.17g", sum));
    }
    std::printf("  PF max |sum w - 1| %.3g\n", worst);
  }
  {
    HistogramBelief h = HistogramBelief::uniform(60, 60, 0.5, {-15.0, -5.0});
    double acc_x = 0.0, acc_y = 0.0, worst = 0.0;
    for (int k = 0; k < steps; ++k) {
      acc_x += loc.dead_reckoning[k + 1].pose.x - loc.dead_reckoning[k].pose.x;
      acc_y += loc.dead_reckoning[k + 1].pose.y - loc.dead_reckoning[k].pose.y;
      const int dx = static_cast<int>(std::trunc(acc_x / 0.5)), dy = static_cast<int>(std::trunc(acc_y / 0.5));
      acc_x -= dx * 0.5;
      acc_y -= dy * 0.5;
      h = hf_predict(h, dx, dy, 0.5);
      worst = std::max(worst, std::abs(h.total_mass() - 1.0));
      o.check(std::abs(h.total_mass() - 1.0) <= 1e-9, "histogram mass after predict " + std::to_string(k));
      std::vector<RangeReading> z;
      for (const RangeBearing& r : loc.readings[k]) z.push_back({loc.landmarks.at(*r.landmark_id), r.range});
      h = hf_update(h, z, 0.5);
      worst = std::max(worst, std::abs(h.total_mass() - 1.0));
      o.check(std::abs(h.total_mass() - 1.0) <= 1e-9, "histogram mass after update " + std::to_string(k));
    }
    std::printf("  histogram max |mass - 1| %.3g\n", worst);
  }
  {
    const DriveScenario sc = slam_scenario(1, steps, 0.1, noise);
    const Mat R = Mat::diag({noise.range_std * noise.range_std, noise.bearing_std * noise.bearing_std});
    EkfSlamState s = EkfSlamState::at_pose(sc.truth[0].pose, Mat::zeros(3, 3));
    double worst_asym = 0.0, worst_ev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < steps; ++k) {
      const double yaw = s.pose().yaw;
      Mat V = Mat::zeros(3, 2);
      V(0, 0) = std::cos(yaw) * sc.dt;
      V(1, 0) = std::sin(yaw) * sc.dt;
      V(2, 1) = sc.dt;
      const Mat Q = sandwich(V, Mat::diag({noise.v_std * noise.v_std, noise.omega_std * noise.omega_std}));
      s = ekf_slam_step(s, sc.odometry[k], sc.dt, sc.readings[k], Q, R);
      check_cov(o, s.belief.cov, "EKF-SLAM step " + std::to_string(k));
      worst_asym = std::max(worst_asym, s.belief.cov.asymmetry());
      worst_ev = std::min(worst_ev, oracle::min_eigenvalue(s.belief.cov));
    }
    std::printf("  EKF-SLAM max asymmetry %.3g, min eigenvalue %.3g, %zu landmarks\n", worst_asym, worst_ev,
                s.landmark_count());
  }
}

void beats_dead_reckoning(Outcome& o) {
  for (const char* demo : {"ekf_localization", "particle_localization", "histogram_localization"})
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      ScenarioConfig cfg;
      cfg.demo = demo;
      cfg.seed = seed;
      const DemoArtifacts a = run_demo(cfg);
      const double est = a.summary.at("rmse_est"), dr = a.summary.at("rmse_dr");
      std::printf("  %-24s seed %llu  rmse %.4f  dead reckoning %.4f\n", demo, static_cast<unsigned long long>(seed),
                  est, dr);
      o.check(est < dr, std::string(demo) + " seed " + std::to_string(seed) + ": " + fmt("%.4f", est) + " >= " +
                            fmt("%.4f", dr));
    }
}

void small_oracles(Outcome& o) {
  RngStream rng(555);
  auto random_belief = [&](int w, int h) {
    HistogramBelief b = HistogramBelief::uniform(w, h, 0.5, {-1, 2});
    double total = 0;
    for (double& v : b.p) total += (v = rng.uniform());
    for (double& v : b.p) v /= total;
    return b;
  };

  double hist_err = 0.0;
  for (int t = 0; t < 100; ++t) {
    const HistogramBelief b = random_belief(5, 5);
    const int dx = static_cast<int>(rng.next_u64() % 5) - 2, dy = static_cast<int>(rng.next_u64() % 5) - 2;
    const double sd = (t % 5) * 0.3;
    const auto got = hf_predict(b, dx, dy, sd);
    const auto want = oracle::brute_force_predict(b, dx, dy, sd);
    for (std::size_t i = 0; i < want.size(); ++i) hist_err = std::max(hist_err, std::abs(got.p[i] - want[i]));

    std::vector<RangeReading> z;
    for (int r = 0; r < 1 + t % 3; ++r) z.push_back({{rng.uniform() * 4 - 2, rng.uniform() * 4 + 1}, rng.uniform() * 3});
    const double osd = 0.2 + rng.uniform();
    const auto upd = hf_update(b, z, osd);
    const auto bayes = oracle::bayes_update(b, z, osd);
    for (std::size_t i = 0; i < bayes.size(); ++i) hist_err = std::max(hist_err, std::abs(upd.p[i] - bayes[i]));
  }
  o.check(hist_err <= 1e-9, "histogram max error " + fmt("%.3g", hist_err));
  std::printf("  histogram max error %.3g\n", hist_err);

  int km_cases = 0;
  double km_gap = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + t % 6;
    std::vector<Point2> pts;
    const Point2 ca{rng.uniform() * 5, rng.uniform() * 5};
    const Point2 cb{ca.x + 20 + rng.uniform() * 5, ca.y + rng.uniform() * 5};
    for (int i = 0; i < n; ++i) {
      const Point2& c = (i % 2) ? ca : cb;
      pts.push_back({c.x + rng.gaussian(0, 1), c.y + rng.gaussian(0, 1)});
    }
    RngStream seed(static_cast<std::uint64_t>(t));
    const Clustering km = kmeans_cluster(pts, 2, seed);
    const double best = oracle::brute_force_sse_k2(pts);
    km_gap = std::max(km_gap, std::abs(km.sse - best));
    o.check(std::abs(km.sse - best) <= 1e-9 * (1 + best), "k-means case " + std::to_string(t) + " sse " +
                                                               fmt("%.17g", km.sse) + " optimum " + fmt("%.17g", best));
    ++km_cases;
  }
  std::printf("  k-means %d cases, max sse gap %.3g\n", km_cases, km_gap);

  int solvable = 0;
  for (int t = 0; t < 100; ++t) {
    GridWorld w = oracle::random_world(rng, 8, 8, 0.3);
    const GridIndex s{static_cast<int>(rng.uniform() * 8), static_cast<int>(rng.uniform() * 8)};
    const GridIndex g{static_cast<int>(rng.uniform() * 8), static_cast<int>(rng.uniform() * 8)};
    w.set_blocked(s, false);
    w.set_blocked(g, false);
    oracle::BruteForce bf{w, g, {}, {}};
    const double want = bf.solve(s);
    for (double weight : {0.0, 1.0}) {
      const std::string tag = "grid world " + std::to_string(t) + (weight == 0.0 ? " dijkstra" : " astar");
      try {
        const GridPath p = plan_grid(w, s, g, weight);
        o.check(std::isfinite(want) && std::abs(p.cost - want) < 1e-9,
                tag + " cost " + fmt("%.17g", p.cost) + " brute force " + fmt("%.17g", want));
      } catch (const Error& e) {
        o.check(std::isinf(want) && e.code() == ErrorCode::NoPath, tag + ": " + e.what());
      }
    }
    if (std::isfinite(want)) ++solvable;
  }
  std::printf("  grid 100 worlds, %d solvable\n", solvable);

  double qp_err = 0.0;
  for (int t = 0; t < 200; ++t) {
    Mat m(3, 3), a(3, 3);
    for (double& v : m.data()) v = rng.gaussian(0, 1);
    for (double& v : a.data()) v = rng.gaussian(0, 1);
    Mat P = m.transpose() * m;
    for (int i = 0; i < 3; ++i) P(i, i) += 0.1;
    P.symmetrize();
    Qp qp{P, {rng.gaussian(0, 3), rng.gaussian(0, 3), rng.gaussian(0, 3)}, a, Vec(3), Vec(3)};
    for (int i = 0; i < 3; ++i) {
      qp.l[i] = -0.2 - rng.uniform();
      qp.u[i] = 0.2 + rng.uniform();
    }
    const Vec want = oracle::active_set_oracle(qp);
    const QpResult got = qp_solve_admm(qp);
    o.check(got.converged, "QP " + std::to_string(t) + " did not converge");
    double err = 0.0;
    for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(got.x[i] - want[i]));
    qp_err = std::max(qp_err, err);
    o.check(err < 1e-4, "QP " + std::to_string(t) + " error " + fmt("%.3g", err));
  }
  std::printf("  ADMM 200 QPs, max error %.3g\n", qp_err);
}

void slam_convergence(Outcome& o) {
  const DriveNoise zero{0.0, 0.0, 0.0, 0.0, 0.0};
  const double dt = 0.1;
  const DriveScenario sc = slam_scenario(1, slam_loop_steps(2.0, dt), dt, zero);
  const FastSlamNoise model{0.0, 0.0, 0.2, 0.03};
  const Mat R = Mat::diag({model.range_std * model.range_std, model.bearing_std * model.bearing_std});
  const Mat Q = Mat::diag({1e-4, 1e-4, 1e-5});

  EkfSlamState ekf = EkfSlamState::at_pose(sc.truth[0].pose, Mat::zeros(3, 3));
  auto fs = make_fastslam_particles(sc.truth[0].pose, 1);
  RngStream rng(1);
  for (std::size_t k = 0; k < sc.odometry.size(); ++k) {
    ekf = ekf_slam_step(ekf, sc.odometry[k], dt, sc.readings[k], Q, R);
    fs = fastslam2_step(fs, sc.odometry[k], dt, sc.readings[k], model, rng);
  }
  o.check(sc.landmarks.size() == 8, "world has " + std::to_string(sc.landmarks.size()) + " landmarks");
  double ekf_err = 0.0, fs_err = 0.0, gap = 0.0;
  for (const auto& [id, truth] : sc.landmarks) {
    const std::string tag = "landmark " + std::to_string(id);
    if (!ekf.registry.count(id) || !fs[0].landmarks.count(id)) {
      o.check(false, tag + " never mapped");
      continue;
    }
    const Point2 a = ekf.landmark(id), b = fs[0].landmarks.at(id).mean;
    ekf_err = std::max({ekf_err, std::abs(a.x - truth.x), std::abs(a.y - truth.y)});
    fs_err = std::max({fs_err, std::abs(b.x - truth.x), std::abs(b.y - truth.y)});
    gap = std::max({gap, std::abs(a.x - b.x), std::abs(a.y - b.y)});
  }
  o.check(ekf_err < 1e-5, "EKF-SLAM landmark error " + fmt("%.3g", ekf_err));
  o.check(fs_err < 1e-5, "FastSLAM 2.0 landmark error " + fmt("%.3g", fs_err));
  o.check(gap < 1e-6, "FastSLAM 2.0 vs EKF-SLAM gap " + fmt("%.3g", gap));
  std::printf("  %zu steps: EKF-SLAM err %.3g, FastSLAM err %.3g, gap %.3g\n", sc.odometry.size(), ekf_err, fs_err,
              gap);
}

void planner_run(Outcome& o, const char* tag, const PlanResult& r, int iterations, bool consistent) {
  o.check(consistent, std::string(tag) + " tree inconsistent after some iteration");
  o.check(static_cast<int>(r.best_cost_history.size()) == iterations,
          std::string(tag) + " history length " + std::to_string(r.best_cost_history.size()));
  double prev = std::numeric_limits<double>::infinity();
  for (int c = 500; c <= iterations; c += 500) {
    const double cur = r.best_cost_history[static_cast<std::size_t>(c) - 1];
    o.check(cur <= prev, std::string(tag) + " cost rose at iteration " + std::to_string(c));
    prev = cur;
  }
  std::printf("  %-22s cost %.4f  nodes %zu\n", tag, r.cost, r.tree.nodes.size());
}

void planner_invariants(Outcome& o) {
  RrtParams p;
  p.max_iter = 2000;
  PlanWorld empty;
  PlanWorld cluttered;
  cluttered.circles = {{{5, 5}, 1.5}, {{3, 7}, 1.0}, {{7, 3}, 1.0}, {{7.5, 7.5}, 0.8}};

  auto run = [&](const char* tag, const PlanWorld& w, std::uint64_t seed, bool lqr) {
    RngStream rng(seed);
    bool consistent = true;
    int calls = 0;
    const PlanObserver obs = [&](int, const PlanTree& t) {
      ++calls;
      consistent = consistent && oracle::tree_consistent(t);
    };
    try {
      const PlanResult r = lqr ? lqr_rrt_star_plan(w, {1, 1}, {9, 9}, p, rng, obs) : rrt_star_plan(w, {1, 1}, {9, 9}, p, rng, obs);
      o.check(calls == p.max_iter, std::string(tag) + " observer saw " + std::to_string(calls) + " iterations");
      planner_run(o, tag, r, p.max_iter, consistent);
      return r.cost;
    } catch (const Error& e) {
      o.check(false, std::string(tag) + ": " + e.what());
      return std::numeric_limits<double>::infinity();
    }
  };

  const double straight = 8.0 * std::sqrt(2.0);
  const double open_cost = run("rrt* empty seed 42", empty, 42, false);
  o.check(open_cost <= 1.05 * straight, "empty-world cost " + fmt("%.6f", open_cost) + " > " + fmt("%.6f", 1.05 * straight));
  std::printf("  empty-world ratio %.4f\n", open_cost / straight);
  run("rrt* cluttered seed 42", cluttered, 42, false);
  run("lqr-rrt* empty seed 42", empty, 42, true);
  run("lqr-rrt* cluttered seed 42", cluttered, 42, true);
}

void tracking(Outcome& o) {
  ScenarioConfig rw;
  rw.demo = "rear_wheel_pid";
  const DemoArtifacts a = run_demo(rw);
  const auto t = a.trace.values("t"), e = a.trace.values("err_abs_e");
  double last_outside = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (e[i] >= 0.05) last_outside = t[i];
  o.check(last_outside < 30.0, "rear-wheel |e| >= 0.05 m at t = " + fmt("%.2f", last_outside));
  o.check(e.back() < 0.05, "rear-wheel final |e| " + fmt("%.4f", e.back()));
  std::printf("  rear-wheel+PID: |e| < 0.05 m from t = %.1f s on, final %.4f m\n", last_outside, e.back());

  ScenarioConfig mc;
  mc.demo = "mpc_tracking";
  const DemoArtifacts m = run_demo(mc);
  const MpcParams bounds;
  const auto accel = m.trace.values("accel"), steer = m.trace.values("steer"), me = m.trace.values("err_abs_e");
  double peak_a = 0.0, peak_s = 0.0;
  for (std::size_t i = 0; i < accel.size(); ++i) {
    peak_a = std::max(peak_a, std::abs(accel[i]));
    peak_s = std::max(peak_s, std::abs(steer[i]));
  }
  o.check(peak_a <= bounds.a_max, "MPC |a| reached " + fmt("%.17g", peak_a));
  o.check(peak_s <= bounds.steer_max, "MPC |steer| reached " + fmt("%.17g", peak_s));
  o.check(me.back() < 0.05, "MPC final |e| " + fmt("%.4f", me.back()));
  std::printf("  MPC: max |a| %.4f, max |steer| %.4f, final |e| %.4f m\n", peak_a, peak_s, me.back());

  RngStream rng(4);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    MpcParams p;
    p.Rd = Mat::zeros(2, 2);
    p.a_max = p.steer_max = p.dsteer_max = 1e9;
    p.max_outer_iters = 1;
    p.qp.eps = 1e-11;
    p.qp.max_iter = 100000;
    const double L = 2.5, dt = 0.1;
    const VehicleState s{{rng.gaussian(0, 1), rng.gaussian(0, 1), (rng.uniform() - 0.5) * 2.0}, 1.0 + rng.uniform()};
    std::vector<Vec> ref;
    for (int k = 0; k <= p.horizon; ++k)
      ref.push_back({s.pose.x + 0.2 * k + rng.gaussian(0, 0.2), s.pose.y + rng.gaussian(0, 0.2), 2.0, rng.gaussian(0, 0.3)});
    const MpcResult got = mpc_track_step(s, ref, p, L, dt);
    o.check(got.qp_converged, "Riccati trial " + std::to_string(trial) + " QP did not converge");
    std::vector<AffineModel> models;
    VehicleState cur = s;
    for (int k = 0; k < p.horizon; ++k) {
      models.push_back(linearize_bicycle({cur.pose.x, cur.pose.y, cur.v, cur.pose.yaw}, 0.0, L, dt));
      cur = motion_bicycle(cur, 0.0, 0.0, L, dt);
    }
    for (Vec& r : ref) r[3] = s.pose.yaw + normalize_angle(r[3] - s.pose.yaw);
    const Vec want = oracle::riccati_first_input(models, ref, {s.pose.x, s.pose.y, s.v, s.pose.yaw}, p);
    const double err = std::max(std::abs(got.accel - want[0]), std::abs(got.steer - want[1]));
    worst = std::max(worst, err);
    o.check(err < 1e-6, "Riccati trial " + std::to_string(trial) + " error " + fmt("%.3g", err));
  }
  std::printf("  unconstrained MPC vs Riccati, max error %.3g\n", worst);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(Outcome& o) {
  const auto root = std::filesystem::temp_directory_path() / "navsim_acceptance";
  std::filesystem::remove_all(root);
  std::size_t files = 0;
  for (const std::string& demo : list_demos())
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      ScenarioConfig cfg;
      cfg.demo = demo;
      cfg.seed = seed;
      const std::string stem = artifact_stem(cfg);
      std::vector<std::filesystem::path> written[2];
      for (int run = 0; run < 2; ++run) {
        const auto dir = root / ("run" + std::to_string(run));
        std::filesystem::create_directories(dir);
        written[run] = write_artifacts(run_demo(cfg), dir, stem);
      }
      o.check(written[0].size() == written[1].size(), stem + " artifact count differs");
      bool has_csv = false, has_svg = false;
      for (std::size_t i = 0; i < std::min(written[0].size(), written[1].size()); ++i) {
        const auto& a = written[0][i];
        has_csv = has_csv || a.extension() == ".csv";
        has_svg = has_svg || a.extension() == ".svg";
        o.check(a.filename() == written[1][i].filename(), stem + " artifact names differ");
        o.check(slurp(a) == slurp(written[1][i]), a.filename().string() + " differs between runs");
        ++files;
      }
      o.check(has_csv && has_svg, stem + " missing CSV or SVG");
    }
  std::filesystem::remove_all(root);
  std::printf("  %zu artifact pairs compared\n", files);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Jacobians match central differences", 1.0, jacobians},
      {2, "Riccati solutions", 1.0, riccati},
      {3, "filter consistency over 600 steps", 10.0, filter_consistency},
      {4, "estimation beats dead reckoning", 20.0, beats_dead_reckoning},
      {5, "small-instance oracles", 60.0, small_oracles},
      {6, "zero-noise SLAM convergence", 10.0, slam_convergence},
      {7, "planner invariants", 30.0, planner_invariants},
      {8, "tracking", 30.0, tracking},
      {9, "determinism of the demo matrix", 600.0, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    std::printf("criterion %d: %s\n", c.id, c.name);
    std::fflush(stdout);
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("unexpected exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < c.budget_s, "runtime " + fmt("%.2f", secs) + " s over budget " + fmt("%.0f", c.budget_s) + " s");
    const bool ok = o.passed();
    failed += ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%zu checks, %.2f s of %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.name, o.checks(),
                secs, c.budget_s);
    const auto& f = o.failures();
    for (std::size_t i = 0; i < std::min<std::size_t>(f.size(), 5); ++i) std::printf("    %s\n", f[i].c_str());
    if (f.size() > 5) std::printf("    ... %zu more\n", f.size() - 5);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
