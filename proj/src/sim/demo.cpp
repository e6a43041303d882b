#include "navsim/sim/demo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "demos.hpp"

namespace nav {

namespace detail {

RngStream DemoContext::stream(std::uint64_t k) const {
  RngStream base(cfg.seed);
  std::uint64_t s = 0;
  for (std::uint64_t i = 0; i <= k; ++i) s = base.next_u64();
  return RngStream(s);
}

int DemoContext::count(const std::string& key, int lo) const {
  const double v = p(key);
  require(v == std::floor(v) && v >= lo && v <= 1e7, "parameter " + key + " must be an integer >= " + std::to_string(lo));
  return static_cast<int>(v);
}

double rms(const std::vector<double>& errors) {
  if (errors.empty()) return 0.0;
  double acc = 0.0;
  for (double e : errors) acc += e * e;
  return std::sqrt(acc / static_cast<double>(errors.size()));
}

std::vector<Point2> circle_outline(Point2 c, double r, int segments) {
  std::vector<Point2> out;
  for (int i = 0; i <= segments; ++i) {
    const double a = 2.0 * 3.14159265358979323846 * i / segments;
    out.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return out;
}

}  // namespace detail

namespace {

using Runner = void (*)(detail::DemoContext&);

struct Entry {
  DemoInfo info;
  Runner run;
};

const std::vector<Entry>& entries() {
  using namespace detail;
  static const std::vector<Entry> table = {
      {{"ekf_localization", "EKF with GNSS position fixes vs dead reckoning",
        {{"v_std", 0.1}, {"omega_std", 0.05}, {"gnss_std", 0.5}, {"q_pos", 0.02}, {"q_yaw", 0.01}, {"q_v", 0.1}}},
       ekf_localization},
      {{"particle_localization", "particle filter with range-bearing landmarks",
        {{"particles", 100}, {"v_std", 0.1}, {"omega_std", 0.05}, {"range_std", 0.2}, {"bearing_std", 0.03}}},
       particle_localization},
      {{"histogram_localization", "grid Bayes filter with landmark ranges, known heading",
        {{"resolution", 0.5}, {"motion_std_cells", 0.5}, {"obs_std", 0.5}, {"v_std", 0.1}, {"omega_std", 0.05},
         {"range_std", 0.2}}},
       histogram_localization},
      {{"grid_mapping", "log-odds occupancy mapping from simulated lidar at known poses",
        {{"resolution", 0.2}, {"beams", 72}, {"max_range", 8.0}, {"range_std", 0.02}}},
       grid_mapping},
      {{"kmeans_clustering", "k-means++ on three Gaussian blobs",
        {{"k", 3}, {"points_per_cluster", 60}, {"cluster_std", 1.5}, {"max_iters", 100}}},
       kmeans_clustering},
      {{"ekf_slam", "EKF-SLAM with known data association",
        {{"v_std", 0.1}, {"omega_std", 0.05}, {"range_std", 0.2}, {"bearing_std", 0.03}}},
       ekf_slam},
      {{"fastslam2", "FastSLAM 2.0 with known data association",
        {{"particles", 30}, {"v_std", 0.1}, {"omega_std", 0.05}, {"range_std", 0.2}, {"bearing_std", 0.03}}},
       fastslam2},
      {{"dijkstra_grid", "Dijkstra on an 8-connected grid", {{"random_obstacles", 0}}}, dijkstra_grid},
      {{"astar_grid", "A* with Euclidean heuristic on an 8-connected grid",
        {{"random_obstacles", 0}, {"heuristic_weight", 1.0}}},
       astar_grid},
      {{"potential_field", "greedy descent on an attractive/repulsive potential",
        {{"k_att", 5.0}, {"k_rep", 100.0}, {"rho0", 5.0}, {"resolution", 0.5}}},
       potential_field},
      {{"rrt_star", "RRT* among circular obstacles",
        {{"step", 1.0}, {"goal_sample_rate", 0.1}, {"max_iter", 1500}, {"gamma", 20.0}}},
       rrt_star},
      {{"lqr_rrt_star", "RRT* with LQR steering on a double integrator",
        {{"step", 1.0}, {"goal_sample_rate", 0.1}, {"max_iter", 800}, {"gamma", 20.0}, {"horizon", 100}}},
       lqr_rrt_star},
      {{"rear_wheel_pid", "rear-wheel feedback steering with PID speed control",
        {{"offset", 1.0}, {"target_speed", 2.0}, {"k_theta", 1.0}, {"k_e", 0.5}, {"kp", 1.0}, {"ki", 0.1},
         {"kd", 0.0}, {"a_max", 1.0}, {"speed_noise", 0.01}}},
       rear_wheel_pid},
      {{"mpc_tracking", "iterative linear MPC on a kinematic bicycle",
        {{"offset", 1.0}, {"target_speed", 2.0}, {"wheelbase", 2.5}, {"horizon", 5}, {"a_max", 1.0},
         {"steer_max", 0.44}, {"dsteer_max", 0.52}, {"speed_noise", 0.01}}},
       mpc_tracking},
  };
  return table;
}

}  // namespace

void ScenarioConfig::validate() const {
  require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
  require(std::isfinite(duration) && duration >= dt, "duration must be at least dt");
  for (const auto& [k, v] : params) require(std::isfinite(v), "parameter " + k + " must be finite");
}

const std::vector<DemoInfo>& demo_registry() {
  static const std::vector<DemoInfo> infos = [] {
    std::vector<DemoInfo> v;
    for (const Entry& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

std::vector<std::string> list_demos() {
  std::vector<std::string> names;
  for (const Entry& e : entries()) names.push_back(e.info.name);
  return names;
}

DemoArtifacts run_demo(const ScenarioConfig& cfg) {
  const auto it = std::find_if(entries().begin(), entries().end(),
                               [&](const Entry& e) { return e.info.name == cfg.demo; });
  if (it == entries().end()) fail(ErrorCode::UnknownDemo, "unknown demo '" + cfg.demo + "'");
  cfg.validate();
  std::map<std::string, double> params(it->info.params.begin(), it->info.params.end());
  for (const auto& [k, v] : cfg.params) {
    require(params.count(k) == 1, "demo " + cfg.demo + " has no parameter '" + k + "'");
    params[k] = v;
  }

  DemoArtifacts out;
  detail::DemoContext ctx{cfg, std::move(params), out};
  try {
    it->run(ctx);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidInput) throw;
    throw DemoFailure(e, std::move(out));
  }
  out.trace.validate();
  return out;
}

std::string artifact_stem(const ScenarioConfig& cfg) {
  return cfg.demo + "_seed" + std::to_string(cfg.seed);
}

std::vector<std::filesystem::path> write_artifacts(const DemoArtifacts& a, const std::filesystem::path& dir,
                                                   const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  if (!a.trace.columns.empty()) {
    written.push_back(dir / (stem + ".csv"));
    write_text_file(written.back(), a.trace.rows.empty() ? table_to_csv(a.trace) : trace_to_csv(a.trace));
  }
  for (const auto& [name, table] : a.tables) {
    written.push_back(dir / (stem + "_" + name + ".csv"));
    write_text_file(written.back(), table_to_csv(table));
  }
  if (!a.plot.empty()) {
    written.push_back(dir / (stem + ".svg"));
    render_svg_plot(a.plot, written.back(), a.plot_title);
  }
  if (a.pgm) {
    written.push_back(dir / (stem + ".pgm"));
    write_text_file(written.back(), *a.pgm);
  }
  return written;
}

}  // namespace nav
