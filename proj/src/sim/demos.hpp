#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "navsim/core/rng.hpp"
#include "navsim/sim/demo.hpp"

namespace nav::detail {

struct DemoContext {
  const ScenarioConfig& cfg;
  std::map<std::string, double> params;  // defaults merged with overrides
  DemoArtifacts& out;

  double p(const std::string& key) const { return params.at(key); }
  /// Integer-valued parameter ≥ lo; InvalidInput otherwise.
  int count(const std::string& key, int lo) const;
  int steps() const { return static_cast<int>(std::lround(cfg.duration / cfg.dt)); }
  /// Independent stream number `k` derived from the scenario seed.
  RngStream stream(std::uint64_t k) const;
};

void ekf_localization(DemoContext& ctx);
void particle_localization(DemoContext& ctx);
void histogram_localization(DemoContext& ctx);
void grid_mapping(DemoContext& ctx);
void kmeans_clustering(DemoContext& ctx);
void ekf_slam(DemoContext& ctx);
void fastslam2(DemoContext& ctx);
void dijkstra_grid(DemoContext& ctx);
void astar_grid(DemoContext& ctx);
void potential_field(DemoContext& ctx);
void rrt_star(DemoContext& ctx);
void lqr_rrt_star(DemoContext& ctx);
void rear_wheel_pid(DemoContext& ctx);
void mpc_tracking(DemoContext& ctx);

double rms(const std::vector<double>& errors);
std::vector<Point2> circle_outline(Point2 c, double r, int segments = 48);

}  // namespace nav::detail
