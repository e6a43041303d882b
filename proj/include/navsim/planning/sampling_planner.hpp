#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "navsim/core/mat.hpp"
#include "navsim/core/rng.hpp"
#include "navsim/core/types.hpp"

namespace nav {

struct Circle {
  Point2 center;
  double radius = 0.0;
};

struct Box {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
};

/// Continuous planar world; edges are collision-checked every resolution/2.
struct PlanWorld {
  double xmin = 0.0, ymin = 0.0, xmax = 10.0, ymax = 10.0;
  double resolution = 0.1;
  std::vector<Circle> circles;
  std::vector<Box> boxes;

  bool point_free(Point2 p) const;
  bool segment_free(Point2 a, Point2 b) const;
};

struct PlanNode {
  Vec state;
  std::optional<std::size_t> parent;
  double cost_from_root = 0.0;
  double edge_cost = 0.0;
};

struct PlanTree {
  std::vector<PlanNode> nodes;
};

struct RrtParams {
  double step = 1.0;
  double goal_sample_rate = 0.1;
  int max_iter = 2000;
  double gamma = 20.0;
};

struct PlanResult {
  PlanTree tree;
  std::vector<Point2> waypoints;
  double cost = 0.0;
  std::vector<double> best_cost_history;  // per iteration, +inf until the goal is connected
};

/// Called after every iteration, once rewiring has finished.
using PlanObserver = std::function<void(int iteration, const PlanTree&)>;

PlanResult rrt_star_plan(const PlanWorld& world, Point2 start, Point2 goal, const RrtParams& params,
                         RngStream& rng, const PlanObserver& observer = {});

/// Double integrator over (x, y, vx, vy) with acceleration inputs, Q = R = I.
struct LqrSteerModel {
  double dt = 0.1;
  Mat A, B, K, P;

  static LqrSteerModel make(double dt);
};

struct LqrTrajectory {
  std::vector<Vec> states;  // excludes the initial state
  double cost = 0.0;
  bool reached = false;
};

inline constexpr double kLqrReachTolerance = 0.05;

LqrTrajectory lqr_steer(const LqrSteerModel& m, const Vec& from, const Vec& to, int horizon);
LqrTrajectory lqr_steer(const Vec& from, const Vec& to, int horizon, double dt);

/// RRT* over rest states (x, y, 0, 0) using the LQR cost-to-go as distance and
/// lqr_steer trajectories as edges.
PlanResult lqr_rrt_star_plan(const PlanWorld& world, Point2 start, Point2 goal, const RrtParams& params,
                             RngStream& rng, const PlanObserver& observer = {}, int horizon = 100,
                             double dt = 0.1);

}  // namespace nav
