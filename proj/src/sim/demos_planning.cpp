#include <algorithm>
#include <cmath>
#include <limits>

#include "demos.hpp"
#include "navsim/planning/grid_planner.hpp"
#include "navsim/planning/potential_field.hpp"
#include "navsim/planning/sampling_planner.hpp"

namespace nav::detail {

namespace {

// 40x40 grid with a border and two staggered interior walls.
GridWorld maze(int random_obstacles, RngStream& rng, GridIndex start, GridIndex goal) {
  GridWorld w = GridWorld::open(40, 40);
  for (int i = 0; i < 40; ++i) {
    w.set_blocked({0, i});
    w.set_blocked({39, i});
    w.set_blocked({i, 0});
    w.set_blocked({i, 39});
  }
  for (int r = 0; r < 27; ++r) w.set_blocked({r, 13});
  for (int r = 13; r < 40; ++r) w.set_blocked({r, 26});
  for (int i = 0; i < random_obstacles; ++i) {
    const GridIndex c{1 + static_cast<int>(rng.uniform() * 38), 1 + static_cast<int>(rng.uniform() * 38)};
    if (c != start && c != goal) w.set_blocked(c);
  }
  return w;
}

void grid_demo(DemoContext& ctx, double weight, const std::string& title) {
  const int extra = ctx.count("random_obstacles", 0);
  RngStream rng = ctx.stream(0);
  const GridIndex start{5, 5}, goal{35, 35};
  const GridWorld w = maze(extra, rng, start, goal);

  std::vector<Point2> blocked;
  for (int r = 0; r < w.height; ++r)
    for (int c = 0; c < w.width; ++c)
      if (w.is_blocked({r, c})) blocked.push_back({static_cast<double>(c), static_cast<double>(r)});
  TraceTable obstacles({"col", "row"});
  for (const Point2& b : blocked) obstacles.add_row({b.x, b.y});
  ctx.out.tables["obstacles"] = std::move(obstacles);
  ctx.out.plot_title = title;
  ctx.out.plot.push_back({"border", {{0, 0}, {39, 0}, {39, 39}, {0, 39}, {0, 0}}, 7});
  ctx.out.plot.push_back({"wall", {{13, 0}, {13, 26}}, 7});
  ctx.out.plot.push_back({"wall", {{26, 13}, {26, 39}}, 7});

  ctx.out.trace = TraceTable({"t", "row", "col", "x", "y", "cost", "err_dist_to_goal"});
  const GridPath path = plan_grid(w, start, goal, weight);
  double g = 0.0;
  std::vector<Point2> line;
  for (std::size_t i = 0; i < path.cells.size(); ++i) {
    const GridIndex c = path.cells[i];
    if (i) g += grid_step_cost(path.cells[i - 1], c);
    const double x = c.col * w.resolution, y = c.row * w.resolution;
    ctx.out.trace.add_row({static_cast<double>(i), static_cast<double>(c.row), static_cast<double>(c.col), x, y, g,
                           std::hypot(c.row - goal.row, c.col - goal.col) * w.resolution});
    line.push_back({x, y});
  }
  ctx.out.summary["cost"] = path.cost;
  ctx.out.summary["expanded"] = path.expanded;
  ctx.out.plot.push_back({"path", line, 1});
}

PlanWorld clutter() {
  PlanWorld w;
  w.xmin = -2.0;
  w.ymin = -2.0;
  w.xmax = 15.0;
  w.ymax = 15.0;
  w.resolution = 0.1;
  w.circles = {{{5, 5}, 1}, {{3, 6}, 2}, {{3, 8}, 2}, {{3, 10}, 2}, {{7, 5}, 2}, {{9, 5}, 2}, {{8, 10}, 1}};
  return w;
}

// Depth-first walk that returns along every edge, so a single polyline draws the tree.
std::vector<Point2> tree_walk(const PlanTree& t) {
  std::vector<std::vector<std::size_t>> kids(t.nodes.size());
  for (std::size_t i = 1; i < t.nodes.size(); ++i) kids[*t.nodes[i].parent].push_back(i);
  std::vector<Point2> out;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  out.push_back({t.nodes[0].state[0], t.nodes[0].state[1]});
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < kids[node].size()) {
      const std::size_t child = kids[node][next++];
      out.push_back({t.nodes[child].state[0], t.nodes[child].state[1]});
      stack.emplace_back(child, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) out.push_back({t.nodes[stack.back().first].state[0], t.nodes[stack.back().first].state[1]});
    }
  }
  return out;
}

void sampling_demo(DemoContext& ctx, bool lqr) {
  RrtParams p;
  p.step = ctx.p("step");
  p.goal_sample_rate = ctx.p("goal_sample_rate");
  p.max_iter = ctx.count("max_iter", 1);
  p.gamma = ctx.p("gamma");
  const PlanWorld world = clutter();
  const Point2 start{0, 0}, goal{6, 10};
  RngStream rng = ctx.stream(0);

  ctx.out.plot_title = lqr ? "LQR-RRT*" : "RRT*";
  for (const Circle& c : world.circles) ctx.out.plot.push_back({"obstacle", circle_outline(c.center, c.radius), 7});
  ctx.out.trace = TraceTable({"t", "nodes", "connected", "best_cost", "err_nearest_to_goal"});
  std::vector<std::size_t> sizes;
  std::vector<double> nearest;
  double closest = std::hypot(goal.x - start.x, goal.y - start.y);
  const PlanObserver observe = [&](int, const PlanTree& t) {
    for (std::size_t i = sizes.empty() ? 0 : sizes.back(); i < t.nodes.size(); ++i)
      closest = std::min(closest, std::hypot(t.nodes[i].state[0] - goal.x, t.nodes[i].state[1] - goal.y));
    sizes.push_back(t.nodes.size());
    nearest.push_back(closest);
  };
  const PlanResult r = lqr ? lqr_rrt_star_plan(world, start, goal, p, rng, observe, ctx.count("horizon", 1))
                           : rrt_star_plan(world, start, goal, p, rng, observe);
  for (std::size_t i = 0; i < r.best_cost_history.size(); ++i) {
    const double c = r.best_cost_history[i];
    const bool ok = std::isfinite(c);
    ctx.out.trace.add_row({static_cast<double>(i + 1), static_cast<double>(sizes[i]), ok ? 1.0 : 0.0, ok ? c : 0.0,
                           nearest[i]});
  }
  TraceTable path({"index", "x", "y"});
  for (std::size_t i = 0; i < r.waypoints.size(); ++i)
    path.add_row({static_cast<double>(i), r.waypoints[i].x, r.waypoints[i].y});
  ctx.out.tables["path"] = std::move(path);
  ctx.out.summary["cost"] = r.cost;
  ctx.out.summary["nodes"] = static_cast<double>(r.tree.nodes.size());
  ctx.out.plot.push_back({"tree", tree_walk(r.tree), 2});
  ctx.out.plot.push_back({"path", r.waypoints, 1});
}

}  // namespace

void dijkstra_grid(DemoContext& ctx) { grid_demo(ctx, 0.0, "Dijkstra"); }

void astar_grid(DemoContext& ctx) {
  const double w = ctx.p("heuristic_weight");
  require(w >= 0.0, "heuristic_weight must be non-negative");
  grid_demo(ctx, w, "A*");
}

void potential_field(DemoContext& ctx) {
  const PotentialParams p{ctx.p("k_att"), ctx.p("k_rep"), ctx.p("rho0"), ctx.p("resolution")};
  const std::vector<Point2> obstacles{{15, 25}, {5, 15}, {20, 26}, {25, 25}};
  const Point2 start{0, 0}, goal{30, 30};
  ctx.out.plot_title = "Potential field";
  for (const Point2& o : obstacles) ctx.out.plot.push_back({"obstacle", circle_outline(o, 1.0), 7});
  ctx.out.trace = TraceTable({"t", "x", "y", "potential", "err_dist_to_goal"});
  const auto path = plan_potential_field(obstacles, start, goal, p);
  for (std::size_t i = 0; i < path.size(); ++i)
    ctx.out.trace.add_row({static_cast<double>(i), path[i].x, path[i].y, potential(path[i], goal, obstacles, p),
                           std::hypot(path[i].x - goal.x, path[i].y - goal.y)});
  ctx.out.summary["steps"] = static_cast<double>(path.size() - 1);
  ctx.out.plot.push_back({"path", path, 1});
}

void rrt_star(DemoContext& ctx) { sampling_demo(ctx, false); }
void lqr_rrt_star(DemoContext& ctx) { sampling_demo(ctx, true); }

}  // namespace nav::detail
