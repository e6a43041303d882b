#include "navsim/planning/sampling_planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "navsim/core/error.hpp"
#include "navsim/core/linalg.hpp"

namespace nav {

bool PlanWorld::point_free(Point2 p) const {
  if (p.x < xmin || p.x > xmax || p.y < ymin || p.y > ymax) return false;
  for (const Circle& c : circles)
    if (std::hypot(p.x - c.center.x, p.y - c.center.y) <= c.radius) return false;
  for (const Box& b : boxes)
    if (p.x >= b.xmin && p.x <= b.xmax && p.y >= b.ymin && p.y <= b.ymax) return false;
  return true;
}

bool PlanWorld::segment_free(Point2 a, Point2 b) const {
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  const int n = std::max(1, static_cast<int>(std::ceil(len / (0.5 * resolution))));
  for (int t = 0; t <= n; ++t) {
    const double s = static_cast<double>(t) / n;
    if (!point_free({a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)})) return false;
  }
  return true;
}

namespace {

Point2 position(const Vec& s) { return {s[0], s[1]}; }

struct Space {
  std::function<double(const Vec&, const Vec&)> distance;
  std::function<Vec(const Vec& from, const Vec& sample)> extend;
  std::function<std::optional<double>(const Vec& from, const Vec& to)> connect;
  std::function<void(const Vec& from, const Vec& to, std::vector<Point2>& out)> append_edge;
  double radius_scale = 1.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Vec& root) {
    tree_.nodes.push_back({root, std::nullopt, 0.0, 0.0});
    children_.emplace_back();
  }

  PlanTree& tree() { return tree_; }

  std::size_t add(Vec state, std::size_t parent, double edge) {
    tree_.nodes.push_back({std::move(state), parent, tree_.nodes[parent].cost_from_root + edge, edge});
    children_.emplace_back();
    children_[parent].push_back(tree_.nodes.size() - 1);
    return tree_.nodes.size() - 1;
  }

  void reparent(std::size_t node, std::size_t parent, double edge) {
    auto& old = children_[*tree_.nodes[node].parent];
    old.erase(std::find(old.begin(), old.end(), node));
    children_[parent].push_back(node);
    tree_.nodes[node].parent = parent;
    tree_.nodes[node].edge_cost = edge;
    propagate(node);
  }

 private:
  void propagate(std::size_t node) {
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      PlanNode& n = tree_.nodes[i];
      n.cost_from_root = tree_.nodes[*n.parent].cost_from_root + n.edge_cost;
      stack.insert(stack.end(), children_[i].begin(), children_[i].end());
    }
  }

  PlanTree tree_;
  std::vector<std::vector<std::size_t>> children_;
};

PlanResult run_rrt_star(const PlanWorld& world, const Vec& start, const Vec& goal, const RrtParams& params,
                        RngStream& rng, const PlanObserver& observer, const Space& space) {
  require(params.step > 0 && params.gamma > 0 && params.max_iter >= 0, "invalid RRT* parameters");
  require(params.goal_sample_rate >= 0 && params.goal_sample_rate <= 1, "goal_sample_rate must be in [0, 1]");
  require(world.xmax > world.xmin && world.ymax > world.ymin && world.resolution > 0, "invalid world bounds");
  require(world.point_free(position(start)), "start is in collision");
  require(world.point_free(position(goal)), "goal is in collision");

  TreeBuilder builder(start);
  PlanResult result;
  if (start == goal) {
    result.tree = builder.tree();
    result.waypoints = {position(start)};
    return result;
  }

  std::optional<std::size_t> goal_node;
  const double inf = std::numeric_limits<double>::infinity();
  for (int it = 0; it < params.max_iter; ++it) {
    PlanTree& tree = builder.tree();
    Vec sample = goal;
    if (!(rng.uniform() < params.goal_sample_rate)) {
      sample = start;
      sample[0] = world.xmin + rng.uniform() * (world.xmax - world.xmin);
      sample[1] = world.ymin + rng.uniform() * (world.ymax - world.ymin);
    }

    const std::size_t n = tree.nodes.size();
    std::size_t nearest = 0;
    double best_d = inf;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = space.distance(tree.nodes[i].state, sample);
      if (d < best_d) {
        best_d = d;
        nearest = i;
      }
    }
    Vec fresh = space.extend(tree.nodes[nearest].state, sample);
    const bool is_goal = fresh == goal;
    if ((is_goal && goal_node) || space.distance(tree.nodes[nearest].state, fresh) == 0.0 ||
        !world.point_free(position(fresh))) {
      result.best_cost_history.push_back(goal_node ? tree.nodes[*goal_node].cost_from_root : inf);
      if (observer) observer(it, tree);
      continue;
    }

    const double ln = std::log(static_cast<double>(n));
    const double radius = std::min(2.0 * params.step, params.gamma * std::sqrt(ln / n)) * space.radius_scale;
    std::vector<std::size_t> near;
    for (std::size_t i = 0; i < n; ++i)
      if (i == nearest || space.distance(tree.nodes[i].state, fresh) <= radius) near.push_back(i);

    std::optional<std::size_t> parent;
    double parent_edge = 0.0, parent_cost = inf;
    for (std::size_t i : near) {
      const auto edge = space.connect(tree.nodes[i].state, fresh);
      if (!edge) continue;
      const double c = tree.nodes[i].cost_from_root + *edge;
      if (c < parent_cost) {
        parent_cost = c;
        parent_edge = *edge;
        parent = i;
      }
    }
    if (parent) {
      const std::size_t id = builder.add(fresh, *parent, parent_edge);
      if (is_goal) goal_node = id;
      for (std::size_t i : near) {
        if (i == *parent || i == 0) continue;
        const auto edge = space.connect(fresh, tree.nodes[i].state);
        if (edge && tree.nodes[id].cost_from_root + *edge < tree.nodes[i].cost_from_root)
          builder.reparent(i, id, *edge);
      }
    }
    result.best_cost_history.push_back(goal_node ? tree.nodes[*goal_node].cost_from_root : inf);
    if (observer) observer(it, tree);
  }

  if (!goal_node) fail(ErrorCode::NoPath, "goal not connected within max_iter");
  result.tree = std::move(builder.tree());
  const auto& nodes = result.tree.nodes;
  result.cost = nodes[*goal_node].cost_from_root;
  std::vector<std::size_t> chain;
  for (std::optional<std::size_t> i = goal_node; i; i = nodes[*i].parent) chain.push_back(*i);
  std::reverse(chain.begin(), chain.end());
  result.waypoints.push_back(position(nodes[chain.front()].state));
  for (std::size_t k = 1; k < chain.size(); ++k)
    space.append_edge(nodes[chain[k - 1]].state, nodes[chain[k]].state, result.waypoints);
  return result;
}

}  // namespace

PlanResult rrt_star_plan(const PlanWorld& world, Point2 start, Point2 goal, const RrtParams& params,
                         RngStream& rng, const PlanObserver& observer) {
  Space space;
  space.distance = [](const Vec& a, const Vec& b) { return std::hypot(b[0] - a[0], b[1] - a[1]); };
  space.extend = [&](const Vec& from, const Vec& sample) {
    const double d = std::hypot(sample[0] - from[0], sample[1] - from[1]);
    if (d <= params.step) return sample;
    const double s = params.step / d;
    return Vec{from[0] + s * (sample[0] - from[0]), from[1] + s * (sample[1] - from[1])};
  };
  space.connect = [&](const Vec& a, const Vec& b) -> std::optional<double> {
    if (!world.segment_free(position(a), position(b))) return std::nullopt;
    return std::hypot(b[0] - a[0], b[1] - a[1]);
  };
  space.append_edge = [](const Vec&, const Vec& b, std::vector<Point2>& out) { out.push_back(position(b)); };
  return run_rrt_star(world, {start.x, start.y}, {goal.x, goal.y}, params, rng, observer, space);
}

LqrSteerModel LqrSteerModel::make(double dt) {
  require(dt > 0.0, "dt must be positive");
  LqrSteerModel m;
  m.dt = dt;
  m.A = Mat::identity(4);
  m.A(0, 2) = dt;
  m.A(1, 3) = dt;
  m.B = Mat::zeros(4, 2);
  m.B(2, 0) = dt;
  m.B(3, 1) = dt;
  const DareSolution s = solve_dare(m.A, m.B, Mat::identity(4), Mat::identity(2));
  m.K = s.K;
  m.P = s.P;
  return m;
}

LqrTrajectory lqr_steer(const LqrSteerModel& m, const Vec& from, const Vec& to, int horizon) {
  require(from.size() == 4 && to.size() == 4, "lqr_steer expects 4-vectors");
  require(horizon >= 0, "horizon must be non-negative");
  std::array<double, 4> x, e;
  std::array<double, 8> k, b;
  std::array<double, 16> a;
  for (int i = 0; i < 4; ++i) {
    x[i] = from[i];
    for (int j = 0; j < 4; ++j) a[i * 4 + j] = m.A(i, j);
    for (int j = 0; j < 2; ++j) b[i * 2 + j] = m.B(i, j);
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) k[i * 4 + j] = m.K(i, j);
  auto error = [&] {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      e[i] = x[i] - to[i];
      worst = std::max(worst, std::abs(e[i]));
    }
    return worst;
  };

  LqrTrajectory tr;
  for (int t = 0; t < horizon; ++t) {
    const double err = error();
    if (err == 0.0 || (t > 0 && err < kLqrReachTolerance)) break;
    double u[2];
    for (int i = 0; i < 2; ++i) u[i] = -(k[i * 4] * e[0] + k[i * 4 + 1] * e[1] + k[i * 4 + 2] * e[2] + k[i * 4 + 3] * e[3]);
    tr.cost += e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3] + u[0] * u[0] + u[1] * u[1];
    std::array<double, 4> next;
    for (int i = 0; i < 4; ++i)
      next[i] = a[i * 4] * x[0] + a[i * 4 + 1] * x[1] + a[i * 4 + 2] * x[2] + a[i * 4 + 3] * x[3] +
                b[i * 2] * u[0] + b[i * 2 + 1] * u[1];
    x = next;
    tr.states.emplace_back(x.begin(), x.end());
  }
  const double err = error();
  tr.reached = err == 0.0 || err < kLqrReachTolerance;
  return tr;
}

LqrTrajectory lqr_steer(const Vec& from, const Vec& to, int horizon, double dt) {
  return lqr_steer(LqrSteerModel::make(dt), from, to, horizon);
}

PlanResult lqr_rrt_star_plan(const PlanWorld& world, Point2 start, Point2 goal, const RrtParams& params,
                             RngStream& rng, const PlanObserver& observer, int horizon, double dt) {
  const LqrSteerModel model = LqrSteerModel::make(dt);
  Space space;
  std::array<double, 16> p;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p[i * 4 + j] = model.P(i, j);
  space.distance = [p](const Vec& a, const Vec& b) {
    const double d[4] = {b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3]};
    double q = 0.0;
    for (int i = 0; i < 4; ++i)
      q += d[i] * (p[i * 4] * d[0] + p[i * 4 + 1] * d[1] + p[i * 4 + 2] * d[2] + p[i * 4 + 3] * d[3]);
    return std::sqrt(std::max(0.0, q));
  };
  space.extend = [&](const Vec& from, const Vec& sample) {
    const double d = std::hypot(sample[0] - from[0], sample[1] - from[1]);
    if (d <= params.step) return sample;
    const double s = params.step / d;
    return Vec{from[0] + s * (sample[0] - from[0]), from[1] + s * (sample[1] - from[1]), 0.0, 0.0};
  };
  space.connect = [&](const Vec& a, const Vec& b) -> std::optional<double> {
    const LqrTrajectory tr = lqr_steer(model, a, b, horizon);
    if (!tr.reached) return std::nullopt;
    Point2 prev = position(a);
    for (const Vec& s : tr.states) {
      if (!world.segment_free(prev, position(s))) return std::nullopt;
      prev = position(s);
    }
    if (!world.segment_free(prev, position(b))) return std::nullopt;
    return tr.cost;
  };
  space.append_edge = [&](const Vec& a, const Vec& b, std::vector<Point2>& out) {
    for (const Vec& s : lqr_steer(model, a, b, horizon).states) out.push_back(position(s));
    out.push_back(position(b));
  };
  space.radius_scale = std::sqrt(model.P(0, 0));
  return run_rrt_star(world, {start.x, start.y, 0.0, 0.0}, {goal.x, goal.y, 0.0, 0.0}, params, rng, observer,
                      space);
}

}  // namespace nav
