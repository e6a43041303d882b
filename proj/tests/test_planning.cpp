#include <cmath>
#include <limits>

#include "doctest.h"
#include "navsim/core/error.hpp"
#include "navsim/core/rng.hpp"
#include "navsim/planning/grid_planner.hpp"
#include "navsim/planning/potential_field.hpp"
#include "navsim/planning/sampling_planner.hpp"
#include "support/planning_oracles.hpp"

using namespace nav;
using oracle::BruteForce;
using oracle::random_world;
using oracle::tree_consistent;

namespace {

void check_path_shape(const GridWorld& w, const GridPath& p, GridIndex start, GridIndex goal) {
  REQUIRE(!p.cells.empty());
  CHECK(p.cells.front() == start);
  CHECK(p.cells.back() == goal);
  double cost = 0.0;
  for (std::size_t i = 1; i < p.cells.size(); ++i) {
    const int dr = std::abs(p.cells[i].row - p.cells[i - 1].row), dc = std::abs(p.cells[i].col - p.cells[i - 1].col);
    CHECK(std::max(dr, dc) == 1);
    CHECK(grid_move_allowed(w, p.cells[i - 1], p.cells[i]));
    cost += grid_step_cost(p.cells[i - 1], p.cells[i]);
  }
  CHECK(std::abs(cost - p.cost) < 1e-9);
}

}  // namespace

TEST_CASE("plan_grid small cases") {
  GridWorld corridor = GridWorld::open(3, 1);
  const GridPath p = plan_grid(corridor, {0, 0}, {0, 2}, 1.0);
  CHECK(p.cost == 2.0);
  CHECK(p.cells == std::vector<GridIndex>{{0, 0}, {0, 1}, {0, 2}});

  GridWorld walled = GridWorld::open(5, 5);
  for (int r = 0; r < 5; ++r) walled.set_blocked({r, 2});
  CHECK_THROWS_AS(plan_grid(walled, {0, 0}, {4, 4}, 1.0), Error);
  try {
    plan_grid(walled, {0, 0}, {4, 4}, 0.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoPath);
  }
  try {
    plan_grid(walled, {0, 2}, {4, 4}, 0.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }

  // diagonal through two blocked corners is refused
  GridWorld corner = GridWorld::open(2, 2);
  corner.set_blocked({0, 1});
  corner.set_blocked({1, 0});
  CHECK_THROWS_AS(plan_grid(corner, {0, 0}, {1, 1}, 1.0), Error);

  // open 5x5 diagonal
  const GridPath d = plan_grid(GridWorld::open(5, 5), {0, 0}, {4, 4}, 1.0);
  CHECK(std::abs(d.cost - 4.0 * std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("plan_grid matches brute force on random 8x8 worlds") {
  RngStream rng(2024);
  int solved = 0, unsolved = 0;
  while (solved + unsolved < 100) {
    GridWorld w = random_world(rng, 8, 8, 0.3);
    const GridIndex s{static_cast<int>(rng.uniform() * 8), static_cast<int>(rng.uniform() * 8)};
    const GridIndex g{static_cast<int>(rng.uniform() * 8), static_cast<int>(rng.uniform() * 8)};
    w.set_blocked(s, false);
    w.set_blocked(g, false);
    BruteForce bf{w, g, {}, {}};
    const double want = bf.solve(s);
    if (std::isinf(want)) {
      ++unsolved;
      CHECK_THROWS_AS(plan_grid(w, s, g, 1.0), Error);
      CHECK_THROWS_AS(plan_grid(w, s, g, 0.0), Error);
      continue;
    }
    ++solved;
    const GridPath a = plan_grid(w, s, g, 1.0);
    const GridPath dj = plan_grid(w, s, g, 0.0);
    CHECK(std::abs(a.cost - want) < 1e-9);
    CHECK(std::abs(dj.cost - want) < 1e-9);
    CHECK(a.expanded <= dj.expanded);
    check_path_shape(w, a, s, g);
    check_path_shape(w, dj, s, g);
  }
  CHECK(solved > 50);
}

TEST_CASE("plan_grid is deterministic under ties") {
  const GridWorld w = GridWorld::open(6, 6);
  const GridPath a = plan_grid(w, {0, 0}, {0, 5}, 0.0);
  const GridPath b = plan_grid(w, {0, 0}, {0, 5}, 0.0);
  CHECK(a.cells == b.cells);
  CHECK(a.cost == 5.0);
}

TEST_CASE("potential field") {
  const PotentialParams p{5.0, 100.0, 2.0, 0.5};
  const auto single = plan_potential_field({}, {1, 1}, {1, 1}, p);
  CHECK(single == std::vector<Point2>{{1, 1}});

  const auto straight = plan_potential_field({}, {0, 0}, {5, 0}, p);
  REQUIRE(straight.size() == 11);
  for (std::size_t i = 0; i < straight.size(); ++i) {
    CHECK(straight[i].y == 0.0);
    CHECK(std::abs(straight[i].x - 0.5 * i) < 1e-12);
  }

  const std::vector<Point2> obstacles{{2.5, 0.3}};
  const auto path = plan_potential_field(obstacles, {0, 0}, {5, 0}, p);
  CHECK(std::hypot(path.back().x - 5.0, path.back().y) < p.resolution);
  double prev = std::numeric_limits<double>::infinity();
  for (const Point2& q : path) {
    const double dg = std::hypot(q.x - 5.0, q.y);
    double u = 0.5 * p.k_att * dg * dg;
    const double rho = std::hypot(q.x - 2.5, q.y - 0.3);
    if (rho <= p.rho0) u += 0.5 * p.k_rep * std::pow(1.0 / rho - 1.0 / p.rho0, 2);
    CHECK(u < prev);
    CHECK(u == doctest::Approx(potential(q, {5, 0}, obstacles, p)).epsilon(1e-12));
    prev = u;
    CHECK(rho >= p.resolution);
  }

  // goal hidden behind a wall of obstacles: descent stalls
  std::vector<Point2> wall;
  for (int k = -4; k <= 4; ++k) wall.push_back({3.0, 0.25 * k});
  try {
    plan_potential_field(wall, {0, 0}, {5, 0}, PotentialParams{1.0, 100.0, 2.0, 0.5});
    FAIL("expected LocalMinimum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LocalMinimum);
  }
}

TEST_CASE("rrt_star basics") {
  PlanWorld open;
  RngStream rng(1);
  RrtParams two{1.0, 1.0, 1, 20.0};
  const PlanResult r = rrt_star_plan(open, {1, 1}, {1.5, 1.5}, two, rng);
  CHECK(r.tree.nodes.size() == 2);
  CHECK(std::abs(r.cost - std::sqrt(0.5)) < 1e-12);
  CHECK(r.waypoints.size() == 2);

  const PlanResult trivial = rrt_star_plan(open, {2, 2}, {2, 2}, RrtParams{}, rng);
  CHECK(trivial.tree.nodes.size() == 1);
  CHECK(trivial.cost == 0.0);

  PlanWorld sealed;
  sealed.boxes = {{3, 3, 7, 3.5}, {3, 6.5, 7, 7}, {3, 3, 3.5, 7}, {6.5, 3, 7, 7}};
  RrtParams few{1.0, 0.1, 300, 20.0};
  try {
    rrt_star_plan(sealed, {5, 5}, {9, 9}, few, rng);
    FAIL("expected NoPath");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoPath);
  }
  CHECK_THROWS_AS(rrt_star_plan(sealed, {3.2, 5}, {9, 9}, few, rng), Error);
}

TEST_CASE("rrt_star invariants and quality") {
  PlanWorld open;
  RngStream rng(42);
  int calls = 0;
  const PlanResult r = rrt_star_plan(open, {1, 1}, {9, 9}, RrtParams{}, rng, [&](int it, const PlanTree& t) {
    CHECK(it == calls++);
    REQUIRE(tree_consistent(t));
  });
  CHECK(calls == 2000);
  const double straight = 8.0 * std::sqrt(2.0);
  CHECK(r.cost >= straight - 1e-9);
  CHECK(r.cost <= 1.05 * straight);
  for (std::size_t i = 1; i < r.best_cost_history.size(); ++i)
    CHECK(r.best_cost_history[i] <= r.best_cost_history[i - 1]);

  PlanWorld cluttered;
  cluttered.circles = {{{5, 5}, 1.5}, {{3, 7}, 1.0}, {{7, 3}, 1.0}};
  RngStream rng2(7);
  const PlanResult c = rrt_star_plan(cluttered, {1, 1}, {9, 9}, RrtParams{}, rng2, [](int, const PlanTree& t) { REQUIRE(tree_consistent(t)); });
  for (std::size_t i = 1; i < c.waypoints.size(); ++i) CHECK(cluttered.segment_free(c.waypoints[i - 1], c.waypoints[i]));
  for (std::size_t i = 1; i < c.best_cost_history.size(); ++i)
    CHECK(c.best_cost_history[i] <= c.best_cost_history[i - 1]);
}

TEST_CASE("lqr_steer") {
  const Vec a{1, 2, 0, 0};
  const LqrTrajectory same = lqr_steer(a, a, 100, 0.1);
  CHECK(same.states.empty());
  CHECK(same.cost == 0.0);
  CHECK(same.reached);

  const LqrTrajectory hop = lqr_steer({0, 0, 0, 0}, {1, 0, 0, 0}, 100, 0.1);
  REQUIRE(hop.reached);
  const Vec& end = hop.states.back();
  CHECK(std::abs(end[0] - 1.0) < 0.05);
  CHECK(std::abs(end[1]) < 0.05);
  CHECK(hop.cost > 0.0);

  // closed loop re-simulated independently
  const LqrSteerModel m = LqrSteerModel::make(0.1);
  Vec x{0, 0, 0, 0};
  double cost = 0.0;
  for (std::size_t t = 0; t < hop.states.size(); ++t) {
    const double e[4] = {x[0] - 1.0, x[1], x[2], x[3]};
    double u[2] = {0, 0};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) u[i] -= m.K(i, j) * e[j];
    for (double v : e) cost += v * v;
    cost += u[0] * u[0] + u[1] * u[1];
    x = {x[0] + 0.1 * x[2], x[1] + 0.1 * x[3], x[2] + 0.1 * u[0], x[3] + 0.1 * u[1]};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(x[i] - hop.states[t][i]) < 1e-12);
  }
  CHECK(std::abs(cost - hop.cost) < 1e-9);

  RngStream rng(5);
  for (int k = 0; k < 50; ++k) {
    const Vec f{rng.gaussian(0, 1), rng.gaussian(0, 1), rng.gaussian(0, 1), rng.gaussian(0, 1)};
    const Vec t{rng.gaussian(0, 1), rng.gaussian(0, 1), 0, 0};
    CHECK(lqr_steer(m, f, t, 100).cost > 0.0);
  }
}

TEST_CASE("lqr_rrt_star") {
  PlanWorld open;
  RngStream rng(3);
  const PlanResult trivial = lqr_rrt_star_plan(open, {4, 4}, {4, 4}, RrtParams{}, rng);
  CHECK(trivial.tree.nodes.size() == 1);
  CHECK(trivial.waypoints.size() == 1);

  RrtParams p;
  p.max_iter = 3000;
  const PlanResult r = lqr_rrt_star_plan(open, {1, 1}, {9, 9}, p, rng, [](int, const PlanTree& t) { REQUIRE(tree_consistent(t)); });
  CHECK(r.cost > 0.0);
  CHECK(std::hypot(r.waypoints.back().x - 9, r.waypoints.back().y - 9) < 1e-12);
  for (std::size_t i = 1; i < r.best_cost_history.size(); ++i)
    CHECK(r.best_cost_history[i] <= r.best_cost_history[i - 1]);

  PlanWorld cluttered;
  cluttered.circles = {{{5, 5}, 1.5}};
  RngStream rng2(11);
  RrtParams q;
  q.max_iter = 1500;
  const PlanResult c = lqr_rrt_star_plan(cluttered, {1, 1}, {9, 9}, q, rng2);
  for (std::size_t i = 1; i < c.waypoints.size(); ++i) CHECK(cluttered.segment_free(c.waypoints[i - 1], c.waypoints[i]));
}
