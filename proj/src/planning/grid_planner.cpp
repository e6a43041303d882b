#include "navsim/planning/grid_planner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <tuple>

#include "navsim/core/error.hpp"

namespace nav {

GridWorld GridWorld::open(int width, int height, double resolution) {
  require(width > 0 && height > 0, "grid must be non-empty");
  require(resolution > 0.0, "resolution must be positive");
  return {width, height, resolution, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0)};
}

double grid_step_cost(GridIndex a, GridIndex b) {
  return (a.row != b.row && a.col != b.col) ? std::sqrt(2.0) : 1.0;
}

bool grid_move_allowed(const GridWorld& w, GridIndex from, GridIndex to) {
  if (!w.contains(to) || w.is_blocked(to)) return false;
  if (from.row != to.row && from.col != to.col)
    return !w.is_blocked({from.row, to.col}) && !w.is_blocked({to.row, from.col});
  return true;
}

GridPath plan_grid(const GridWorld& w, GridIndex start, GridIndex goal, double heuristic_weight) {
  require(heuristic_weight >= 0.0, "heuristic weight must be non-negative");
  require(w.contains(start) && w.contains(goal), "start or goal outside the grid");
  require(!w.is_blocked(start) && !w.is_blocked(goal), "start or goal is blocked");

  const std::size_t n = static_cast<std::size_t>(w.width) * w.height;
  auto index = [&](GridIndex c) { return static_cast<std::size_t>(c.row) * w.width + c.col; };
  auto h = [&](GridIndex c) { return heuristic_weight * std::hypot(c.row - goal.row, c.col - goal.col); };

  std::vector<double> g(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, n);
  std::vector<bool> closed(n, false);
  using Entry = std::tuple<double, int, int>;  // f, row, col
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  g[index(start)] = 0.0;
  open.emplace(h(start), start.row, start.col);
  int expanded = 0;
  while (!open.empty()) {
    const auto [f, row, col] = open.top();
    open.pop();
    const GridIndex cur{row, col};
    const std::size_t ci = index(cur);
    if (closed[ci]) continue;
    closed[ci] = true;
    ++expanded;
    if (cur == goal) break;
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const GridIndex nb{row + dr, col + dc};
        if (!grid_move_allowed(w, cur, nb)) continue;
        const std::size_t ni = index(nb);
        if (closed[ni]) continue;
        const double cand = g[ci] + grid_step_cost(cur, nb);
        if (cand < g[ni]) {
          g[ni] = cand;
          parent[ni] = ci;
          open.emplace(cand + h(nb), nb.row, nb.col);
        }
      }
  }

  if (!closed[index(goal)]) fail(ErrorCode::NoPath, "goal is unreachable");
  GridPath path;
  path.expanded = expanded;
  path.cost = g[index(goal)];
  for (std::size_t i = index(goal); i != n; i = parent[i])
    path.cells.push_back({static_cast<int>(i / w.width), static_cast<int>(i % w.width)});
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

}  // namespace nav
