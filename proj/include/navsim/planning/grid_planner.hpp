#pragma once

#include <cstdint>
#include <vector>

namespace nav {

struct GridIndex {
  int row = 0;
  int col = 0;

  auto operator<=>(const GridIndex&) const = default;
};

struct GridWorld {
  int width = 0;   // columns
  int height = 0;  // rows
  double resolution = 1.0;
  std::vector<std::uint8_t> blocked;  // row-major

  static GridWorld open(int width, int height, double resolution = 1.0);

  bool contains(GridIndex c) const { return c.row >= 0 && c.col >= 0 && c.row < height && c.col < width; }
  bool is_blocked(GridIndex c) const { return blocked[static_cast<std::size_t>(c.row) * width + c.col] != 0; }
  void set_blocked(GridIndex c, bool b = true) { blocked[static_cast<std::size_t>(c.row) * width + c.col] = b; }
};

struct GridPath {
  std::vector<GridIndex> cells;
  double cost = 0.0;
  int expanded = 0;  // cells popped from the open list
};

/// Unit cost for axis moves, √2 for diagonals; a diagonal move needs both
/// orthogonal neighbours free (no corner cutting).
double grid_step_cost(GridIndex a, GridIndex b);
bool grid_move_allowed(const GridWorld& w, GridIndex from, GridIndex to);

/// Best-first search on the 8-connected grid with f = g + weight·h, h the
/// Euclidean distance in cells. weight 0 is Dijkstra, 1 is A*; both return
/// optimal costs. Among equal f the smaller (row, col) is expanded first.
/// Throws InvalidInput for blocked or out-of-range endpoints, NoPath when
/// the goal is unreachable.
GridPath plan_grid(const GridWorld& w, GridIndex start, GridIndex goal, double heuristic_weight);

}  // namespace nav
