#include "navsim/planning/potential_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "navsim/core/error.hpp"

namespace nav {

double potential(Point2 q, Point2 goal, std::span<const Point2> obstacles, const PotentialParams& p) {
  const double dg = std::hypot(q.x - goal.x, q.y - goal.y);
  double u = 0.5 * p.k_att * dg * dg;
  for (const Point2& o : obstacles) {
    const double rho = std::hypot(q.x - o.x, q.y - o.y);
    if (rho == 0.0) return std::numeric_limits<double>::infinity();
    if (rho <= p.rho0) {
      const double t = 1.0 / rho - 1.0 / p.rho0;
      u += 0.5 * p.k_rep * t * t;
    }
  }
  return u;
}

std::vector<Point2> plan_potential_field(std::span<const Point2> obstacles, Point2 start, Point2 goal,
                                         const PotentialParams& p, int max_steps) {
  require(p.k_att > 0 && p.k_rep > 0 && p.rho0 > 0 && p.resolution > 0, "potential parameters must be positive");
  auto at = [&](int i, int j) { return Point2{start.x + i * p.resolution, start.y + j * p.resolution}; };

  std::vector<Point2> path{start};
  std::vector<std::pair<int, int>> cells{{0, 0}};
  int i = 0, j = 0;
  double u = potential(start, goal, obstacles, p);
  for (int step = 0; std::hypot(at(i, j).x - goal.x, at(i, j).y - goal.y) >= p.resolution; ++step) {
    if (step >= max_steps) fail(ErrorCode::LocalMinimum, "potential descent exceeded step budget");
    int bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        const double c = potential(at(i + di, j + dj), goal, obstacles, p);
        if (c < best) {
          best = c;
          bi = i + di;
          bj = j + dj;
        }
      }
    if (!(best < u)) fail(ErrorCode::LocalMinimum, "no neighbour lowers the potential");
    const std::size_t k = cells.size();
    for (std::size_t b = k > 3 ? k - 3 : 0; b < k; ++b)
      if (cells[b] == std::pair{bi, bj}) fail(ErrorCode::LocalMinimum, "oscillation detected");
    i = bi;
    j = bj;
    u = best;
    cells.emplace_back(i, j);
    path.push_back(at(i, j));
  }
  return path;
}

}  // namespace nav
