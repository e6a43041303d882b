#include "navsim/mapping/occupancy_grid.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "navsim/core/error.hpp"

namespace nav {

OccupancyGrid OccupancyGrid::blank(int width, int height, double resolution, Point2 origin) {
  require(width > 0 && height > 0, "grid must be non-empty");
  require(resolution > 0.0, "resolution must be positive");
  return {width, height, resolution, origin, std::vector<double>(static_cast<std::size_t>(width) * height, 0.0)};
}

Cell OccupancyGrid::world_to_cell(const Point2& w) const {
  return {static_cast<int>(std::floor((w.x - origin.x) / resolution)),
          static_cast<int>(std::floor((w.y - origin.y) / resolution))};
}

std::vector<Cell> bresenham_line(Cell from, Cell to) {
  const bool reversed = to < from;
  if (reversed) std::swap(from, to);
  const int dx = std::abs(to.ix - from.ix);
  const int dy = -std::abs(to.iy - from.iy);
  const int sx = from.ix < to.ix ? 1 : -1;
  const int sy = from.iy < to.iy ? 1 : -1;
  int err = dx + dy;
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
  Cell c = from;
  while (true) {
    cells.push_back(c);
    if (c == to) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      c.ix += sx;
    }
    if (e2 <= dx) {
      err += dx;
      c.iy += sy;
    }
  }
  if (reversed) std::reverse(cells.begin(), cells.end());
  return cells;
}

std::vector<Cell> bresenham_ray(Cell from, Cell to, int width, int height) {
  auto inside = [&](Cell c) { return c.ix >= 0 && c.iy >= 0 && c.ix < width && c.iy < height; };
  if (!inside(from) || !inside(to)) fail(ErrorCode::OutOfBounds, "ray endpoint outside the grid");
  return bresenham_line(from, to);
}

OccupancyGrid grid_update_scan(const OccupancyGrid& g, const Pose2D& sensor_pose, std::span<const Beam> scan,
                               double max_range) {
  require(g.resolution > 0.0, "resolution must be positive");
  const Cell sensor = g.world_to_cell({sensor_pose.x, sensor_pose.y});
  if (!g.contains(sensor)) fail(ErrorCode::OutOfBounds, "sensor pose outside the grid");

  OccupancyGrid out = g;
  auto add = [&](Cell c, double delta) {
    if (!out.contains(c)) return;
    double& l = out.at(c);
    l = std::clamp(l + delta, -kLogOddsClamp, kLogOddsClamp);
  };
  for (const Beam& beam : scan) {
    require(beam.range > 0.0 && beam.range <= max_range, "beam range outside (0, max_range]");
    const double a = sensor_pose.yaw + beam.angle;
    const Cell end = g.world_to_cell({sensor_pose.x + beam.range * std::cos(a), sensor_pose.y + beam.range * std::sin(a)});
    const auto cells = bresenham_line(sensor, end);
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) add(cells[i], kLogOddsFree);
    if (beam.range < max_range) add(cells.back(), kLogOddsOccupied);
  }
  return out;
}

std::string to_pgm(const OccupancyGrid& g) {
  std::string s = "P2\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "# resolution %.17g origin %.17g %.17g\n", g.resolution, g.origin.x, g.origin.y);
  s += buf;
  s += std::to_string(g.width) + " " + std::to_string(g.height) + "\n255\n";
  for (int iy = g.height - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      if (ix) s += ' ';
      s += std::to_string(static_cast<int>(std::lround(255.0 * g.probability({ix, iy}))));
    }
    s += '\n';
  }
  return s;
}

}  // namespace nav
