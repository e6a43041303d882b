#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "navsim/core/types.hpp"

namespace nav {

struct Cell {
  int ix = 0;
  int iy = 0;

  auto operator<=>(const Cell&) const = default;
};

inline const double kLogOddsOccupied = std::log(0.7 / 0.3);
inline const double kLogOddsFree = std::log(0.3 / 0.7);
inline constexpr double kLogOddsClamp = 5.0;

/// Log-odds occupancy lattice. Cell (0, 0) has its lower-left corner at
/// `origin`; row-major storage with index iy·width + ix.
struct OccupancyGrid {
  int width = 0;
  int height = 0;
  double resolution = 1.0;
  Point2 origin;
  std::vector<double> logodds;

  static OccupancyGrid blank(int width, int height, double resolution, Point2 origin);

  bool contains(Cell c) const { return c.ix >= 0 && c.iy >= 0 && c.ix < width && c.iy < height; }
  double& at(Cell c) { return logodds[static_cast<std::size_t>(c.iy) * width + c.ix]; }
  double at(Cell c) const { return logodds[static_cast<std::size_t>(c.iy) * width + c.ix]; }
  double probability(Cell c) const { return 1.0 / (1.0 + std::exp(-at(c))); }

  /// floor((w - origin) / resolution) per axis; may fall outside the grid.
  Cell world_to_cell(const Point2& w) const;
};

struct Beam {
  double angle = 0.0;  // relative to sensor yaw
  double range = 0.0;
};

/// 8-connected line between two cells, both endpoints included. The cells are
/// traced from the lexicographically smaller endpoint, so swapping the
/// arguments yields the same cells in reverse order.
std::vector<Cell> bresenham_line(Cell from, Cell to);

/// bresenham_line restricted to a width x height grid; throws OutOfBounds.
std::vector<Cell> bresenham_ray(Cell from, Cell to, int width, int height);

/// Inverse-sensor-model update: cells before each beam end get the free
/// log-odds, the end cell gets the occupied log-odds unless the beam is a
/// max-range return. Parts of a beam that leave the grid are ignored.
OccupancyGrid grid_update_scan(const OccupancyGrid& g, const Pose2D& sensor_pose, std::span<const Beam> scan,
                               double max_range);

/// Plain PGM (P2): 255·p rounded, top image row = highest y. A comment line
/// carries resolution and origin.
std::string to_pgm(const OccupancyGrid& g);

}  // namespace nav
