#pragma once

#include <span>
#include <vector>

#include "navsim/core/types.hpp"

namespace nav {

struct PotentialParams {
  double k_att = 5.0;
  double k_rep = 100.0;
  double rho0 = 5.0;
  double resolution = 0.5;
};

double potential(Point2 q, Point2 goal, std::span<const Point2> obstacles, const PotentialParams& p);

/// Greedy descent over the 8-neighbourhood of a lattice anchored at start.
/// Stops once within one resolution of the goal. Throws LocalMinimum when no
/// neighbour strictly lowers the potential or a step returns to one of the
/// last three lattice cells.
std::vector<Point2> plan_potential_field(std::span<const Point2> obstacles, Point2 start, Point2 goal,
                                         const PotentialParams& p, int max_steps = 100000);

}  // namespace nav
