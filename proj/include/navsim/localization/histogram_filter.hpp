#pragma once

#include <span>
#include <vector>

#include "navsim/core/exec.hpp"
#include "navsim/core/types.hpp"

namespace nav {

/// Discrete belief over planar position; yaw is assumed known.
/// Cell (ix, iy) covers [origin + ix·res, origin + (ix+1)·res) in x, same in y.
struct HistogramBelief {
  int width = 0;
  int height = 0;
  double resolution = 1.0;
  Point2 origin;
  std::vector<double> p;  // row-major, index iy·width + ix

  static HistogramBelief uniform(int width, int height, double resolution, Point2 origin);

  double& at(int ix, int iy) { return p[static_cast<std::size_t>(iy) * width + ix]; }
  double at(int ix, int iy) const { return p[static_cast<std::size_t>(iy) * width + ix]; }
  Point2 cell_center(int ix, int iy) const;
  double total_mass() const;
};

struct RangeReading {
  Point2 landmark;
  double range = 0.0;
};

/// Discrete Gaussian on [-r, r], r = ceil(3σ), normalized; σ = 0 gives [1].
std::vector<double> truncated_gaussian_kernel(double std_cells);

/// Shift by whole cells, blur with the truncated Gaussian, renormalize.
/// Mass pushed off the grid is dropped before renormalization.
HistogramBelief hf_predict(const HistogramBelief& h, int dx, int dy, double motion_std_cells,
                           Exec exec = Exec::Parallel);

/// Multiply each cell by the product of range likelihoods at its center and
/// renormalize. Throws DegenerateBelief when no mass survives.
HistogramBelief hf_update(const HistogramBelief& h, std::span<const RangeReading> z, double obs_std,
                          Exec exec = Exec::Parallel);

/// Probability-weighted mean of cell centers.
Point2 hf_estimate(const HistogramBelief& h);

}  // namespace nav
