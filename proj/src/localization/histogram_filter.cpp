#include "navsim/localization/histogram_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "navsim/core/error.hpp"

namespace nav {
namespace {

void normalize_or_fail(std::vector<double>& p) {
  double total = 0.0;
  for (double v : p) total += v;
  if (!(total > 0.0) || !std::isfinite(total)) fail(ErrorCode::DegenerateBelief, "histogram mass vanished");
  for (double& v : p) v /= total;
}

// out(x, y) = Σ_k g(k) · in(x - k, y) along one axis; cells outside are zero.
void blur_row(const std::vector<double>& in, std::vector<double>& out, int width, int iy,
              const std::vector<double>& kernel) {
  const int r = static_cast<int>(kernel.size() / 2);
  for (int ix = 0; ix < width; ++ix) {
    double s = 0.0;
    for (int k = -r; k <= r; ++k) {
      const int src = ix - k;
      if (src >= 0 && src < width) s += kernel[k + r] * in[static_cast<std::size_t>(iy) * width + src];
    }
    out[static_cast<std::size_t>(iy) * width + ix] = s;
  }
}

void blur_column_row(const std::vector<double>& in, std::vector<double>& out, int width, int height, int iy,
                     const std::vector<double>& kernel) {
  const int r = static_cast<int>(kernel.size() / 2);
  for (int ix = 0; ix < width; ++ix) {
    double s = 0.0;
    for (int k = -r; k <= r; ++k) {
      const int src = iy - k;
      if (src >= 0 && src < height) s += kernel[k + r] * in[static_cast<std::size_t>(src) * width + ix];
    }
    out[static_cast<std::size_t>(iy) * width + ix] = s;
  }
}

double cell_loglik(const HistogramBelief& h, int ix, int iy, std::span<const RangeReading> z, double obs_std) {
  const Point2 c = h.cell_center(ix, iy);
  double ll = 0.0;
  for (const auto& o : z) {
    const double d = std::hypot(o.landmark.x - c.x, o.landmark.y - c.y);
    const double e = (o.range - d) / obs_std;
    ll -= 0.5 * e * e;
  }
  return ll;
}

}  // namespace

HistogramBelief HistogramBelief::uniform(int width, int height, double resolution, Point2 origin) {
  require(width > 0 && height > 0, "grid must be non-empty");
  require(resolution > 0.0, "resolution must be positive");
  HistogramBelief h{width, height, resolution, origin, {}};
  h.p.assign(static_cast<std::size_t>(width) * height, 1.0 / (static_cast<double>(width) * height));
  return h;
}

Point2 HistogramBelief::cell_center(int ix, int iy) const {
  return {origin.x + (ix + 0.5) * resolution, origin.y + (iy + 0.5) * resolution};
}

double HistogramBelief::total_mass() const {
  double s = 0.0;
  for (double v : p) s += v;
  return s;
}

std::vector<double> truncated_gaussian_kernel(double std_cells) {
  require(std_cells >= 0.0, "motion std must be non-negative");
  if (std_cells == 0.0) return {1.0};
  const int r = static_cast<int>(std::ceil(3.0 * std_cells));
  std::vector<double> k(2 * r + 1);
  double total = 0.0;
  for (int i = -r; i <= r; ++i) {
    k[i + r] = std::exp(-0.5 * (i * i) / (std_cells * std_cells));
    total += k[i + r];
  }
  for (double& v : k) v /= total;
  return k;
}

HistogramBelief hf_predict(const HistogramBelief& h, int dx, int dy, double motion_std_cells, Exec exec) {
  const std::vector<double> kernel = truncated_gaussian_kernel(motion_std_cells);
  const int r = static_cast<int>(kernel.size() / 2);
  require(r <= std::min(h.width, h.height), "blur kernel wider than the grid");

  HistogramBelief out = h;
  std::vector<double> shifted(h.p.size(), 0.0);
  for (int iy = 0; iy < h.height; ++iy) {
    const int ty = iy + dy;
    if (ty < 0 || ty >= h.height) continue;
    for (int ix = 0; ix < h.width; ++ix) {
      const int tx = ix + dx;
      if (tx < 0 || tx >= h.width) continue;
      shifted[static_cast<std::size_t>(ty) * h.width + tx] = h.at(ix, iy);
    }
  }

  std::vector<double> tmp(h.p.size(), 0.0);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < h.height; ++iy) blur_row(shifted, tmp, h.width, iy, kernel);
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < h.height; ++iy) blur_column_row(tmp, out.p, h.width, h.height, iy, kernel);
  } else {
    for (int iy = 0; iy < h.height; ++iy) blur_row(shifted, tmp, h.width, iy, kernel);
    for (int iy = 0; iy < h.height; ++iy) blur_column_row(tmp, out.p, h.width, h.height, iy, kernel);
  }
  normalize_or_fail(out.p);
  return out;
}

HistogramBelief hf_update(const HistogramBelief& h, std::span<const RangeReading> z, double obs_std, Exec exec) {
  require(obs_std > 0.0, "observation std must be positive");
  const std::size_t n = h.p.size();
  std::vector<double> ll(n);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < h.height; ++iy)
      for (int ix = 0; ix < h.width; ++ix)
        ll[static_cast<std::size_t>(iy) * h.width + ix] = cell_loglik(h, ix, iy, z, obs_std);
  } else {
    for (int iy = 0; iy < h.height; ++iy)
      for (int ix = 0; ix < h.width; ++ix)
        ll[static_cast<std::size_t>(iy) * h.width + ix] = cell_loglik(h, ix, iy, z, obs_std);
  }

  // Scale by the best supported cell so the product cannot underflow.
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    if (h.p[i] > 0.0) best = std::max(best, ll[i]);
  if (!std::isfinite(best)) fail(ErrorCode::DegenerateBelief, "histogram mass vanished");

  HistogramBelief out = h;
  for (std::size_t i = 0; i < n; ++i) out.p[i] = h.p[i] * std::exp(ll[i] - best);
  normalize_or_fail(out.p);
  return out;
}

Point2 hf_estimate(const HistogramBelief& h) {
  Point2 m;
  for (int iy = 0; iy < h.height; ++iy)
    for (int ix = 0; ix < h.width; ++ix) {
      const Point2 c = h.cell_center(ix, iy);
      m.x += h.at(ix, iy) * c.x;
      m.y += h.at(ix, iy) * c.y;
    }
  return m;
}

}  // namespace nav
