#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "navsim/core/angle.hpp"
#include "navsim/core/types.hpp"
#include "navsim/localization/histogram_filter.hpp"

namespace nav::oracle {

// Exhaustive transition-matrix evaluation of shift + truncated blur.
inline std::vector<double> brute_force_predict(const HistogramBelief& h, int dx, int dy, double std_cells) {
  const int r = std_cells == 0.0 ? 0 : static_cast<int>(std::ceil(3.0 * std_cells));
  auto g = [&](int k) {
    if (std_cells == 0.0) return k == 0 ? 1.0 : 0.0;
    double z = 0;
    for (int i = -r; i <= r; ++i) z += std::exp(-0.5 * i * i / (std_cells * std_cells));
    return std::abs(k) <= r ? std::exp(-0.5 * k * k / (std_cells * std_cells)) / z : 0.0;
  };
  std::vector<double> out(h.p.size(), 0.0);
  for (int sy = 0; sy < h.height; ++sy)
    for (int sx = 0; sx < h.width; ++sx) {
      const int cx = sx + dx, cy = sy + dy;
      if (cx < 0 || cx >= h.width || cy < 0 || cy >= h.height) continue;
      for (int ty = 0; ty < h.height; ++ty)
        for (int tx = 0; tx < h.width; ++tx) out[ty * h.width + tx] += h.at(sx, sy) * g(tx - cx) * g(ty - cy);
    }
  double total = 0;
  for (double v : out) total += v;
  for (double& v : out) v /= total;
  return out;
}

// Bayes product of the prior with normalized Gaussian range likelihoods at
// each cell center, renormalized.
inline std::vector<double> bayes_update(const HistogramBelief& h, const std::vector<RangeReading>& z, double sd) {
  std::vector<double> out(h.p.size());
  double total = 0;
  for (int iy = 0; iy < h.height; ++iy)
    for (int ix = 0; ix < h.width; ++ix) {
      const Point2 c{h.origin.x + (ix + 0.5) * h.resolution, h.origin.y + (iy + 0.5) * h.resolution};
      double v = h.at(ix, iy);
      for (const auto& o : z) {
        const double e = o.range - std::hypot(o.landmark.x - c.x, o.landmark.y - c.y);
        v *= std::exp(-0.5 * e * e / (sd * sd)) / (sd * std::sqrt(2 * kPi));
      }
      out[iy * h.width + ix] = v;
      total += v;
    }
  for (double& v : out) v /= total;
  return out;
}

// Global SSE optimum for k = 2 by enumerating every two-way split.
inline double brute_force_sse_k2(const std::vector<Point2>& pts) {
  const int n = static_cast<int>(pts.size());
  double best = 1e300;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    Point2 c[2]{};
    int cnt[2]{};
    for (int i = 0; i < n; ++i) {
      const int g = (mask >> i) & 1;
      c[g].x += pts[i].x;
      c[g].y += pts[i].y;
      cnt[g]++;
    }
    for (auto g : {0, 1}) c[g] = {c[g].x / cnt[g], c[g].y / cnt[g]};
    double s = 0;
    for (int i = 0; i < n; ++i) {
      const int g = (mask >> i) & 1;
      s += (pts[i].x - c[g].x) * (pts[i].x - c[g].x) + (pts[i].y - c[g].y) * (pts[i].y - c[g].y);
    }
    best = std::min(best, s);
  }
  return best;
}

}  // namespace nav::oracle
