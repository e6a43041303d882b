#include "navsim/mapping/kmeans.hpp"

#include <limits>

#include "navsim/core/error.hpp"

namespace nav {
namespace {

double sq_dist(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

int nearest_centroid(const Point2& p, std::span<const Point2> centroids) {
  int best = 0;
  double best_d = sq_dist(p, centroids[0]);
  for (int c = 1; c < static_cast<int>(centroids.size()); ++c) {
    const double d = sq_dist(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::vector<Point2> seed_plus_plus(std::span<const Point2> pts, int k, RngStream& rng) {
  const std::size_t n = pts.size();
  std::vector<Point2> centroids;
  centroids.reserve(k);
  auto pick_uniform = [&] { return std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n))); };
  centroids.push_back(pts[pick_uniform()]);

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(pts[i], centroids[0]);
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t chosen = n - 1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick_uniform();
    }
    centroids.push_back(pts[chosen]);
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_dist(pts[i], centroids.back()));
  }
  return centroids;
}

}  // namespace

double clustering_sse(std::span<const Point2> pts, std::span<const Point2> centroids, std::span<const int> assignment) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) s += sq_dist(pts[i], centroids[assignment[i]]);
  return s;
}

Clustering kmeans_cluster(std::span<const Point2> pts, int k, RngStream& rng, int max_iters, Exec exec) {
  require(k >= 1, "k must be at least 1");
  require(static_cast<std::size_t>(k) <= pts.size(), "k exceeds the number of points");
  require(max_iters >= 1, "max_iters must be at least 1");
  const int n = static_cast<int>(pts.size());

  Clustering out;
  out.k = k;
  out.centroids = seed_plus_plus(pts, k, rng);
  out.assignment.assign(n, -1);
  std::vector<int> next(n);

  for (int it = 1; it <= max_iters; ++it) {
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
      for (int i = 0; i < n; ++i) next[i] = nearest_centroid(pts[i], out.centroids);
    } else {
      for (int i = 0; i < n; ++i) next[i] = nearest_centroid(pts[i], out.centroids);
    }
    if (next == out.assignment) break;
    out.assignment = next;
    out.iterations = it;

    std::vector<Point2> sum(k);
    std::vector<int> count(k, 0);
    for (int i = 0; i < n; ++i) {
      sum[out.assignment[i]].x += pts[i].x;
      sum[out.assignment[i]].y += pts[i].y;
      count[out.assignment[i]]++;
    }
    std::vector<bool> taken(n, false);
    for (int c = 0; c < k; ++c) {
      if (count[c] > 0) out.centroids[c] = {sum[c].x / count[c], sum[c].y / count[c]};
    }
    for (int c = 0; c < k; ++c) {
      if (count[c] > 0) continue;
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        const double d = sq_dist(pts[i], out.centroids[out.assignment[i]]);
        if (!taken[i] && d > far_d) {
          far_d = d;
          far = i;
        }
      }
      taken[far] = true;
      out.centroids[c] = pts[far];
    }
    out.sse_history.push_back(clustering_sse(pts, out.centroids, out.assignment));
  }
  out.sse = clustering_sse(pts, out.centroids, out.assignment);
  return out;
}

}  // namespace nav
