#pragma once

#include <span>
#include <vector>

#include "navsim/core/exec.hpp"
#include "navsim/core/rng.hpp"
#include "navsim/core/types.hpp"

namespace nav {

struct Clustering {
  int k = 0;
  std::vector<Point2> centroids;
  std::vector<int> assignment;
  double sse = 0.0;
  int iterations = 0;
  /// SSE after each centroid update; non-increasing.
  std::vector<double> sse_history;
};

double clustering_sse(std::span<const Point2> pts, std::span<const Point2> centroids, std::span<const int> assignment);

/// k-means++ seeding from `rng`, then Lloyd iterations until the assignment
/// stops changing or `max_iters` is reached. A cluster left empty is moved
/// onto the point farthest from its own centroid. Throws InvalidInput unless
/// 1 ≤ k ≤ |pts|.
Clustering kmeans_cluster(std::span<const Point2> pts, int k, RngStream& rng, int max_iters = 100,
                          Exec exec = Exec::Parallel);

}  // namespace nav
