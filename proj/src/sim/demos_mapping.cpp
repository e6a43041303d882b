#include <algorithm>
#include <cmath>
#include <limits>

#include "demos.hpp"
#include "navsim/core/angle.hpp"
#include "navsim/mapping/kmeans.hpp"
#include "navsim/mapping/occupancy_grid.hpp"

namespace nav::detail {

namespace {

struct Rect {
  double x0, y0, x1, y1;
};

// Square room [0, 20]² with two interior blocks.
constexpr double kRoom = 20.0;
const Rect kBlocks[] = {{5.0, 5.0, 8.0, 12.0}, {12.0, 12.0, 15.0, 15.0}};

bool occupied_truth(Point2 p) {
  if (p.x <= 0.0 || p.y <= 0.0 || p.x >= kRoom || p.y >= kRoom) return true;
  for (const Rect& r : kBlocks)
    if (p.x >= r.x0 && p.x <= r.x1 && p.y >= r.y0 && p.y <= r.y1) return true;
  return false;
}

// Distance along the ray to the first wall or block face.
double cast(Point2 o, double angle) {
  const double dx = std::cos(angle), dy = std::sin(angle);
  double best = std::numeric_limits<double>::infinity();
  auto wall = [&](double pos, double origin, double dir) {
    if (dir != 0.0) {
      const double t = (pos - origin) / dir;
      if (t > 1e-12) best = std::min(best, t);
    }
  };
  wall(0.0, o.x, dx);
  wall(kRoom, o.x, dx);
  wall(0.0, o.y, dy);
  wall(kRoom, o.y, dy);
  for (const Rect& r : kBlocks) {
    double t0 = -std::numeric_limits<double>::infinity(), t1 = std::numeric_limits<double>::infinity();
    auto slab = [&](double lo, double hi, double origin, double dir) {
      if (dir == 0.0) {
        if (origin < lo || origin > hi) t0 = std::numeric_limits<double>::infinity();
        return;
      }
      double a = (lo - origin) / dir, b = (hi - origin) / dir;
      if (a > b) std::swap(a, b);
      t0 = std::max(t0, a);
      t1 = std::min(t1, b);
    };
    slab(r.x0, r.x1, o.x, dx);
    slab(r.y0, r.y1, o.y, dy);
    if (t0 <= t1 && t0 > 1e-12) best = std::min(best, t0);
  }
  return best;
}

// Counter-clockwise loop around the room at 1 m/s, yaw along the segment.
Pose2D loop_pose(double s) {
  const Point2 corners[] = {{2.5, 2.5}, {17.5, 2.5}, {17.5, 17.5}, {2.5, 17.5}};
  const double side = 15.0;
  s = std::fmod(s, 4.0 * side);
  const int i = static_cast<int>(s / side);
  const double f = s - i * side;
  const Point2 a = corners[i], b = corners[(i + 1) % 4];
  const double yaw = std::atan2(b.y - a.y, b.x - a.x);
  return {a.x + (b.x - a.x) * f / side, a.y + (b.y - a.y) * f / side, normalize_angle(yaw)};
}

std::vector<Point2> rect_outline(const Rect& r) {
  return {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}, {r.x0, r.y0}};
}

}  // namespace

void grid_mapping(DemoContext& ctx) {
  const double res = ctx.p("resolution"), max_range = ctx.p("max_range"), range_std = ctx.p("range_std");
  const int beams = ctx.count("beams", 1);
  require(res > 0.0 && max_range > 0.0 && range_std >= 0.0, "invalid mapping parameters");
  RngStream rng = ctx.stream(0);
  const Point2 origin{-1.0, -1.0};
  const int cells = static_cast<int>(std::ceil((kRoom + 2.0) / res));
  OccupancyGrid g = OccupancyGrid::blank(cells, cells, res, origin);

  ctx.out.trace = TraceTable({"t", "x", "y", "yaw", "known_cells", "occupied_cells", "err_misclassified"});
  std::vector<Point2> path;
  for (int k = 0; k < ctx.steps(); ++k) {
    const double t = (k + 1) * ctx.cfg.dt;
    const Pose2D pose = loop_pose(t);
    std::vector<Beam> scan;
    for (int b = 0; b < beams; ++b) {
      const double rel = normalize_angle(2.0 * kPi * b / beams);
      const double noise = rng.gaussian(0.0, range_std);
      const double r = std::clamp(cast({pose.x, pose.y}, pose.yaw + rel) + noise, 0.0, max_range);
      scan.push_back({rel, r});
    }
    g = grid_update_scan(g, pose, scan, max_range);

    int known = 0, occ = 0, wrong = 0;
    for (int iy = 0; iy < g.height; ++iy)
      for (int ix = 0; ix < g.width; ++ix) {
        const Cell c{ix, iy};
        if (g.at(c) == 0.0) continue;
        ++known;
        const bool says_occ = g.probability(c) > 0.5;
        occ += says_occ;
        const Point2 centre{origin.x + (ix + 0.5) * res, origin.y + (iy + 0.5) * res};
        wrong += says_occ != occupied_truth(centre);
      }
    ctx.out.trace.add_row({t, pose.x, pose.y, pose.yaw, static_cast<double>(known), static_cast<double>(occ),
                           known ? static_cast<double>(wrong) / known : 0.0});
    path.push_back({pose.x, pose.y});
  }
  ctx.out.pgm = to_pgm(g);
  ctx.out.plot_title = "Occupancy grid mapping";
  ctx.out.plot.push_back({"robot path", path});
  ctx.out.plot.push_back({"room", rect_outline({0.0, 0.0, kRoom, kRoom}), 7});
  for (const Rect& r : kBlocks) ctx.out.plot.push_back({"obstacle", rect_outline(r), 1});
}

void kmeans_clustering(DemoContext& ctx) {
  const int k = ctx.count("k", 1), per = ctx.count("points_per_cluster", 1), max_iters = ctx.count("max_iters", 1);
  const double spread = ctx.p("cluster_std");
  require(spread >= 0.0, "cluster_std must be non-negative");
  const Point2 centres[] = {{-5.0, -5.0}, {5.0, 0.0}, {0.0, 7.0}};
  RngStream rng = ctx.stream(0);
  std::vector<Point2> pts;
  std::vector<int> source;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < per; ++i) {
      const double x = rng.gaussian(centres[c].x, spread), y = rng.gaussian(centres[c].y, spread);
      pts.push_back({x, y});
      source.push_back(c);
    }
  require(k <= static_cast<int>(pts.size()), "k exceeds the number of points");
  const Clustering cl = kmeans_cluster(pts, k, rng, max_iters);

  ctx.out.trace = TraceTable({"t", "sse", "err_sse_decrease"});
  for (std::size_t i = 0; i < cl.sse_history.size(); ++i)
    ctx.out.trace.add_row({static_cast<double>(i + 1), cl.sse_history[i],
                           i ? cl.sse_history[i - 1] - cl.sse_history[i] : 0.0});
  TraceTable points({"index", "x", "y", "cluster", "source"});
  for (std::size_t i = 0; i < pts.size(); ++i)
    points.add_row({static_cast<double>(i), pts[i].x, pts[i].y, static_cast<double>(cl.assignment[i]),
                    static_cast<double>(source[i])});
  ctx.out.tables["points"] = std::move(points);
  TraceTable cent({"cluster", "x", "y"});
  for (int c = 0; c < k; ++c) cent.add_row({static_cast<double>(c), cl.centroids[c].x, cl.centroids[c].y});
  ctx.out.tables["centroids"] = std::move(cent);
  ctx.out.summary["sse"] = cl.sse;
  ctx.out.summary["iterations"] = cl.iterations;

  // each cluster drawn as a star polygon around its centroid
  ctx.out.plot_title = "k-means clustering";
  for (int c = 0; c < k; ++c) {
    std::vector<std::pair<double, Point2>> members;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (cl.assignment[i] == c)
        members.emplace_back(std::atan2(pts[i].y - cl.centroids[c].y, pts[i].x - cl.centroids[c].x), pts[i]);
    std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) {
      return a.first < b.first || (a.first == b.first && (a.second.x < b.second.x));
    });
    std::vector<Point2> poly;
    for (const auto& m : members) poly.push_back(m.second);
    if (poly.empty()) poly.push_back(cl.centroids[c]);
    poly.push_back(poly.front());
    ctx.out.plot.push_back({"cluster " + std::to_string(c), poly});
  }
}

}  // namespace nav::detail
