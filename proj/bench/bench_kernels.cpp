#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "navsim/localization/histogram_filter.hpp"
#include "navsim/localization/particle_filter.hpp"
#include "navsim/mapping/kmeans.hpp"
#include "navsim/slam/fastslam2.hpp"

using namespace nav;

namespace {

Exec policy(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

LandmarkMap landmarks() {
  LandmarkMap m;
  for (int i = 0; i < 8; ++i) m[i] = {20.0 * std::cos(i * 0.785), 20.0 * std::sin(i * 0.785)};
  return m;
}

std::vector<RangeBearing> readings(const LandmarkMap& m) {
  std::vector<RangeBearing> z;
  for (const auto& [id, p] : m) z.push_back({std::hypot(p.x, p.y), std::atan2(p.y, p.x), id});
  return z;
}

void BM_pf_step(benchmark::State& state) {
  const LandmarkMap m = landmarks();
  const auto z = readings(m);
  const ParticleSet start = ParticleSet::uniform({}, static_cast<std::size_t>(state.range(1)));
  RngStream rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(pf_step(start, {1.0, 0.1}, 0.1, m, z, {}, rng, policy(state)));
}

HistogramBelief big_belief(int n) { return HistogramBelief::uniform(n, n, 0.25, {-0.125 * n, -0.125 * n}); }

void BM_hf_predict(benchmark::State& state) {
  const HistogramBelief h = big_belief(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(hf_predict(h, 1, 0, 1.5, policy(state)));
}

void BM_hf_update(benchmark::State& state) {
  const HistogramBelief h = big_belief(static_cast<int>(state.range(1)));
  const std::vector<RangeReading> z = {{{10, 0}, 10.0}, {{0, 10}, 10.0}, {{-10, -10}, 14.1}};
  for (auto _ : state) benchmark::DoNotOptimize(hf_update(h, z, 2.0, policy(state)));
}

void BM_kmeans(benchmark::State& state) {
  RngStream gen(3);
  std::vector<Point2> pts;
  for (int i = 0; i < state.range(1); ++i) {
    const double cx = 10.0 * (i % 4);
    pts.push_back({gen.gaussian(cx, 1.0), gen.gaussian(-cx, 1.0)});
  }
  for (auto _ : state) {
    RngStream rng(11);
    benchmark::DoNotOptimize(kmeans_cluster(pts, 4, rng, 100, policy(state)));
  }
}

void BM_fastslam2(benchmark::State& state) {
  const LandmarkMap m = landmarks();
  const auto z = readings(m);
  RngStream init(5);
  const auto seeded = fastslam2_step(make_fastslam_particles({}, static_cast<std::size_t>(state.range(1))),
                                     {0.0, 0.0}, 0.1, z, {}, init, Exec::Serial);
  RngStream rng(9);
  for (auto _ : state) benchmark::DoNotOptimize(fastslam2_step(seeded, {1.0, 0.1}, 0.1, z, {}, rng, policy(state)));
}

}  // namespace

BENCHMARK(BM_pf_step)->ArgsProduct({{0, 1}, {1000, 10000}})->ArgNames({"parallel", "n"});
BENCHMARK(BM_hf_predict)->ArgsProduct({{0, 1}, {100, 400}})->ArgNames({"parallel", "n"});
BENCHMARK(BM_hf_update)->ArgsProduct({{0, 1}, {100, 400}})->ArgNames({"parallel", "n"});
BENCHMARK(BM_kmeans)->ArgsProduct({{0, 1}, {1000, 20000}})->ArgNames({"parallel", "n"});
BENCHMARK(BM_fastslam2)->ArgsProduct({{0, 1}, {100, 1000}})->ArgNames({"parallel", "n"});

BENCHMARK_MAIN();
