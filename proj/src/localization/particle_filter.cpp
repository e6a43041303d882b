#include "navsim/localization/particle_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "navsim/core/angle.hpp"
#include "navsim/core/error.hpp"
#include "navsim/core/models.hpp"

namespace nav {
namespace {

struct Resolved {
  Point2 pos;
  double range;
  double bearing;
};

// Per-particle kernel; must not throw (it runs inside an OpenMP region).
double propagate_and_score(Particle& particle, std::size_t index, std::uint64_t step_seed, Control u, double dt,
                           std::span<const Resolved> obs, const PfNoise& noise) {
  RngStream sub(step_seed ^ index);
  const double v = sub.gaussian(u.v, noise.v_std);
  const double omega = sub.gaussian(u.omega, noise.omega_std);
  particle.pose = motion_unicycle(VehicleState{particle.pose, 0.0}, v, omega, dt).pose;

  double loglik = 0.0;
  for (const Resolved& o : obs) {
    const double dx = o.pos.x - particle.pose.x;
    const double dy = o.pos.y - particle.pose.y;
    const double r = std::hypot(dx, dy);
    const double bearing = std::atan2(dy, dx) - particle.pose.yaw;
    const double dr = (o.range - r) / noise.range_std;
    const double db = normalize_angle(o.bearing - normalize_angle(bearing)) / noise.bearing_std;
    loglik -= 0.5 * (dr * dr + db * db);
  }
  return loglik;
}

}  // namespace

ParticleSet ParticleSet::uniform(const Pose2D& pose, std::size_t n) {
  require(n >= 1, "particle count must be positive");
  ParticleSet p;
  p.particles.assign(n, Particle{pose, 1.0 / static_cast<double>(n)});
  return p;
}

double effective_sample_size(const ParticleSet& p) {
  double sq = 0.0;
  for (const auto& q : p.particles) sq += q.weight * q.weight;
  return 1.0 / sq;
}

std::vector<std::size_t> systematic_resample_indices(std::span<const double> weights, RngStream& rng) {
  const std::size_t n = weights.size();
  require(n >= 1, "cannot resample an empty particle set");
  const double stride = 1.0 / static_cast<double>(n);
  const double offset = rng.uniform() * stride;
  std::vector<std::size_t> idx;
  idx.reserve(n);
  double cumulative = weights[0];
  std::size_t i = 0;
  for (std::size_t m = 0; m < n; ++m) {
    const double target = offset + static_cast<double>(m) * stride;
    while (target >= cumulative && i + 1 < n) cumulative += weights[++i];
    idx.push_back(i);
  }
  return idx;
}

ParticleSet resample_low_variance(const ParticleSet& p, RngStream& rng) {
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = p.particles[i].weight;
  const double uniform_w = 1.0 / static_cast<double>(p.size());
  ParticleSet out;
  out.particles.reserve(p.size());
  for (std::size_t i : systematic_resample_indices(w, rng)) out.particles.push_back({p.particles[i].pose, uniform_w});
  return out;
}

ParticleSet pf_step(const ParticleSet& p, Control u, double dt, const LandmarkMap& landmarks,
                    std::span<const RangeBearing> z, const PfNoise& noise, RngStream& rng, Exec exec) {
  require(p.size() >= 1, "particle count must be positive");
  require(dt > 0.0, "dt must be positive");
  std::vector<Resolved> obs;
  obs.reserve(z.size());
  for (const auto& o : z) {
    require(o.landmark_id.has_value(), "observation without landmark id");
    const auto it = landmarks.find(*o.landmark_id);
    require(it != landmarks.end(), "observation refers to an unknown landmark");
    obs.push_back({it->second, o.range, o.bearing});
  }
  if (!obs.empty()) require(noise.range_std > 0.0 && noise.bearing_std > 0.0, "observation noise must be positive");

  const std::uint64_t step_seed = rng.next_u64();
  ParticleSet next = p;
  const std::size_t n = next.size();
  std::vector<double> logw(n);

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      const double ll = propagate_and_score(next.particles[i], i, step_seed, u, dt, obs, noise);
      logw[i] = std::log(next.particles[i].weight) + ll;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double ll = propagate_and_score(next.particles[i], i, step_seed, u, dt, obs, noise);
      logw[i] = std::log(next.particles[i].weight) + ll;
    }
  }

  double max_logw = -std::numeric_limits<double>::infinity();
  for (double lw : logw)
    if (std::isfinite(lw)) max_logw = std::max(max_logw, lw);
  if (!std::isfinite(max_logw)) fail(ErrorCode::DegenerateBelief, "all particle weights vanished");

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    next.particles[i].weight = std::isfinite(logw[i]) ? std::exp(logw[i] - max_logw) : 0.0;
    total += next.particles[i].weight;
  }
  for (auto& q : next.particles) q.weight /= total;

  if (effective_sample_size(next) < 0.5 * static_cast<double>(n)) next = resample_low_variance(next, rng);
  return next;
}

Pose2D pf_estimate(const ParticleSet& p) {
  double x = 0.0, y = 0.0, s = 0.0, c = 0.0;
  for (const auto& q : p.particles) {
    x += q.weight * q.pose.x;
    y += q.weight * q.pose.y;
    s += q.weight * std::sin(q.pose.yaw);
    c += q.weight * std::cos(q.pose.yaw);
  }
  return {x, y, std::atan2(s, c)};
}

}  // namespace nav
