#include "navsim/slam/fastslam2.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "navsim/core/angle.hpp"
#include "navsim/core/error.hpp"
#include "navsim/core/linalg.hpp"
#include "navsim/core/models.hpp"
#include "navsim/localization/particle_filter.hpp"

namespace nav {
namespace {

Vec residual(const RangeBearing& z, const RangeBearing& pred) {
  return {z.range - pred.range, normalize_angle(z.bearing - pred.bearing)};
}

double log_gaussian(const Vec& nu, const Mat& cov) {
  const Mat l = cholesky(cov);
  const Vec w = cholesky_solve(l, nu);
  double log_det = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) log_det += 2.0 * std::log(l(i, i));
  return -0.5 * dot(nu, w) - 0.5 * log_det - 0.5 * static_cast<double>(nu.size()) * std::log(2.0 * kPi);
}

struct StepContext {
  Control u;
  double dt;
  std::span<const RangeBearing> z;
  Mat R;
  Mat motion_cov_input;  // diag(σv², σω²)
  std::uint64_t step_seed;
};

// Returns the log-likelihood increment for the particle.
double update_particle(FastSlamParticle& p, std::size_t index, const StepContext& ctx) {
  RngStream sub(ctx.step_seed ^ index);
  const Pose2D prior = p.pose;
  const Pose2D predicted = motion_unicycle(VehicleState{prior, 0.0}, ctx.u.v, ctx.u.omega, ctx.dt).pose;
  const Mat V{{std::cos(prior.yaw) * ctx.dt, 0.0}, {std::sin(prior.yaw) * ctx.dt, 0.0}, {0.0, ctx.dt}};
  const Mat motion_cov = sandwich(V, ctx.motion_cov_input);

  double loglik = 0.0;
  Vec mu{predicted.x, predicted.y, predicted.yaw};
  Mat sigma = motion_cov;
  for (const RangeBearing& reading : ctx.z) {
    const auto it = p.landmarks.find(*reading.landmark_id);
    if (it == p.landmarks.end()) continue;
    const LandmarkEstimate& lm = it->second;

    // evidence at the motion prediction
    {
      const auto jac = observation_jacobians(predicted, lm.mean);
      const Mat L = sandwich(jac.pose, motion_cov) + sandwich(jac.landmark, lm.cov) + ctx.R;
      loglik += log_gaussian(residual(reading, observe_range_bearing(predicted, lm.mean)), L);
    }

    // sequential refinement of the pose proposal
    const Pose2D at{mu[0], mu[1], mu[2]};
    const auto jac = observation_jacobians(at, lm.mean);
    const Mat Qj = sandwich(jac.landmark, lm.cov) + ctx.R;
    const Mat SHt = sigma * jac.pose.transpose();
    Mat S = jac.pose * SHt + Qj;
    S.symmetrize();
    const Mat K = solve_spd(S, SHt.transpose()).transpose();
    mu = mu + K * residual(reading, observe_range_bearing(at, lm.mean));
    mu[2] = normalize_angle(mu[2]);
    const Mat I_KH = Mat::identity(3) - K * jac.pose;
    sigma = sandwich(I_KH, sigma) + sandwich(K, Qj);
    sigma.symmetrize();
  }

  const Mat chol = cholesky_semidefinite(sigma);
  const Vec e{sub.gaussian(0.0, 1.0), sub.gaussian(0.0, 1.0), sub.gaussian(0.0, 1.0)};
  const Vec x = mu + chol * e;
  p.pose = {x[0], x[1], normalize_angle(x[2])};

  for (const RangeBearing& reading : ctx.z) {
    const int id = *reading.landmark_id;
    auto it = p.landmarks.find(id);
    if (it == p.landmarks.end()) {
      const auto g = landmark_init_jacobians(p.pose, reading);
      Mat cov = sandwich(g.measurement, ctx.R);
      cov.symmetrize();
      p.landmarks.emplace(id, LandmarkEstimate{landmark_init(p.pose, reading), std::move(cov)});
      continue;
    }
    LandmarkEstimate& lm = it->second;
    const auto jac = observation_jacobians(p.pose, lm.mean);
    const Mat PHt = lm.cov * jac.landmark.transpose();
    Mat Q = jac.landmark * PHt + ctx.R;
    Q.symmetrize();
    const Mat K = solve_spd(Q, PHt.transpose()).transpose();
    const Vec dm = K * residual(reading, observe_range_bearing(p.pose, lm.mean));
    lm.mean = {lm.mean.x + dm[0], lm.mean.y + dm[1]};
    const Mat I_KH = Mat::identity(2) - K * jac.landmark;
    lm.cov = sandwich(I_KH, lm.cov) + sandwich(K, ctx.R);
    lm.cov.symmetrize();
  }
  return loglik;
}

}  // namespace

std::vector<FastSlamParticle> make_fastslam_particles(const Pose2D& pose, std::size_t n) {
  require(n >= 1, "particle count must be positive");
  return std::vector<FastSlamParticle>(n, FastSlamParticle{pose, 1.0 / static_cast<double>(n), {}});
}

std::vector<FastSlamParticle> fastslam2_step(const std::vector<FastSlamParticle>& particles, Control u, double dt,
                                             std::span<const RangeBearing> z, const FastSlamNoise& noise,
                                             RngStream& rng, Exec exec) {
  const std::size_t n = particles.size();
  require(n >= 1, "particle count must be positive");
  require(dt > 0.0, "dt must be positive");
  require(noise.range_std > 0.0 && noise.bearing_std > 0.0, "observation noise must be positive");
  require(noise.v_std >= 0.0 && noise.omega_std >= 0.0, "motion noise must be non-negative");
  for (const auto& reading : z) require(reading.landmark_id.has_value(), "observation without landmark id");

  const StepContext ctx{u,
                        dt,
                        z,
                        Mat::diag({noise.range_std * noise.range_std, noise.bearing_std * noise.bearing_std}),
                        Mat::diag({noise.v_std * noise.v_std, noise.omega_std * noise.omega_std}),
                        rng.next_u64()};

  std::vector<FastSlamParticle> next = particles;
  std::vector<double> logw(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t i) {
    try {
      logw[i] = std::log(next[i].weight) + update_particle(next[i], i, ctx);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) work(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  double best = -std::numeric_limits<double>::infinity();
  for (double lw : logw)
    if (std::isfinite(lw)) best = std::max(best, lw);
  if (!std::isfinite(best)) fail(ErrorCode::DegenerateBelief, "all particle weights vanished");
  double total = 0.0;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) total += (w[i] = std::isfinite(logw[i]) ? std::exp(logw[i] - best) : 0.0);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] /= total;
    next[i].weight = w[i];
    sq += w[i] * w[i];
  }

  if (1.0 / sq < 0.5 * static_cast<double>(n)) {
    std::vector<FastSlamParticle> resampled;
    resampled.reserve(n);
    for (std::size_t i : systematic_resample_indices(w, rng)) {
      resampled.push_back(next[i]);
      resampled.back().weight = 1.0 / static_cast<double>(n);
    }
    next = std::move(resampled);
  }
  return next;
}

Pose2D fastslam_estimate(std::span<const FastSlamParticle> particles) {
  double x = 0.0, y = 0.0, s = 0.0, c = 0.0;
  for (const auto& p : particles) {
    x += p.weight * p.pose.x;
    y += p.weight * p.pose.y;
    s += p.weight * std::sin(p.pose.yaw);
    c += p.weight * std::cos(p.pose.yaw);
  }
  return {x, y, std::atan2(s, c)};
}

}  // namespace nav
