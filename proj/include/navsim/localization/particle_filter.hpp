#pragma once

#include <map>
#include <span>
#include <vector>

#include "navsim/core/exec.hpp"
#include "navsim/core/rng.hpp"
#include "navsim/core/types.hpp"
#include "navsim/localization/ekf.hpp"

namespace nav {

using LandmarkMap = std::map<int, Point2>;

struct Particle {
  Pose2D pose;
  double weight = 0.0;
};

struct ParticleSet {
  std::vector<Particle> particles;

  std::size_t size() const { return particles.size(); }
  static ParticleSet uniform(const Pose2D& pose, std::size_t n);
};

struct PfNoise {
  double v_std = 0.1;
  double omega_std = 0.05;
  double range_std = 0.2;
  double bearing_std = 0.03;
};

/// 1 / Σ wᵢ²
double effective_sample_size(const ParticleSet& p);

/// Survivor indices of systematic resampling over normalized weights.
std::vector<std::size_t> systematic_resample_indices(std::span<const double> weights, RngStream& rng);

/// Systematic resampling: one uniform offset in [0, 1/N), stride 1/N.
ParticleSet resample_low_variance(const ParticleSet& p, RngStream& rng);

/// One predict/weight/resample cycle. Every particle draws its control noise
/// from its own substream RngStream(step_seed ^ index), where step_seed is
/// one draw from `rng`, so Exec::Serial and Exec::Parallel agree bit for bit.
/// Observations must carry landmark ids present in `landmarks`. Resampling
/// runs when ESS < N/2. Throws DegenerateBelief if every weight vanishes.
ParticleSet pf_step(const ParticleSet& p, Control u, double dt, const LandmarkMap& landmarks,
                    std::span<const RangeBearing> z, const PfNoise& noise, RngStream& rng,
                    Exec exec = Exec::Parallel);

/// Weighted mean pose (circular mean for yaw).
Pose2D pf_estimate(const ParticleSet& p);

}  // namespace nav
