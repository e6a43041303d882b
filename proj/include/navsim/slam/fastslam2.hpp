#pragma once

#include <map>
#include <span>
#include <vector>

#include "navsim/core/exec.hpp"
#include "navsim/core/mat.hpp"
#include "navsim/core/rng.hpp"
#include "navsim/core/types.hpp"
#include "navsim/localization/ekf.hpp"

namespace nav {

struct LandmarkEstimate {
  Point2 mean;
  Mat cov;  // 2x2
};

struct FastSlamParticle {
  Pose2D pose;
  double weight = 1.0;
  std::map<int, LandmarkEstimate> landmarks;
};

struct FastSlamNoise {
  double v_std = 0.1;
  double omega_std = 0.05;
  double range_std = 0.2;
  double bearing_std = 0.03;
};

std::vector<FastSlamParticle> make_fastslam_particles(const Pose2D& pose, std::size_t n);

/// FastSLAM 2.0 step with known correspondences.
///
/// Per particle: the motion prediction is refined by each reading of an
/// already-mapped landmark in turn (linearized measurement update of the
/// pose proposal), a pose is drawn from the refined Gaussian, the landmark
/// filters are updated at that pose and new landmarks are initialized through
/// the inverse observation. The importance weight is multiplied by the
/// evidence N(z − ẑ; 0, Hx·Σm·Hxᵀ + Hm·Σl·Hmᵀ + R) of each mapped reading,
/// linearized at the motion prediction.
///
/// Particle i samples from RngStream(step_seed ^ i) with step_seed drawn
/// from `rng`, so both execution policies give identical output. Resamples
/// when ESS < N/2; throws DegenerateBelief when all weights vanish.
std::vector<FastSlamParticle> fastslam2_step(const std::vector<FastSlamParticle>& particles, Control u, double dt,
                                             std::span<const RangeBearing> z, const FastSlamNoise& noise,
                                             RngStream& rng, Exec exec = Exec::Parallel);

/// Weighted mean position, circular mean heading.
Pose2D fastslam_estimate(std::span<const FastSlamParticle> particles);

}  // namespace nav
