#pragma once

#include <cstdint>
#include <vector>

#include "navsim/core/rng.hpp"
#include "navsim/core/types.hpp"
#include "navsim/localization/ekf.hpp"
#include "navsim/localization/particle_filter.hpp"

namespace nav {

struct DriveNoise {
  double v_std = 0.1;
  double omega_std = 0.05;
  double gnss_std = 0.5;
  double range_std = 0.2;
  double bearing_std = 0.03;
};

/// Ground truth driven by a constant command, noisy odometry and sensor
/// readings for every step. Index k of `truth` is the state after step k;
/// truth[0] is the start. Readings at step k are taken from truth[k + 1].
struct DriveScenario {
  double dt = 0.1;
  Control command;
  LandmarkMap landmarks;
  double max_range = 0.0;
  std::vector<VehicleState> truth;
  std::vector<Control> odometry;
  std::vector<Point2> gnss;
  std::vector<std::vector<RangeBearing>> readings;
  std::vector<VehicleState> dead_reckoning;  // odometry integrated from truth[0]
};

DriveScenario make_drive_scenario(const VehicleState& start, Control command, const LandmarkMap& landmarks,
                                  double max_range, int steps, double dt, const DriveNoise& noise, RngStream& rng);

/// Circle of radius 10 around (0, 10) at v = 1, ω = 0.1, four corner landmarks.
DriveScenario localization_scenario(std::uint64_t seed, int steps = 600, double dt = 0.1,
                                    const DriveNoise& noise = {});

/// Eight landmarks on a 20 m circle, robot on a 10 m circle about the origin,
/// sensing range 25 m.
DriveScenario slam_scenario(std::uint64_t seed, int steps, double dt = 0.1, const DriveNoise& noise = {});

/// Steps for `loops` full circuits of the SLAM circle at dt.
int slam_loop_steps(double loops, double dt = 0.1);

}  // namespace nav
