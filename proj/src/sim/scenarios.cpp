#include "navsim/sim/scenarios.hpp"

#include <cmath>

#include "navsim/core/angle.hpp"
#include "navsim/core/error.hpp"
#include "navsim/core/models.hpp"

namespace nav {

DriveScenario make_drive_scenario(const VehicleState& start, Control command, const LandmarkMap& landmarks,
                                  double max_range, int steps, double dt, const DriveNoise& noise, RngStream& rng) {
  require(steps >= 1 && dt > 0.0, "scenario needs at least one step and dt > 0");
  DriveScenario s;
  s.dt = dt;
  s.command = command;
  s.landmarks = landmarks;
  s.max_range = max_range;
  s.truth.push_back(start);
  s.dead_reckoning.push_back(start);
  for (int k = 0; k < steps; ++k) {
    const VehicleState next = motion_unicycle(s.truth.back(), command.v, command.omega, dt);
    s.truth.push_back(next);
    const Control odo{command.v + rng.gaussian(0.0, noise.v_std), command.omega + rng.gaussian(0.0, noise.omega_std)};
    s.odometry.push_back(odo);
    s.dead_reckoning.push_back(motion_unicycle(s.dead_reckoning.back(), odo.v, odo.omega, dt));
    const double gx = rng.gaussian(0.0, noise.gnss_std), gy = rng.gaussian(0.0, noise.gnss_std);
    s.gnss.push_back({next.pose.x + gx, next.pose.y + gy});
    std::vector<RangeBearing> z;
    for (const auto& [id, lm] : landmarks) {
      const RangeBearing exact = observe_range_bearing(next.pose, lm);
      const double dr = rng.gaussian(0.0, noise.range_std), db = rng.gaussian(0.0, noise.bearing_std);
      if (exact.range <= max_range) z.push_back({exact.range + dr, normalize_angle(exact.bearing + db), id});
    }
    s.readings.push_back(std::move(z));
  }
  return s;
}

DriveScenario localization_scenario(std::uint64_t seed, int steps, double dt, const DriveNoise& noise) {
  const LandmarkMap lms{{0, {10.0, 0.0}}, {1, {10.0, 20.0}}, {2, {-10.0, 20.0}}, {3, {-10.0, 0.0}}};
  RngStream rng(seed);
  return make_drive_scenario({{0.0, 0.0, 0.0}, 1.0}, {1.0, 0.1}, lms, 20.0, steps, dt, noise, rng);
}

DriveScenario slam_scenario(std::uint64_t seed, int steps, double dt, const DriveNoise& noise) {
  LandmarkMap lms;
  for (int i = 0; i < 8; ++i) {
    const double a = 2.0 * kPi * i / 8.0 + kPi / 8.0;
    lms[i] = {20.0 * std::cos(a), 20.0 * std::sin(a)};
  }
  RngStream rng(seed);
  return make_drive_scenario({{10.0, 0.0, kPi / 2.0}, 1.0}, {1.0, 0.1}, lms, 25.0, steps, dt, noise, rng);
}

int slam_loop_steps(double loops, double dt) {
  require(loops > 0.0 && dt > 0.0, "loops and dt must be positive");
  return static_cast<int>(std::lround(loops * 2.0 * kPi / (0.1 * dt)));
}

}  // namespace nav
