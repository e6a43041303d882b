#include "navsim/core/rng.hpp"

#include <cmath>

#include "navsim/core/angle.hpp"
#include "navsim/core/error.hpp"

namespace nav {

double box_muller(double u1, double u2) { return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2); }

double RngStream::gaussian(double mean, double std) {
  if (!(std >= 0.0)) fail(ErrorCode::InvalidInput, "standard deviation must be non-negative");
  const double u1 = uniform_open_closed();
  const double u2 = uniform();
  if (std == 0.0) return mean;
  return mean + std * box_muller(u1, u2);
}

}  // namespace nav
