#include "navsim/core/angle.hpp"

#include <cmath>

#include "navsim/core/error.hpp"

namespace nav {

double normalize_angle(double theta) {
  if (!std::isfinite(theta)) fail(ErrorCode::InvalidInput, "angle must be finite");
  if (theta > -kPi && theta <= kPi) return theta;
  double r = std::fmod(theta + kPi, 2.0 * kPi);
  if (r <= 0.0) r += 2.0 * kPi;
  return r - kPi;
}

}  // namespace nav
