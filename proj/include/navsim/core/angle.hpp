#pragma once

#include <numbers>

namespace nav {

inline constexpr double kPi = std::numbers::pi;

/// Wrap to (-pi, pi]. Values already in range are returned untouched, so the
/// operation is exactly idempotent. Throws InvalidInput on non-finite input.
double normalize_angle(double theta);

}  // namespace nav
