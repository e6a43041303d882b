#pragma once

#include <cstdint>

namespace nav {

/// splitmix64 stream. Sequences are fixed by the published constants, so a
/// seed reproduces the same draws on any platform or language.
class RngStream {
 public:
  constexpr explicit RngStream(std::uint64_t seed = 0) : state_(seed) {}

  constexpr std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// (0, 1]
  double uniform_open_closed() { return 1.0 - uniform(); }

  /// Box–Muller, cosine branch only: one normal per two uniforms.
  double gaussian(double mean, double std);

  /// Independent substream for parallel work item `index`.
  RngStream substream(std::uint64_t index) const { return RngStream(state_ ^ index); }

  constexpr std::uint64_t state() const { return state_; }

  bool operator==(const RngStream&) const = default;

 private:
  std::uint64_t state_;
};

/// z = sqrt(-2 ln u1) · cos(2π u2), u1 ∈ (0, 1], u2 ∈ [0, 1).
double box_muller(double u1, double u2);

}  // namespace nav
