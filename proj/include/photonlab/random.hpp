#pragma once

#include "photonlab/types.hpp"

#include <cstdint>
#include <random>

namespace photonlab {

/// Seeded generator whose output does not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  Real unit() { return static_cast<Real>(engine_() >> 11) * 0x1.0p-53L; }
  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * unit(); }
  Vec3 cube(Real half) { return {uniform(-half, half), uniform(-half, half), uniform(-half, half)}; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace photonlab
