#pragma once

#include <cstdint>
#include <random>

namespace olps {

/// Seedable stream of 64-bit words and uniform doubles in [0, 1).
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the standard,
/// so a seed replays bit-identically on every conforming platform. Doubles
/// are built from the top 53 bits directly rather than through
/// std::uniform_real_distribution, whose algorithm is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Independent child stream; the parent advances by one word.
  RandomStream split() { return RandomStream(mix(engine_())); }

 private:
  static std::uint64_t mix(std::uint64_t x);

  std::mt19937_64 engine_;
};

}  // namespace olps
