#pragma once

#include <cstdint>
#include <random>

namespace sltrack {

/// Seeded stream used by every randomized routine: std::mt19937_64, doubles
/// from the top 53 bits, bounded integers by multiply-shift. Both mappings are
/// spelled out here so other implementations can reproduce the stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sltrack
