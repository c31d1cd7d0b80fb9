#pragma once

#include <cstdint>
#include <random>

namespace sparse_sketch {

// Seeded generator whose output stream is fixed by the seed on every
// platform: the engine is std::mt19937_64 (fully specified by the standard)
// and the distributions below are implemented here rather than taken from
// the unspecified std:: distribution algorithms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform integer in [0, n), n >= 1, without modulo bias.
  std::uint64_t below(std::uint64_t n);
  // Standard normal via the Box-Muller transform.
  double normal();
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sparse_sketch
