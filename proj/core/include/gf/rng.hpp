#pragma once

#include <cstdint>

namespace gf {

// Seedable PRNG with a portable, documented stream: xoshiro256++ seeded
// through splitmix64. Streams are bit-identical across platforms for a
// given seed. One instance per thread of work; never shared.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1) with 53 bits of precision.
  double next_double();

  // Uniform on [lo, hi). Throws std::invalid_argument when lo >= hi.
  double uniform(double lo, double hi);

  // Gaussian via Box-Muller (one draw per call, partner discarded so the
  // stream position is a pure function of call count).
  // Throws std::invalid_argument when var <= 0.
  double normal(double mean, double var);

  std::uint64_t seed() const { return seed_; }

  // Derive an independent child seed, used for per-trial streams.
  static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_;
};

}  // namespace gf
