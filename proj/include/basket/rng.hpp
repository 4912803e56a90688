#pragma once

#include <cstdint>

namespace basket {

// Deterministic random stream: xoshiro256++ seeded through splitmix64 from a
// (seed, stream) pair. Identical pairs give identical draw sequences on every
// platform; distinct streams fork independent sequences from one seed.
class RngState {
 public:
  explicit RngState(uint64_t seed, uint64_t stream = 0);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

  uint64_t next_u64();

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform();

  // Uniform integer on {0, ..., n-1}, unbiased (rejection sampling). n >= 1.
  uint64_t uniform_int(uint64_t n);

  // Standard normal via Box-Muller (second value cached).
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang, with the power boost for shape < 1.
  double gamma(double shape);

  // Beta(a, b) as a ratio of two gamma draws.
  double beta(double a, double b);

 private:
  uint64_t state_[4];
  uint64_t seed_ = 0;
  uint64_t stream_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace basket
