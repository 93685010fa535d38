#pragma once

#include <cstdint>
#include <random>

namespace qcopies {

// Identifies one reproducible random stream. The same (seed, stream) pair
// always yields the same sample sequence.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  // Derived stream for a sub-task (trial, setting, round, ...).
  RngSeed child(std::uint64_t index) const;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

// Thin wrapper over mt19937_64 with platform-independent conversions.
class Rng {
 public:
  explicit Rng(const RngSeed& s);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n), n > 0, without modulo bias.
  std::uint64_t below(std::uint64_t n);
  // Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace qcopies
