#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fracnum {

/// SplitMix64 finalizer; used to derive independent substream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for substream `stream` of a run seeded with `seed`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

/// Thin wrapper over mt19937_64 with portable uniform/exponential draws
/// (the standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double exponential() { return -std::log(uniform()); }
  /// Standard normal via Box-Muller (one draw per call).
  double normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fracnum
