#pragma once

#include <cstdint>
#include <random>

namespace qsat {

/// Seedable generator with results that are identical across platforms and
/// standard libraries. The engine is std::mt19937_64 (its output sequence is
/// fixed by the standard); the std::*_distribution adaptors are not, so the
/// derived draws are implemented here.
class Rng {
 public:
  using Engine = std::mt19937_64;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  bool coin() { return (engine_() >> 63) != 0; }

  /// Standard normal draw (Box-Muller, one cached spare).
  double normal();

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

 private:
  Engine engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 finalizer; used to derive independent child seeds (per shot,
/// per round count) from one user seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qsat
