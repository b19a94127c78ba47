#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace ising {

/// Seeded random source used everywhere randomness is needed.
///
/// The engine is mt19937_64 (fully specified by the standard) and every
/// derived draw below is implemented here rather than with std
/// distributions, whose output is implementation-defined. This keeps runs
/// replayable from recorded seeds. Seed derivation for independent streams
/// uses a splitmix64-style finalizer.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n); unbiased via rejection. n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit();

  /// Standard normal deviate (Box-Muller; the pair is cached).
  double normal();

  /// splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t x);

  /// Deterministic stream derivation: one master seed, two stream indices.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t a,
                              std::uint64_t b = 0);

  /// Recorded in output metadata alongside seeds.
  static const char* algorithm_name() { return "mt19937_64/splitmix64"; }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace ising
