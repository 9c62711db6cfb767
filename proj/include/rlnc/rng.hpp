#pragma once

#include <cstdint>
#include <random>

namespace rlnc {

/// Deterministic random stream for one trial.
///
/// Streams are derived from (master seed, trial index) by two rounds of the
/// SplitMix64 finalizer, so trial k sees the same draws no matter which
/// thread runs it or in which order trials are scheduled.  The engine is
/// std::mt19937_64, whose output sequence is fixed by the standard;
/// bounded draws use rejection sampling rather than
/// std::uniform_int_distribution (whose algorithm is implementation defined).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derive(std::uint64_t master_seed, std::uint64_t index) {
    return RngStream(mix(mix(master_seed) ^ (index + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound).  bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    // Largest multiple of bound representable; draws above it are rejected.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rlnc
