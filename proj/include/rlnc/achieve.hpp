#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rlnc/network.hpp"

namespace rlnc::achieve {

using network::AugmentedNetwork;
using network::NetworkSpec;
using network::RateVector;

/// Maxflow condition for one sink:
///   d1    = sum of r_i over demanded sources i
///   d2    = maxflow(S* minus the demanded virtual sources, t)
///   total = maxflow(S*, t)
/// The rate is achievable by random coding at this sink iff d1 + d2 == total.
struct SinkCondition {
  std::size_t sink = 0;  // node index in the augmented network
  std::string sink_name;
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::size_t total = 0;
  bool holds = false;
};

struct RateVerdict {
  RateVector rate;
  std::vector<SinkCondition> sinks;  // in sink order
  bool holds = true;                 // all sinks
};

/// Throws ValidationError / InvalidArgument on bad network or rate length,
/// and std::logic_error if d1 + d2 < total is ever observed.
RateVerdict check_rate(const NetworkSpec& spec, const RateVector& rate);
RateVerdict check_rate(const AugmentedNetwork& aug);

/// Largest (B+1)^m that enumerate_region accepts.
inline constexpr double kRegionGuard = 1e6;

struct RegionOptions {
  /// Skip check_rate for vectors with a known non-achievable predecessor.
  bool prune = true;
};

struct RegionReport {
  std::size_t bound = 0;
  std::vector<RateVector> achievable;  // lexicographic
  std::vector<RateVector> frontier;    // maximal achievable, lexicographic
  std::size_t evaluated = 0;           // check_rate calls actually made
};

/// All rates in [0, B]^m that satisfy check_rate.  Throws GuardExceeded when
/// (B+1)^m > kRegionGuard.
RegionReport enumerate_region(const NetworkSpec& spec, std::size_t bound,
                              RegionOptions options = {});

}  // namespace rlnc::achieve
