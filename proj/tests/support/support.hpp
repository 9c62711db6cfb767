#pragma once

// Shared test helpers: fixture loading, a seeded random-DAG generator, and
// exhaustive oracles that do not share code paths with the library.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rlnc/coding.hpp"
#include "rlnc/gf.hpp"
#include "rlnc/network.hpp"
#include "rlnc/rng.hpp"

namespace rlnc::testing {

network::NetworkSpec fixture(const std::string& name);  // "butterfly", ...
std::vector<std::string> fixture_names();
std::string fixture_path(const std::string& name);

/// The canonical rate each fixture is exercised at.
network::RateVector fixture_rate(const std::string& name);

struct RandomInstance {
  network::NetworkSpec spec;
  network::RateVector rate;
};

/// Seeded random acyclic network: 3..max_nodes nodes, up to max_edges edges
/// (parallel allowed), 1..3 sources, 1..3 sinks, nonempty demands, and a rate
/// with every r_i in [0, max_rate].
RandomInstance random_instance(std::uint64_t seed, std::size_t max_nodes = 10,
                               std::size_t max_edges = 20,
                               std::uint32_t max_rate = 2);

/// Exponential oracle: size of the smallest edge subset whose removal leaves
/// no path from `sources` to `sink`.  Enumerates subsets by increasing size
/// with its own reachability search.
std::size_t brute_force_mincut(const network::AugmentedNetwork& aug,
                               std::span<const std::size_t> sources,
                               std::size_t sink);

/// Every node bipartition (V_S, V_T) with `sources` in V_S and `sink` in V_T,
/// returned as the list of edge indices crossing from V_S to V_T.
std::vector<std::vector<std::size_t>> enumerate_cuts(
    const network::AugmentedNetwork& aug, std::span<const std::size_t> sources,
    std::size_t sink);

/// Butterfly at rate (2): s forwards b_1 on s->a and b_2 on s->b, every
/// other coefficient is 1.
coding::CoefficientMap butterfly_classic(const network::AugmentedNetwork& aug,
                                         const gf::Field& field);

/// Every slot set to `value`.
coding::CoefficientMap uniform_map(const network::AugmentedNetwork& aug,
                                   const gf::Field& field, std::uint64_t value);

/// Cut-span containment failures over every source subset S_1, every sink
/// and every node cut separating {s_i* : i in S_1} from the sink.  Uses its
/// own Gaussian elimination.
std::size_t cut_span_violations(const coding::CodingAssignment& assignment,
                                const network::AugmentedNetwork& aug);

/// Rank by straightforward row reduction, independent of the library.
std::size_t naive_rank(const gf::Field& field,
                       std::vector<std::vector<gf::Element>> rows);

/// Russian-peasant GF(2^k) multiply (shift-and-xor with reduction each step).
std::uint32_t peasant_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly,
                          unsigned degree);

/// Bottleneck closed form (q-1)^2 (2q-1) / q^4, unreduced.
struct RawFraction {
  std::uint64_t num;
  std::uint64_t den;
};
RawFraction bottleneck_closed_form(std::uint64_t q);

}  // namespace rlnc::testing
