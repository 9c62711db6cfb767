#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rlnc/network.hpp"

namespace rlnc::maxflow {

using network::AugmentedNetwork;

/// Maximum number of edge-disjoint paths from a node set to a sink, with the
/// paths and a minimum cut as certificate.  Edges are aug edge indices.
struct FlowResult {
  std::vector<std::size_t> source_set;  // sorted, unique
  std::size_t sink = 0;
  std::size_t value = 0;
  std::vector<std::vector<std::size_t>> paths;
  std::vector<std::size_t> mincut;  // ascending
};

/// Unit-capacity blocking-flow (Dinic) from `source_set` to `sink`.
/// Throws InvalidArgument for unknown nodes or a sink inside the set.
FlowResult maxflow(const AugmentedNetwork& aug,
                   std::span<const std::size_t> source_set, std::size_t sink);

/// maxflow(S*, t): from every virtual source.
FlowResult maxflow_from_virtual(const AugmentedNetwork& aug, std::size_t sink);

enum class FlowViolationKind {
  unknown_edge,
  broken_path,
  wrong_endpoints,
  shared_edge,
  value_mismatch,
  cut_not_separating,
};

struct FlowViolation {
  FlowViolationKind kind;
  std::string message;
};

/// Independent certificate check: paths are valid and pairwise edge-disjoint,
/// the cut separates the source set from the sink, and
/// value == |paths| == |mincut|.  Returns the first violated clause.
std::optional<FlowViolation> verify_flow(const AugmentedNetwork& aug,
                                         const FlowResult& result);

/// True iff some path from `source_set` reaches `sink` avoiding `removed`.
bool reachable(const AugmentedNetwork& aug,
               std::span<const std::size_t> source_set, std::size_t sink,
               const std::vector<bool>& removed);

}  // namespace rlnc::maxflow
