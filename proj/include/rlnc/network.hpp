#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlnc/error.hpp"

namespace rlnc::network {

struct EdgeSpec {
  std::string id;
  std::string tail;
  std::string head;

  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

/// Multi-source multi-sink network as written in a network file.  Parallel
/// edges are allowed; every edge has unit capacity.
struct NetworkSpec {
  std::string name;
  std::vector<std::string> nodes;
  std::vector<EdgeSpec> edges;
  std::vector<std::string> sources;  // s_1 .. s_m, in order
  std::vector<std::string> sinks;    // t_1 .. t_n, in order
  /// sink name -> 1-based source indices it demands.
  std::map<std::string, std::vector<std::size_t>> demands;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

/// Symbols per source per time unit.
class RateVector {
 public:
  RateVector() = default;
  explicit RateVector(std::vector<std::uint32_t> symbols)
      : symbols_(std::move(symbols)) {}

  /// Parses comma-separated naturals, e.g. "2,1".
  static RateVector parse(std::string_view text);

  std::size_t size() const noexcept { return symbols_.size(); }
  std::uint32_t operator[](std::size_t i) const { return symbols_.at(i); }
  std::size_t total() const noexcept;
  const std::vector<std::uint32_t>& symbols() const noexcept {
    return symbols_;
  }
  /// "2,1"
  std::string str() const;

  friend bool operator==(const RateVector&, const RateVector&) = default;
  friend auto operator<=>(const RateVector&, const RateVector&) = default;

 private:
  std::vector<std::uint32_t> symbols_;
};

enum class ViolationKind {
  no_sources,
  no_sinks,
  duplicate_node,
  duplicate_edge_id,
  dangling_reference,
  reserved_name,
  duplicate_terminal,
  source_is_sink,
  missing_demand,
  empty_demand,
  demand_range,
  cycle,
};

struct Violation {
  ViolationKind kind;
  std::string message;
  /// Edge ids along the offending cycle (cycle violations only).
  std::vector<std::string> witness;
};

/// Every violated structural invariant of `spec`; empty when valid.
std::vector<Violation> validate(const NetworkSpec& spec);

/// Thrown when a spec fails validation.
class ValidationError : public InvalidArgument {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

/// Identifies the j-th virtual edge s_i* -> s_i (both 0-based).
struct VirtualTag {
  std::size_t source;
  std::size_t index;

  friend bool operator==(const VirtualTag&, const VirtualTag&) = default;
};

/// A validated network together with virtual sources s_i* and r_i parallel
/// edges s_i* -> s_i for a fixed rate.
///
/// Node indices: virtual sources first (0..m-1), then the base nodes in spec
/// order.  Edge indices: virtual edges first, ordered by (i, j), then the
/// base edges in spec order.  Virtual names start with '*', which base names
/// may not.
class AugmentedNetwork {
 public:
  struct Edge {
    std::string id;
    std::size_t tail;
    std::size_t head;
    std::optional<VirtualTag> tag;
  };

  /// Validates `spec` (throws ValidationError) and checks the rate length.
  static AugmentedNetwork build(const NetworkSpec& spec, const RateVector& rate);

  const NetworkSpec& base() const noexcept { return base_; }
  const RateVector& rate() const noexcept { return rate_; }
  /// r = r_1 + ... + r_m
  std::size_t dimension() const noexcept { return dimension_; }

  std::size_t node_count() const noexcept { return node_names_.size(); }
  const std::string& node_name(std::size_t node) const {
    return node_names_.at(node);
  }
  std::optional<std::size_t> find_node(std::string_view name) const;
  /// Throws InvalidArgument for unknown names.
  std::size_t node(std::string_view name) const;

  std::size_t source_count() const noexcept { return source_nodes_.size(); }
  std::size_t source_node(std::size_t i) const { return source_nodes_.at(i); }
  std::size_t virtual_node(std::size_t i) const {
    if (i >= source_count()) throw InvalidArgument("source index out of range");
    return i;
  }

  std::size_t sink_count() const noexcept { return sink_nodes_.size(); }
  std::size_t sink_node(std::size_t k) const { return sink_nodes_.at(k); }
  /// Position of `node` in the sink list, if it is a sink.
  std::optional<std::size_t> sink_position(std::size_t node) const;
  /// 0-based, sorted source indices demanded by the k-th sink.
  const std::vector<std::size_t>& demand(std::size_t k) const {
    return demands_.at(k);
  }

  /// Coordinate of b_{i,j} in F^r.
  std::size_t coordinate(std::size_t source, std::size_t index) const;
  std::size_t coordinate_offset(std::size_t source) const {
    return offsets_.at(source);
  }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t virtual_edge_count() const noexcept { return dimension_; }
  bool is_virtual(std::size_t e) const { return edges_.at(e).tag.has_value(); }
  std::optional<std::size_t> find_edge(std::string_view id) const;
  /// Throws InvalidArgument for unknown ids.
  std::size_t edge_index(std::string_view id) const;

  /// Edge indices entering / leaving `node`, ascending.
  const std::vector<std::size_t>& in_edges(std::size_t node) const {
    return in_edges_.at(node);
  }
  const std::vector<std::size_t>& out_edges(std::size_t node) const {
    return out_edges_.at(node);
  }

  /// See topo_edge_order.
  const std::vector<std::size_t>& topo_order() const noexcept {
    return topo_order_;
  }

 private:
  AugmentedNetwork() = default;

  NetworkSpec base_;
  RateVector rate_;
  std::size_t dimension_ = 0;
  std::vector<std::string> node_names_;
  std::map<std::string, std::size_t, std::less<>> node_lookup_;
  std::vector<std::size_t> source_nodes_;
  std::vector<std::size_t> sink_nodes_;
  std::vector<std::vector<std::size_t>> demands_;
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t, std::less<>> edge_lookup_;
  std::vector<std::vector<std::size_t>> in_edges_;
  std::vector<std::vector<std::size_t>> out_edges_;
  std::vector<std::size_t> topo_order_;
};

/// Edge indices in an order where every edge follows all edges entering its
/// tail.  Nodes are released smallest-index first (Kahn), so virtual edges
/// lead and ties break by node index, then edge index.
std::vector<std::size_t> topo_edge_order(const AugmentedNetwork& aug);

/// The base spec with virtual nodes and edges removed.
NetworkSpec strip_virtual(const AugmentedNetwork& aug);

}  // namespace rlnc::network
