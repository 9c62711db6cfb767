#include "rlnc/network.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <queue>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace rlnc::network {
namespace {

constexpr char kVirtualPrefix = '*';

std::string describe(const std::vector<Violation>& violations) {
  std::string out = "invalid network:";
  for (const auto& v : violations) out += "\n  " + v.message;
  return out;
}

// Finds one directed cycle, returned as edge ids in traversal order.
std::optional<std::vector<std::string>> find_cycle(const NetworkSpec& spec) {
  std::map<std::string, std::vector<std::size_t>> out;
  for (std::size_t e = 0; e < spec.edges.size(); ++e) {
    out[spec.edges[e].tail].push_back(e);
  }
  enum class Mark { fresh, open, done };
  std::map<std::string, Mark> mark;
  std::vector<std::size_t> stack;  // edges on the current DFS path
  std::optional<std::vector<std::string>> cycle;

  std::function<bool(const std::string&)> visit = [&](const std::string& u) {
    mark[u] = Mark::open;
    for (const auto e : out[u]) {
      const auto& v = spec.edges[e].head;
      if (mark[v] == Mark::open) {
        std::vector<std::string> ids;
        auto it = std::find_if(stack.begin(), stack.end(), [&](std::size_t s) {
          return spec.edges[s].tail == v;
        });
        for (; it != stack.end(); ++it) ids.push_back(spec.edges[*it].id);
        ids.push_back(spec.edges[e].id);
        cycle = std::move(ids);
        return true;
      }
      if (mark[v] == Mark::fresh) {
        stack.push_back(e);
        if (visit(v)) return true;
        stack.pop_back();
      }
    }
    mark[u] = Mark::done;
    return false;
  };

  std::set<std::string> starts(spec.nodes.begin(), spec.nodes.end());
  for (const auto& e : spec.edges) starts.insert(e.tail);
  for (const auto& u : starts) {
    if (mark[u] == Mark::fresh && visit(u)) break;
  }
  return cycle;
}

}  // namespace

RateVector RateVector::parse(std::string_view text) {
  std::vector<std::uint32_t> symbols;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string_view::npos
                                        ? std::string_view::npos
                                        : comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    std::uint32_t value = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} ||
        ptr != token.data() + token.size()) {
      throw InvalidArgument(fmt::format(
          "rate '{}': entry {} ('{}') is not a natural number", text,
          symbols.size() + 1, token));
    }
    symbols.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return RateVector(std::move(symbols));
}

std::size_t RateVector::total() const noexcept {
  std::size_t sum = 0;
  for (auto s : symbols_) sum += s;
  return sum;
}

std::string RateVector::str() const { return fmt::format("{}", fmt::join(symbols_, ",")); }

std::vector<Violation> validate(const NetworkSpec& spec) {
  std::vector<Violation> found;
  auto report = [&](ViolationKind kind, std::string message) {
    found.push_back({kind, std::move(message), {}});
  };

  std::set<std::string> nodes;
  for (const auto& n : spec.nodes) {
    if (!nodes.insert(n).second) {
      report(ViolationKind::duplicate_node,
             fmt::format("node '{}' declared more than once", n));
    }
    if (!n.empty() && n.front() == kVirtualPrefix) {
      report(ViolationKind::reserved_name,
             fmt::format("node name '{}' may not start with '*'", n));
    }
  }

  std::set<std::string> edge_ids;
  bool dangling_edge = false;
  for (std::size_t k = 0; k < spec.edges.size(); ++k) {
    const auto& e = spec.edges[k];
    if (!edge_ids.insert(e.id).second) {
      report(ViolationKind::duplicate_edge_id,
             fmt::format("edge id '{}' used more than once", e.id));
    }
    if (!e.id.empty() && e.id.front() == kVirtualPrefix) {
      report(ViolationKind::reserved_name,
             fmt::format("edge id '{}' may not start with '*'", e.id));
    }
    for (const auto* end : {&e.tail, &e.head}) {
      if (!nodes.contains(*end)) {
        dangling_edge = true;
        report(ViolationKind::dangling_reference,
               fmt::format("edge '{}' references unknown node '{}'", e.id,
                           *end));
      }
    }
  }

  if (spec.sources.empty()) {
    report(ViolationKind::no_sources, "network declares no sources");
  }
  if (spec.sinks.empty()) {
    report(ViolationKind::no_sinks, "network declares no sinks");
  }

  auto check_terminals = [&](const std::vector<std::string>& list,
                              std::string_view role) {
    std::set<std::string> seen;
    for (const auto& n : list) {
      if (!nodes.contains(n)) {
        report(ViolationKind::dangling_reference,
               fmt::format("{} '{}' is not a declared node", role, n));
      }
      if (!seen.insert(n).second) {
        report(ViolationKind::duplicate_terminal,
               fmt::format("{} '{}' listed more than once", role, n));
      }
    }
  };
  check_terminals(spec.sources, "source");
  check_terminals(spec.sinks, "sink");

  const std::set<std::string> sources(spec.sources.begin(),
                                      spec.sources.end());
  const std::set<std::string> sinks(spec.sinks.begin(), spec.sinks.end());
  for (const auto& t : spec.sinks) {
    if (sources.contains(t)) {
      report(ViolationKind::source_is_sink,
             fmt::format("node '{}' is both a source and a sink", t));
    }
  }

  const std::size_t m = spec.sources.size();
  for (const auto& t : spec.sinks) {
    auto it = spec.demands.find(t);
    if (it == spec.demands.end()) {
      report(ViolationKind::missing_demand,
             fmt::format("sink '{}' has no demand entry", t));
      continue;
    }
    if (it->second.empty()) {
      report(ViolationKind::empty_demand,
             fmt::format("sink '{}' demands no sources", t));
    }
    for (const auto i : it->second) {
      if (i < 1 || i > m) {
        report(ViolationKind::demand_range,
               fmt::format("sink '{}' demands source {} but sources are "
                           "numbered 1..{}",
                           t, i, m));
      }
    }
  }
  for (const auto& [node, list] : spec.demands) {
    if (!sinks.contains(node)) {
      report(ViolationKind::dangling_reference,
             fmt::format("demand given for '{}', which is not a sink", node));
    }
  }

  if (!dangling_edge) {
    if (auto cycle = find_cycle(spec)) {
      found.push_back({ViolationKind::cycle,
                       fmt::format("graph contains a cycle: {}",
                                   fmt::join(*cycle, " -> ")),
                       *cycle});
    }
  }
  return found;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : InvalidArgument(describe(violations)),
      violations_(std::move(violations)) {}

AugmentedNetwork AugmentedNetwork::build(const NetworkSpec& spec,
                                         const RateVector& rate) {
  if (auto violations = validate(spec); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  const std::size_t m = spec.sources.size();
  if (rate.size() != m) {
    throw InvalidArgument(fmt::format(
        "rate has {} entries but the network has {} sources", rate.size(), m));
  }

  AugmentedNetwork aug;
  aug.base_ = spec;
  aug.rate_ = rate;
  aug.dimension_ = rate.total();

  for (std::size_t i = 0; i < m; ++i) {
    aug.node_names_.push_back(kVirtualPrefix + spec.sources[i]);
  }
  for (const auto& n : spec.nodes) {
    aug.node_lookup_.emplace(n, aug.node_names_.size());
    aug.node_names_.push_back(n);
  }
  for (std::size_t i = 0; i < m; ++i) {
    aug.node_lookup_.emplace(aug.node_names_[i], i);
  }
  for (const auto& s : spec.sources) aug.source_nodes_.push_back(aug.node(s));
  for (const auto& t : spec.sinks) {
    aug.sink_nodes_.push_back(aug.node(t));
    std::set<std::size_t> dem;
    for (const auto i : spec.demands.at(t)) dem.insert(i - 1);
    aug.demands_.emplace_back(dem.begin(), dem.end());
  }

  std::size_t offset = 0;
  for (std::size_t i = 0; i < m; ++i) {
    aug.offsets_.push_back(offset);
    for (std::size_t j = 0; j < rate[i]; ++j) {
      aug.edges_.push_back({fmt::format("*{}.{}", i + 1, j + 1), i,
                            aug.source_nodes_[i], VirtualTag{i, j}});
    }
    offset += rate[i];
  }
  for (const auto& e : spec.edges) {
    aug.edges_.push_back({e.id, aug.node(e.tail), aug.node(e.head), {}});
  }

  aug.in_edges_.resize(aug.node_count());
  aug.out_edges_.resize(aug.node_count());
  for (std::size_t e = 0; e < aug.edges_.size(); ++e) {
    aug.edge_lookup_.emplace(aug.edges_[e].id, e);
    aug.out_edges_[aug.edges_[e].tail].push_back(e);
    aug.in_edges_[aug.edges_[e].head].push_back(e);
  }

  // Kahn's algorithm releasing the smallest ready node first.
  std::vector<std::size_t> indegree(aug.node_count());
  for (std::size_t v = 0; v < aug.node_count(); ++v) {
    indegree[v] = aug.in_edges_[v].size();
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>
      ready;
  for (std::size_t v = 0; v < aug.node_count(); ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  while (!ready.empty()) {
    const auto u = ready.top();
    ready.pop();
    for (const auto e : aug.out_edges_[u]) {
      aug.topo_order_.push_back(e);
      if (--indegree[aug.edges_[e].head] == 0) ready.push(aug.edges_[e].head);
    }
  }
  return aug;
}

std::optional<std::size_t> AugmentedNetwork::find_node(
    std::string_view name) const {
  auto it = node_lookup_.find(name);
  if (it == node_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t AugmentedNetwork::node(std::string_view name) const {
  if (auto n = find_node(name)) return *n;
  throw InvalidArgument(fmt::format("unknown node '{}'", name));
}

std::optional<std::size_t> AugmentedNetwork::sink_position(
    std::size_t node) const {
  auto it = std::find(sink_nodes_.begin(), sink_nodes_.end(), node);
  if (it == sink_nodes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - sink_nodes_.begin());
}

std::size_t AugmentedNetwork::coordinate(std::size_t source,
                                         std::size_t index) const {
  if (source >= source_count() || index >= rate_[source]) {
    throw InvalidArgument(fmt::format(
        "no basis vector b_({},{}) at rate {}", source + 1, index + 1,
        rate_.str()));
  }
  return offsets_[source] + index;
}

std::optional<std::size_t> AugmentedNetwork::find_edge(
    std::string_view id) const {
  auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t AugmentedNetwork::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw InvalidArgument(fmt::format("unknown edge '{}'", id));
}

std::vector<std::size_t> topo_edge_order(const AugmentedNetwork& aug) {
  return aug.topo_order();
}

NetworkSpec strip_virtual(const AugmentedNetwork& aug) {
  NetworkSpec spec = aug.base();
  spec.nodes.clear();
  spec.edges.clear();
  for (std::size_t v = aug.source_count(); v < aug.node_count(); ++v) {
    spec.nodes.push_back(aug.node_name(v));
  }
  for (const auto& e : aug.edges()) {
    if (e.tag) continue;
    spec.edges.push_back(
        {e.id, aug.node_name(e.tail), aug.node_name(e.head)});
  }
  return spec;
}

}  // namespace rlnc::network
