#include "rlnc/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include <fmt/format.h>

namespace rlnc::maxflow {
namespace {

constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();

// Residual graph: aug nodes plus one super-source wired to every node of the
// source set with effectively unbounded capacity.
class Dinic {
 public:
  struct Arc {
    std::size_t to;
    std::size_t cap;
    std::size_t flow = 0;
    std::size_t edge;  // aug edge index, kNoEdge for super arcs/reverse arcs
  };

  Dinic(const AugmentedNetwork& aug, std::span<const std::size_t> sources,
        std::size_t sink)
      : n_(aug.node_count() + 1),
        super_(aug.node_count()),
        sink_(sink),
        adj_(n_),
        level_(n_),
        next_(n_) {
    const std::size_t unbounded = aug.edge_count() + 1;
    for (const auto s : sources) add_arc(super_, s, unbounded, kNoEdge);
    for (std::size_t e = 0; e < aug.edge_count(); ++e) {
      add_arc(aug.edge(e).tail, aug.edge(e).head, 1, e);
    }
  }

  std::size_t run() {
    std::size_t total = 0;
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      while (std::size_t pushed = dfs(super_, std::numeric_limits<std::size_t>::max())) {
        total += pushed;
      }
    }
    return total;
  }

  // Nodes reachable from the super-source in the final residual graph.
  std::vector<bool> residual_reach() const {
    std::vector<bool> seen(n_, false);
    std::deque<std::size_t> queue{super_};
    seen[super_] = true;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (const auto a : adj_[u]) {
        const auto v = arcs_[a].to;
        if (residual(a) > 0 && !seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
    return seen;
  }

  // Splits the flow into super-source -> sink walks.  The augmented graph
  // is acyclic, so every walk is a simple path.
  std::vector<std::vector<std::size_t>> decompose() {
    std::vector<std::vector<std::size_t>> paths;
    std::vector<std::size_t> remaining(arcs_.size());
    for (std::size_t a = 0; a < arcs_.size(); a += 2) {
      remaining[a] = arcs_[a].flow;
    }
    while (true) {
      std::vector<std::size_t> path;
      std::size_t u = super_;
      while (u != sink_) {
        std::size_t pick = kNoEdge;
        for (const auto a : adj_[u]) {
          if (a % 2 == 0 && remaining[a] > 0) {
            pick = a;
            break;
          }
        }
        if (pick == kNoEdge) break;
        --remaining[pick];
        if (arcs_[pick].edge != kNoEdge) path.push_back(arcs_[pick].edge);
        u = arcs_[pick].to;
      }
      if (u != sink_) break;
      paths.push_back(std::move(path));
    }
    return paths;
  }

 private:
  void add_arc(std::size_t from, std::size_t to, std::size_t cap,
               std::size_t edge) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap, 0, edge});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0, 0, kNoEdge});
  }

  std::size_t residual(std::size_t a) const {
    // Reverse arcs (odd) carry the flow of their partner.
    if (a % 2 == 1) return arcs_[a - 1].flow - arcs_[a].flow;
    return arcs_[a].cap - arcs_[a].flow;
  }

  void push(std::size_t a, std::size_t amount) {
    if (a % 2 == 0) {
      arcs_[a].flow += amount;
    } else {
      arcs_[a - 1].flow -= amount;
    }
  }

  bool bfs() {
    std::fill(level_.begin(), level_.end(), kNoEdge);
    std::deque<std::size_t> queue{super_};
    level_[super_] = 0;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (const auto a : adj_[u]) {
        const auto v = arcs_[a].to;
        if (residual(a) > 0 && level_[v] == kNoEdge) {
          level_[v] = level_[u] + 1;
          queue.push_back(v);
        }
      }
    }
    return level_[sink_] != kNoEdge;
  }

  std::size_t dfs(std::size_t u, std::size_t limit) {
    if (u == sink_) return limit;
    for (auto& i = next_[u]; i < adj_[u].size(); ++i) {
      const auto a = adj_[u][i];
      const auto v = arcs_[a].to;
      const auto res = residual(a);
      if (res == 0 || level_[v] != level_[u] + 1) continue;
      if (const auto got = dfs(v, std::min(limit, res)); got > 0) {
        push(a, got);
        return got;
      }
    }
    return 0;
  }

  std::size_t n_;
  std::size_t super_;
  std::size_t sink_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> level_;
  std::vector<std::size_t> next_;
};

}  // namespace

FlowResult maxflow(const AugmentedNetwork& aug,
                   std::span<const std::size_t> source_set, std::size_t sink) {
  if (sink >= aug.node_count()) {
    throw InvalidArgument(fmt::format("unknown sink node {}", sink));
  }
  std::set<std::size_t> sources;
  for (const auto s : source_set) {
    if (s >= aug.node_count()) {
      throw InvalidArgument(fmt::format("unknown source node {}", s));
    }
    sources.insert(s);
  }
  if (sources.contains(sink)) {
    throw InvalidArgument(fmt::format("sink '{}' is inside the source set",
                                      aug.node_name(sink)));
  }

  FlowResult result;
  result.source_set.assign(sources.begin(), sources.end());
  result.sink = sink;

  Dinic dinic(aug, result.source_set, sink);
  result.value = dinic.run();
  result.paths = dinic.decompose();

  const auto reach = dinic.residual_reach();
  for (std::size_t e = 0; e < aug.edge_count(); ++e) {
    if (reach[aug.edge(e).tail] && !reach[aug.edge(e).head]) {
      result.mincut.push_back(e);
    }
  }
  return result;
}

FlowResult maxflow_from_virtual(const AugmentedNetwork& aug, std::size_t sink) {
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < aug.source_count(); ++i) {
    all.push_back(aug.virtual_node(i));
  }
  return maxflow(aug, all, sink);
}

bool reachable(const AugmentedNetwork& aug,
               std::span<const std::size_t> source_set, std::size_t sink,
               const std::vector<bool>& removed) {
  std::vector<bool> seen(aug.node_count(), false);
  std::deque<std::size_t> queue;
  for (const auto s : source_set) {
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    if (u == sink) return true;
    for (const auto e : aug.out_edges(u)) {
      if (removed[e]) continue;
      const auto v = aug.edge(e).head;
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return false;
}

std::optional<FlowViolation> verify_flow(const AugmentedNetwork& aug,
                                         const FlowResult& result) {
  const std::set<std::size_t> sources(result.source_set.begin(),
                                      result.source_set.end());
  std::vector<bool> used(aug.edge_count(), false);
  for (std::size_t p = 0; p < result.paths.size(); ++p) {
    const auto& path = result.paths[p];
    if (path.empty()) {
      return FlowViolation{FlowViolationKind::broken_path,
                           fmt::format("path {} is empty", p)};
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (path[k] >= aug.edge_count()) {
        return FlowViolation{
            FlowViolationKind::unknown_edge,
            fmt::format("path {} uses unknown edge {}", p, path[k])};
      }
      if (k > 0 && aug.edge(path[k - 1]).head != aug.edge(path[k]).tail) {
        return FlowViolation{
            FlowViolationKind::broken_path,
            fmt::format("path {} breaks between '{}' and '{}'", p,
                        aug.edge(path[k - 1]).id, aug.edge(path[k]).id)};
      }
    }
    if (!sources.contains(aug.edge(path.front()).tail) ||
        aug.edge(path.back()).head != result.sink) {
      return FlowViolation{
          FlowViolationKind::wrong_endpoints,
          fmt::format("path {} does not run from the source set to the sink",
                      p)};
    }
    for (const auto e : path) {
      if (used[e]) {
        return FlowViolation{
            FlowViolationKind::shared_edge,
            fmt::format("edge '{}' is shared by two paths", aug.edge(e).id)};
      }
      used[e] = true;
    }
  }

  std::vector<bool> removed(aug.edge_count(), false);
  for (const auto e : result.mincut) {
    if (e >= aug.edge_count()) {
      return FlowViolation{FlowViolationKind::unknown_edge,
                           fmt::format("cut uses unknown edge {}", e)};
    }
    removed[e] = true;
  }
  if (result.value != result.paths.size() ||
      result.value != result.mincut.size()) {
    return FlowViolation{
        FlowViolationKind::value_mismatch,
        fmt::format("value {} but {} paths and a cut of {} edges",
                    result.value, result.paths.size(), result.mincut.size())};
  }
  if (reachable(aug, result.source_set, result.sink, removed)) {
    return FlowViolation{FlowViolationKind::cut_not_separating,
                         "removing the cut leaves the sink reachable"};
  }
  return std::nullopt;
}

}  // namespace rlnc::maxflow
