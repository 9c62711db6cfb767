#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "rlnc/network_io.hpp"

namespace rlnc::testing {

std::string fixture_path(const std::string& name) {
  return fmt::format("{}/{}.json", RLNC_FIXTURE_DIR, name);
}

network::NetworkSpec fixture(const std::string& name) {
  return network::load_network(fixture_path(name));
}

std::vector<std::string> fixture_names() {
  return {"butterfly", "bottleneck", "crossing"};
}

network::RateVector fixture_rate(const std::string& name) {
  if (name == "butterfly") return network::RateVector({2});
  return network::RateVector({1, 1});
}

RandomInstance random_instance(std::uint64_t seed, std::size_t max_nodes,
                               std::size_t max_edges, std::uint32_t max_rate) {
  RngStream rng = RngStream::derive(seed, 0x5eed);
  auto pick = [&](std::size_t lo, std::size_t hi) {  // inclusive
    return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
  };

  RandomInstance inst;
  auto& spec = inst.spec;
  spec.name = fmt::format("random{}", seed);
  const std::size_t n = pick(3, max_nodes);
  for (std::size_t v = 0; v < n; ++v) spec.nodes.push_back(fmt::format("n{}", v));

  // Index order is a topological order; every edge goes forward.
  const std::size_t edges = pick(n - 1, std::max(n - 1, max_edges));
  for (std::size_t k = 0; k < edges; ++k) {
    std::size_t a = pick(0, n - 2);
    std::size_t b = pick(a + 1, n - 1);
    spec.edges.push_back({fmt::format("e{}", k + 1), spec.nodes[a],
                          spec.nodes[b]});
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t k = n; k-- > 1;) {
    std::swap(order[k], order[pick(0, k)]);
  }
  const std::size_t m = pick(1, std::min<std::size_t>(3, n - 1));
  const std::size_t sinks = pick(1, std::min<std::size_t>(3, n - m));
  for (std::size_t k = 0; k < m; ++k) spec.sources.push_back(spec.nodes[order[k]]);
  for (std::size_t k = 0; k < sinks; ++k) {
    spec.sinks.push_back(spec.nodes[order[m + k]]);
  }
  for (const auto& t : spec.sinks) {
    std::vector<std::size_t> dem;
    while (dem.empty()) {
      for (std::size_t i = 1; i <= m; ++i) {
        if (rng.below(2) == 1) dem.push_back(i);
      }
    }
    spec.demands[t] = dem;
  }

  std::vector<std::uint32_t> rate(m);
  for (auto& r : rate) r = static_cast<std::uint32_t>(rng.below(max_rate + 1));
  inst.rate = network::RateVector(rate);
  return inst;
}

namespace {

bool connected(const network::AugmentedNetwork& aug,
               std::span<const std::size_t> sources, std::size_t sink,
               const std::vector<char>& removed) {
  std::vector<char> seen(aug.node_count(), 0);
  std::vector<std::size_t> stack(sources.begin(), sources.end());
  for (auto s : sources) seen[s] = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    if (u == sink) return true;
    for (std::size_t e = 0; e < aug.edge_count(); ++e) {
      if (removed[e] || aug.edge(e).tail != u) continue;
      const auto v = aug.edge(e).head;
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return false;
}

}  // namespace

std::size_t brute_force_mincut(const network::AugmentedNetwork& aug,
                               std::span<const std::size_t> sources,
                               std::size_t sink) {
  const std::size_t n = aug.edge_count();
  std::vector<char> removed(n, 0);
  for (std::size_t k = 0; k <= n; ++k) {
    // Walk all k-subsets in lexicographic order.
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::fill(removed.begin(), removed.end(), 0);
      for (auto i : idx) removed[i] = 1;
      if (!connected(aug, sources, sink, removed)) return k;
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return n;
}

std::vector<std::vector<std::size_t>> enumerate_cuts(
    const network::AugmentedNetwork& aug, std::span<const std::size_t> sources,
    std::size_t sink) {
  const std::set<std::size_t> fixed(sources.begin(), sources.end());
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < aug.node_count(); ++v) {
    if (v != sink && !fixed.contains(v)) free.push_back(v);
  }
  std::vector<std::vector<std::size_t>> cuts;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size());
       ++mask) {
    std::vector<char> source_side(aug.node_count(), 0);
    for (auto s : fixed) source_side[s] = 1;
    for (std::size_t k = 0; k < free.size(); ++k) {
      if ((mask >> k) & 1u) source_side[free[k]] = 1;
    }
    std::vector<std::size_t> cut;
    for (std::size_t e = 0; e < aug.edge_count(); ++e) {
      if (source_side[aug.edge(e).tail] && !source_side[aug.edge(e).head]) {
        cut.push_back(e);
      }
    }
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

std::uint32_t peasant_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly,
                          unsigned degree) {
  const std::uint32_t top = std::uint32_t{1} << degree;
  std::uint32_t product = 0;
  while (b != 0) {
    if (b & 1u) product ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= poly;
  }
  return product;
}

RawFraction bottleneck_closed_form(std::uint64_t q) {
  // (1 - 1/q)^2 * (1 - (1 - 1/q)^2) = (q-1)^2 * (q^2 - (q-1)^2) / q^4
  const std::uint64_t qm1 = q - 1;
  return {qm1 * qm1 * (q * q - qm1 * qm1), q * q * q * q};
}

}  // namespace rlnc::testing

namespace rlnc::testing {

coding::CoefficientMap butterfly_classic(const network::AugmentedNetwork& aug,
                                         const gf::Field& field) {
  auto map = uniform_map(aug, field, 1);
  const auto e1 = aug.edge_index("e1");
  const auto e2 = aug.edge_index("e2");
  const auto v1 = aug.edge_index("*1.1");
  const auto v2 = aug.edge_index("*1.2");
  map[{e1, v2}] = field.zero();
  map[{e2, v1}] = field.zero();
  return map;
}

coding::CoefficientMap uniform_map(const network::AugmentedNetwork& aug,
                                   const gf::Field& field, std::uint64_t value) {
  coding::CoefficientMap map;
  for (std::size_t e = 0; e < aug.edge_count(); ++e) {
    if (aug.is_virtual(e)) continue;
    for (const auto in : aug.in_edges(aug.edge(e).tail)) {
      map[{e, in}] = field.element(value);
    }
  }
  return map;
}

std::size_t naive_rank(const gf::Field& field,
                       std::vector<std::vector<gf::Element>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].value == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const auto inv = field.inv(rows[r][c]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].value == 0) continue;
      const auto f = field.mul(rows[i][c], inv);
      for (std::size_t k = 0; k < cols; ++k) {
        rows[i][k] = field.sub(rows[i][k], field.mul(f, rows[r][k]));
      }
    }
    ++r;
  }
  return r;
}

std::size_t cut_span_violations(const coding::CodingAssignment& assignment,
                                const network::AugmentedNetwork& aug) {
  const auto& field = assignment.field;
  const std::size_t m = aug.source_count();
  std::size_t violations = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<std::size_t> sources;
    std::vector<char> keep(aug.dimension(), 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (!((mask >> i) & 1u)) continue;
      sources.push_back(aug.virtual_node(i));
      for (std::uint32_t j = 0; j < aug.rate()[i]; ++j) {
        keep[aug.coordinate(i, j)] = 1;
      }
    }
    auto restrict_u1 = [&](std::vector<gf::Element> v) {
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!keep[k]) v[k] = field.zero();
      }
      return v;
    };
    for (std::size_t k = 0; k < aug.sink_count(); ++k) {
      const auto t = aug.sink_node(k);
      for (const auto& cut : enumerate_cuts(aug, sources, t)) {
        std::vector<std::vector<gf::Element>> gens;
        for (const auto e : cut) gens.push_back(restrict_u1(assignment.vectors[e]));
        const auto base = naive_rank(field, gens);
        for (const auto e : aug.in_edges(t)) {
          auto with = gens;
          with.push_back(restrict_u1(assignment.vectors[e]));
          if (naive_rank(field, with) != base) ++violations;
        }
      }
    }
  }
  return violations;
}

}  // namespace rlnc::testing
