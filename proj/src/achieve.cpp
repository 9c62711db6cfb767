#include "rlnc/achieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "rlnc/maxflow.hpp"

namespace rlnc::achieve {

RateVerdict check_rate(const NetworkSpec& spec, const RateVector& rate) {
  return check_rate(AugmentedNetwork::build(spec, rate));
}

RateVerdict check_rate(const AugmentedNetwork& aug) {
  RateVerdict verdict;
  verdict.rate = aug.rate();
  for (std::size_t k = 0; k < aug.sink_count(); ++k) {
    SinkCondition c;
    c.sink = aug.sink_node(k);
    c.sink_name = aug.node_name(c.sink);

    const auto& dem = aug.demand(k);
    std::vector<bool> demanded(aug.source_count(), false);
    for (const auto i : dem) {
      demanded[i] = true;
      c.d1 += aug.rate()[i];
    }
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < aug.source_count(); ++i) {
      if (!demanded[i]) others.push_back(aug.virtual_node(i));
    }
    c.d2 = maxflow::maxflow(aug, others, c.sink).value;
    c.total = maxflow::maxflow_from_virtual(aug, c.sink).value;
    if (c.d1 + c.d2 < c.total) {
      throw std::logic_error(fmt::format(
          "sink '{}': d1 + d2 = {} below maxflow {}", c.sink_name,
          c.d1 + c.d2, c.total));
    }
    c.holds = c.d1 + c.d2 == c.total;
    verdict.holds = verdict.holds && c.holds;
    verdict.sinks.push_back(std::move(c));
  }
  return verdict;
}

RegionReport enumerate_region(const NetworkSpec& spec, std::size_t bound,
                              RegionOptions options) {
  if (auto violations = network::validate(spec); !violations.empty()) {
    throw network::ValidationError(std::move(violations));
  }
  const std::size_t m = spec.sources.size();
  const double size = std::pow(static_cast<double>(bound) + 1.0,
                               static_cast<double>(m));
  if (size > kRegionGuard) {
    throw GuardExceeded(
        fmt::format("region has {}^{} = {:.0f} rate vectors, limit {:.0f}",
                    bound + 1, m, size, kRegionGuard),
        size, kRegionGuard);
  }
  const std::size_t radix = bound + 1;
  const std::size_t count = static_cast<std::size_t>(size);

  // Mixed-radix index: the first coordinate is most significant, so index
  // order is lexicographic order and every r - e_i precedes r.
  std::vector<std::size_t> stride(m, 1);
  for (std::size_t i = m; i-- > 1;) stride[i - 1] = stride[i] * radix;
  auto decode = [&](std::size_t index) {
    std::vector<std::uint32_t> r(m);
    for (std::size_t i = 0; i < m; ++i) {
      r[i] = static_cast<std::uint32_t>(index / stride[i] % radix);
    }
    return r;
  };

  RegionReport report;
  report.bound = bound;
  std::vector<bool> ok(count, false);
  for (std::size_t index = 0; index < count; ++index) {
    const auto r = decode(index);
    bool blocked = false;
    if (options.prune) {
      for (std::size_t i = 0; i < m && !blocked; ++i) {
        blocked = r[i] > 0 && !ok[index - stride[i]];
      }
    }
    if (blocked) continue;
    ++report.evaluated;
    ok[index] = check_rate(spec, RateVector(r)).holds;
    if (ok[index]) report.achievable.emplace_back(r);
  }

  // up[x]: some achievable vector dominates x.
  std::vector<bool> up(count, false);
  for (std::size_t index = count; index-- > 0;) {
    const auto r = decode(index);
    bool above = false;
    for (std::size_t i = 0; i < m && !above; ++i) {
      above = r[i] < bound && up[index + stride[i]];
    }
    up[index] = ok[index] || above;
    if (ok[index] && !above) report.frontier.emplace_back(r);
  }
  std::reverse(report.frontier.begin(), report.frontier.end());
  return report;
}

}  // namespace rlnc::achieve
