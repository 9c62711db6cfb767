#include "rlnc/coding.hpp"

#include <fmt/format.h>

#include "rlnc/error.hpp"

namespace rlnc::coding {
namespace {

// psi over the topological order, pulling each slot's coefficient from
// `next_coefficient(slot)`.
template <typename Source>
CodingAssignment build(const AugmentedNetwork& aug, const Field& field,
                       Source&& next_coefficient) {
  const std::size_t r = aug.dimension();
  CodingAssignment out{field, r, {}, {}};
  out.vectors.assign(aug.edge_count(), linalg::zero_vector(field, r));
  out.coefficients.resize(aug.edge_count());
  for (const auto e : aug.topo_order()) {
    const auto& edge = aug.edge(e);
    if (edge.tag) {
      out.vectors[e] = linalg::unit_vector(
          field, r, aug.coordinate(edge.tag->source, edge.tag->index));
      continue;
    }
    Vec acc = linalg::zero_vector(field, r);
    for (const auto in : aug.in_edges(edge.tail)) {
      const Element c = next_coefficient(Slot{e, in});
      out.coefficients[e].emplace_back(in, c);
      linalg::axpy(field, c, out.vectors[in], acc);
    }
    out.vectors[e] = std::move(acc);
  }
  return out;
}

}  // namespace

std::vector<Slot> coefficient_slots(const AugmentedNetwork& aug) {
  std::vector<Slot> slots;
  for (const auto e : aug.topo_order()) {
    if (aug.is_virtual(e)) continue;
    for (const auto in : aug.in_edges(aug.edge(e).tail)) slots.push_back({e, in});
  }
  return slots;
}

CodingAssignment random_code(const AugmentedNetwork& aug, const Field& field,
                             RngStream& rng) {
  return build(aug, field, [&](Slot) { return field.sample(rng); });
}

CodingAssignment code_with_coefficients(const AugmentedNetwork& aug,
                                        const Field& field,
                                        const CoefficientMap& coefficients) {
  std::size_t used = 0;
  auto out = build(aug, field, [&](Slot slot) {
    auto it = coefficients.find(slot);
    if (it == coefficients.end()) {
      throw InvalidArgument(fmt::format(
          "missing coefficient for edge '{}' from in-edge '{}'",
          aug.edge(slot.edge).id, aug.edge(slot.in_edge).id));
    }
    if (!field.contains(it->second)) {
      throw InvalidArgument(fmt::format(
          "coefficient for edge '{}' from in-edge '{}' is not in {}",
          aug.edge(slot.edge).id, aug.edge(slot.in_edge).id, field.name()));
    }
    ++used;
    return it->second;
  });
  if (used != coefficients.size()) {
    for (const auto& [slot, c] : coefficients) {
      const bool known =
          slot.edge < aug.edge_count() && slot.in_edge < aug.edge_count() &&
          !aug.is_virtual(slot.edge) &&
          aug.edge(slot.in_edge).head == aug.edge(slot.edge).tail;
      if (!known) {
        throw InvalidArgument(fmt::format(
            "extraneous coefficient for slot ({}, {})", slot.edge,
            slot.in_edge));
      }
    }
  }
  return out;
}

CodingAssignment code_with_coefficients(const AugmentedNetwork& aug,
                                        const Field& field,
                                        std::span<const Element> flat) {
  std::size_t next = 0;
  auto out = build(aug, field, [&](Slot slot) {
    if (next >= flat.size()) {
      throw InvalidArgument(fmt::format(
          "missing coefficient for edge '{}' from in-edge '{}'",
          aug.edge(slot.edge).id, aug.edge(slot.in_edge).id));
    }
    return flat[next++];
  });
  if (next != flat.size()) {
    throw InvalidArgument(fmt::format(
        "{} coefficients supplied for {} slots", flat.size(), next));
  }
  return out;
}

CoefficientMap coefficient_map(const CodingAssignment& assignment) {
  CoefficientMap map;
  for (std::size_t e = 0; e < assignment.coefficients.size(); ++e) {
    for (const auto& [in, c] : assignment.coefficients[e]) {
      map.emplace(Slot{e, in}, c);
    }
  }
  return map;
}

std::optional<CodingViolation> recheck(const CodingAssignment& assignment,
                                       const AugmentedNetwork& aug) {
  const auto& field = assignment.field;
  const std::size_t r = aug.dimension();
  if (assignment.dimension != r ||
      assignment.vectors.size() != aug.edge_count() ||
      assignment.coefficients.size() != aug.edge_count()) {
    return CodingViolation{0, "assignment does not match the network shape"};
  }
  std::vector<Vec> derived(aug.edge_count());
  for (const auto e : aug.topo_order()) {
    const auto& edge = aug.edge(e);
    const auto& stored = assignment.vectors[e];
    if (edge.tag) {
      derived[e] = linalg::unit_vector(
          field, r, aug.coordinate(edge.tag->source, edge.tag->index));
      if (stored != derived[e]) {
        return CodingViolation{
            e, fmt::format("virtual edge '{}' does not carry its unit vector",
                           edge.id)};
      }
      continue;
    }
    const auto& ins = aug.in_edges(edge.tail);
    const auto& coeffs = assignment.coefficients[e];
    if (coeffs.size() != ins.size()) {
      return CodingViolation{
          e, fmt::format("edge '{}' stores {} coefficients, expected {}",
                         edge.id, coeffs.size(), ins.size())};
    }
    Vec acc = linalg::zero_vector(field, r);
    for (std::size_t k = 0; k < ins.size(); ++k) {
      if (coeffs[k].first != ins[k] || !field.contains(coeffs[k].second)) {
        return CodingViolation{
            e, fmt::format("edge '{}' has a malformed coefficient entry",
                           edge.id)};
      }
      linalg::axpy(field, coeffs[k].second, derived[ins[k]], acc);
    }
    if (stored != acc) {
      return CodingViolation{
          e, fmt::format("edge '{}' carries a vector that its coefficients "
                         "do not produce",
                         edge.id)};
    }
    derived[e] = std::move(acc);
  }
  return std::nullopt;
}

void dump(std::ostream& out, const CodingAssignment& assignment,
          const AugmentedNetwork& aug) {
  for (const auto e : aug.topo_order()) {
    out << aug.edge(e).id << ':';
    for (const auto& x : assignment.vectors[e]) out << ' ' << x.value;
    out << ';';
    for (const auto& [in, c] : assignment.coefficients[e]) {
      out << ' ' << aug.edge(in).id << '=' << c.value;
    }
    out << '\n';
  }
}

}  // namespace rlnc::coding
