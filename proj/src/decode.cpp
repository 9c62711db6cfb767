#include "rlnc/decode.hpp"

#include <fmt/format.h>

#include "rlnc/error.hpp"

namespace rlnc::decode {

std::vector<Vec> SinkView::generators() const {
  std::vector<Vec> rows;
  rows.reserve(in_vectors.size());
  for (const auto& [edge, v] : in_vectors) rows.push_back(v);
  return rows;
}

SinkView sink_view(const CodingAssignment& assignment,
                   const AugmentedNetwork& aug, std::size_t sink) {
  const auto position = aug.sink_position(sink);
  if (!position) {
    throw InvalidArgument(fmt::format(
        "node {} is not a declared sink",
        sink < aug.node_count() ? aug.node_name(sink) : std::to_string(sink)));
  }
  SinkView view;
  view.sink = sink;
  for (const auto e : aug.in_edges(sink)) {
    view.in_vectors.emplace_back(e, assignment.vectors.at(e));
  }
  for (const auto i : aug.demand(*position)) {
    for (std::size_t j = 0; j < aug.rate()[i]; ++j) {
      view.demanded_basis.push_back(linalg::unit_vector(
          assignment.field, aug.dimension(), aug.coordinate(i, j)));
    }
  }
  return view;
}

bool decodable(const CodingAssignment& assignment, const AugmentedNetwork& aug,
               std::size_t sink) {
  const auto view = sink_view(assignment, aug, sink);
  return linalg::all_in_span(assignment.field, view.demanded_basis,
                             view.generators());
}

std::optional<Matrix> decoding_matrix(const CodingAssignment& assignment,
                                      const AugmentedNetwork& aug,
                                      std::size_t sink) {
  const auto view = sink_view(assignment, aug, sink);
  return linalg::solve_for_targets(assignment.field, view.generators(),
                                   view.demanded_basis);
}

DecodeOutcome all_sinks_decodable(const CodingAssignment& assignment,
                                  const AugmentedNetwork& aug) {
  DecodeOutcome out;
  for (std::size_t k = 0; k < aug.sink_count(); ++k) {
    const bool ok = decodable(assignment, aug, aug.sink_node(k));
    out.per_sink.push_back(ok);
    out.all = out.all && ok;
  }
  return out;
}

}  // namespace rlnc::decode
