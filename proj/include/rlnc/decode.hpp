#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rlnc/coding.hpp"
#include "rlnc/linalg.hpp"
#include "rlnc/network.hpp"

namespace rlnc::decode {

using coding::CodingAssignment;
using linalg::Matrix;
using linalg::Vec;
using network::AugmentedNetwork;

/// What a sink sees: the vectors on its in-edges and the unit vectors
/// b_{i,j} it must recover.
struct SinkView {
  std::size_t sink = 0;  // node index
  std::vector<std::pair<std::size_t, Vec>> in_vectors;  // (edge, psi(edge))
  std::vector<Vec> demanded_basis;                       // d_1 rows

  std::vector<Vec> generators() const;
};

/// Throws InvalidArgument when `sink` is not a declared sink.
SinkView sink_view(const CodingAssignment& assignment,
                   const AugmentedNetwork& aug, std::size_t sink);

/// Every demanded unit vector lies in the span of the in-edge vectors.
bool decodable(const CodingAssignment& assignment, const AugmentedNetwork& aug,
               std::size_t sink);

/// D with D * (in-edge vectors as rows) = demanded basis rows, verified by
/// multiplying back; nullopt when the sink cannot decode.
std::optional<Matrix> decoding_matrix(const CodingAssignment& assignment,
                                      const AugmentedNetwork& aug,
                                      std::size_t sink);

struct DecodeOutcome {
  std::vector<bool> per_sink;  // in sink order
  bool all = true;
};

DecodeOutcome all_sinks_decodable(const CodingAssignment& assignment,
                                  const AugmentedNetwork& aug);

}  // namespace rlnc::decode
