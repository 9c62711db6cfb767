#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rlnc/gf.hpp"
#include "rlnc/linalg.hpp"
#include "rlnc/network.hpp"
#include "rlnc/rng.hpp"

namespace rlnc::coding {

using gf::Element;
using gf::Field;
using linalg::Vec;
using network::AugmentedNetwork;

/// One local coding coefficient: the weight of in-edge `in_edge` (entering
/// the tail of `edge`) in the combination carried by `edge`.
struct Slot {
  std::size_t edge;
  std::size_t in_edge;

  friend auto operator<=>(const Slot&, const Slot&) = default;
};

/// All coefficient slots in canonical order: edges in topo_edge_order, and
/// for each edge the in-edges of its tail in ascending index.  Virtual edges
/// have no slots.
std::vector<Slot> coefficient_slots(const AugmentedNetwork& aug);

using CoefficientMap = std::map<Slot, Element>;

/// Global coding vectors psi(e) for every edge of an augmented network,
/// together with the local coefficients that produced them.
struct CodingAssignment {
  Field field;
  std::size_t dimension = 0;
  std::vector<Vec> vectors;  // indexed by aug edge index
  /// Per edge, (in-edge, coefficient) pairs in ascending in-edge order.
  std::vector<std::vector<std::pair<std::size_t, Element>>> coefficients;
};

/// Draws every slot independently and uniformly (zero included), in
/// coefficient_slots order.
CodingAssignment random_code(const AugmentedNetwork& aug, const Field& field,
                             RngStream& rng);

/// Deterministic coding from an explicit mapping.  Throws InvalidArgument on
/// missing or extraneous keys.
CodingAssignment code_with_coefficients(const AugmentedNetwork& aug,
                                        const Field& field,
                                        const CoefficientMap& coefficients);

/// Same, with one coefficient per slot in coefficient_slots order.
CodingAssignment code_with_coefficients(const AugmentedNetwork& aug,
                                        const Field& field,
                                        std::span<const Element> flat);

CoefficientMap coefficient_map(const CodingAssignment& assignment);

struct CodingViolation {
  std::size_t edge;
  std::string message;
};

/// Re-derives every psi(e) from the stored coefficients and reports the
/// first edge, in topo_edge_order, whose stored vector disagrees.
std::optional<CodingViolation> recheck(const CodingAssignment& assignment,
                                       const AugmentedNetwork& aug);

/// Debug dump, one line per edge in topo_edge_order:
///
///   <edge-id>: <v_1> <v_2> ... <v_r>; <in-edge-id>=<c> <in-edge-id>=<c> ...
///
/// Vector entries and coefficients are canonical integer representatives.
void dump(std::ostream& out, const CodingAssignment& assignment,
          const AugmentedNetwork& aug);

}  // namespace rlnc::coding
