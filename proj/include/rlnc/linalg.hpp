#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rlnc/gf.hpp"

namespace rlnc::linalg {

using gf::Element;
using gf::Field;

/// Dense vector over GF(q).
using Vec = std::vector<Element>;
/// Row-major dense matrix; each row is a Vec.
using Matrix = std::vector<Vec>;

Vec zero_vector(const Field& field, std::size_t dim);
/// Unit vector with a one at `index`.
Vec unit_vector(const Field& field, std::size_t dim, std::size_t index);
bool is_zero(const Vec& v);

Vec add(const Field& field, const Vec& a, const Vec& b);
Vec scale(const Field& field, Element c, const Vec& v);
/// acc += c * v
void axpy(const Field& field, Element c, const Vec& v, Vec& acc);

/// Coordinate subspace of F^dim spanned by the unit vectors at `indices`.
class CoordSubspace {
 public:
  CoordSubspace(std::size_t dim, std::span<const std::size_t> indices);

  std::size_t dim() const noexcept { return mask_.size(); }
  bool contains(std::size_t index) const { return mask_.at(index); }
  std::vector<std::size_t> indices() const;
  CoordSubspace complement() const;

 private:
  explicit CoordSubspace(std::vector<bool> mask) : mask_(std::move(mask)) {}
  std::vector<bool> mask_;
};

/// Zeroes the coordinates outside `subspace`.
Vec project(const Field& field, const Vec& v, const CoordSubspace& subspace);

std::size_t rank(const Field& field, std::span<const Vec> vectors);

bool in_span(const Field& field, const Vec& target,
             std::span<const Vec> generators);

/// Every target lies in the span of the generators (one elimination).
bool all_in_span(const Field& field, std::span<const Vec> targets,
                 std::span<const Vec> generators);

/// D with D * G = T, where G and T hold the generators and targets as rows.
/// nullopt when some target is outside the span of the generators.
std::optional<Matrix> solve_for_targets(const Field& field,
                                        std::span<const Vec> generators,
                                        std::span<const Vec> targets);

/// a * b, where b has `cols` columns.  Needed explicitly because b may have
/// no rows.
Matrix multiply(const Field& field, const Matrix& a, std::span<const Vec> b,
                std::size_t cols);

}  // namespace rlnc::linalg
