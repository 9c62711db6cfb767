#include "rlnc/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "rlnc/error.hpp"

namespace rlnc::linalg {
namespace {

std::size_t common_dim(std::span<const Vec> vectors, std::size_t dim) {
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != dim) {
      throw InvalidArgument(fmt::format(
          "dimension mismatch: vector {} has length {}, expected {}", k,
          vectors[k].size(), dim));
    }
  }
  return dim;
}

// Row echelon form built by first-nonzero pivoting.  Each row remembers
// which combination of the input rows produced it.
class Echelon {
 public:
  Echelon(const Field& field, std::span<const Vec> rows, std::size_t dim,
          bool track)
      : field_(field) {
    const std::size_t n = rows.size();
    std::vector<Vec> vecs(rows.begin(), rows.end());
    std::vector<Vec> combs;
    if (track) {
      combs.reserve(n);
      for (std::size_t k = 0; k < n; ++k) {
        combs.push_back(unit_vector(field, n, k));
      }
    }
    std::size_t next = 0;
    for (std::size_t col = 0; col < dim && next < n; ++col) {
      std::size_t pick = next;
      while (pick < n && vecs[pick][col].value == 0) ++pick;
      if (pick == n) continue;
      std::swap(vecs[next], vecs[pick]);
      if (track) std::swap(combs[next], combs[pick]);
      const Element scale_by = field.inv(vecs[next][col]);
      vecs[next] = scale(field, scale_by, vecs[next]);
      if (track) combs[next] = scale(field, scale_by, combs[next]);
      for (std::size_t k = next + 1; k < n; ++k) {
        const Element f = vecs[k][col];
        if (f.value == 0) continue;
        const Element minus_f = field.neg(f);
        axpy(field, minus_f, vecs[next], vecs[k]);
        if (track) axpy(field, minus_f, combs[next], combs[k]);
      }
      pivots_.push_back({col, std::move(vecs[next]),
                         track ? std::move(combs[next]) : Vec{}});
      ++next;
    }
    generators_ = n;
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

  // Reduces `target` against the pivots.  Returns the combination of input
  // rows that reproduces it, or nullopt when a nonzero residue remains.
  std::optional<Vec> reduce(const Vec& target) const {
    Vec residue = target;
    Vec comb = zero_vector(field_, generators_);
    for (const auto& p : pivots_) {
      const Element f = residue[p.col];
      if (f.value == 0) continue;
      axpy(field_, field_.neg(f), p.vec, residue);
      if (!p.comb.empty()) axpy(field_, f, p.comb, comb);
    }
    if (!is_zero(residue)) return std::nullopt;
    return comb;
  }

 private:
  struct Pivot {
    std::size_t col;
    Vec vec;
    Vec comb;
  };

  const Field& field_;
  std::size_t generators_ = 0;
  std::vector<Pivot> pivots_;
};

}  // namespace

Vec zero_vector(const Field& field, std::size_t dim) {
  return Vec(dim, field.zero());
}

Vec unit_vector(const Field& field, std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw InvalidArgument(
        fmt::format("unit vector index {} out of range for dimension {}",
                    index, dim));
  }
  Vec v = zero_vector(field, dim);
  v[index] = field.one();
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Element& e) { return e.value == 0; });
}

Vec add(const Field& field, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw InvalidArgument(fmt::format("dimension mismatch: {} vs {}",
                                      a.size(), b.size()));
  }
  Vec out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = field.add(a[k], b[k]);
  return out;
}

Vec scale(const Field& field, Element c, const Vec& v) {
  Vec out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = field.mul(c, v[k]);
  return out;
}

void axpy(const Field& field, Element c, const Vec& v, Vec& acc) {
  if (v.size() != acc.size()) {
    throw InvalidArgument(fmt::format("dimension mismatch: {} vs {}",
                                      v.size(), acc.size()));
  }
  if (!field.contains(c)) {
    throw InvalidArgument(
        fmt::format("scalar does not belong to field {}", field.name()));
  }
  if (c.value == 0) return;
  for (std::size_t k = 0; k < v.size(); ++k) {
    acc[k] = field.add(acc[k], field.mul(c, v[k]));
  }
}

CoordSubspace::CoordSubspace(std::size_t dim,
                             std::span<const std::size_t> indices)
    : mask_(dim, false) {
  for (const auto i : indices) {
    if (i >= dim) {
      throw InvalidArgument(fmt::format(
          "coordinate {} out of range for dimension {}", i, dim));
    }
    mask_[i] = true;
  }
}

std::vector<std::size_t> CoordSubspace::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(i);
  }
  return out;
}

CoordSubspace CoordSubspace::complement() const {
  std::vector<bool> flipped(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) flipped[i] = !mask_[i];
  return CoordSubspace(std::move(flipped));
}

Vec project(const Field& field, const Vec& v, const CoordSubspace& subspace) {
  if (v.size() != subspace.dim()) {
    throw InvalidArgument(fmt::format(
        "cannot project a length-{} vector onto a subspace of F^{}", v.size(),
        subspace.dim()));
  }
  Vec out = v;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!subspace.contains(i)) out[i] = field.zero();
  }
  return out;
}

std::size_t rank(const Field& field, std::span<const Vec> vectors) {
  if (vectors.empty()) return 0;
  const auto dim = common_dim(vectors, vectors.front().size());
  return Echelon(field, vectors, dim, false).rank();
}

bool in_span(const Field& field, const Vec& target,
             std::span<const Vec> generators) {
  const auto dim = common_dim(generators, target.size());
  return Echelon(field, generators, dim, false).reduce(target).has_value();
}

bool all_in_span(const Field& field, std::span<const Vec> targets,
                 std::span<const Vec> generators) {
  if (targets.empty()) return true;
  const auto dim = common_dim(generators, targets.front().size());
  common_dim(targets, dim);
  const Echelon echelon(field, generators, dim, false);
  for (const auto& t : targets) {
    if (!echelon.reduce(t)) return false;
  }
  return true;
}

std::optional<Matrix> solve_for_targets(const Field& field,
                                        std::span<const Vec> generators,
                                        std::span<const Vec> targets) {
  if (generators.empty() && targets.empty()) return Matrix{};
  const std::size_t dim =
      generators.empty() ? targets.front().size() : generators.front().size();
  common_dim(generators, dim);
  common_dim(targets, dim);

  const Echelon echelon(field, generators, dim, true);
  Matrix d;
  d.reserve(targets.size());
  for (const auto& t : targets) {
    auto row = echelon.reduce(t);
    if (!row) return std::nullopt;
    d.push_back(std::move(*row));
  }

  const Matrix back = multiply(field, d, generators, dim);
  if (!std::equal(back.begin(), back.end(), targets.begin(), targets.end())) {
    throw std::logic_error("solve_for_targets: multiply-back check failed");
  }
  return d;
}

Matrix multiply(const Field& field, const Matrix& a, std::span<const Vec> b,
                std::size_t cols) {
  common_dim(b, cols);
  Matrix out;
  out.reserve(a.size());
  for (const auto& row : a) {
    if (row.size() != b.size()) {
      throw InvalidArgument(fmt::format(
          "dimension mismatch: row of length {} times {} rows", row.size(),
          b.size()));
    }
    Vec acc = zero_vector(field, cols);
    for (std::size_t k = 0; k < row.size(); ++k) axpy(field, row[k], b[k], acc);
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace rlnc::linalg
