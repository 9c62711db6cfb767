#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rlnc/rng.hpp"

namespace rlnc::gf {

enum class FieldKind { prime, binary_extension };

/// An element of GF(q).  The tag identifies the field that produced it so
/// mixing operands from different fields is caught at the operation.
struct Element {
  std::uint32_t value = 0;
  std::uint32_t field_tag = 0;

  friend bool operator==(const Element&, const Element&) = default;
};

/// Largest supported prime order (exclusive).
inline constexpr std::uint64_t kMaxPrimeOrder = std::uint64_t{1} << 31;
inline constexpr unsigned kMaxBinaryDegree = 16;

/// Default reduction polynomial for GF(2^k), k in [1, 16], as a bitmask
/// including the leading x^k term.
std::uint32_t default_polynomial(unsigned degree);

/// True iff the GF(2) polynomial given by `poly` (bitmask) has exactly the
/// stated degree and no factor of degree 1..degree/2.
bool is_irreducible_binary(std::uint32_t poly, unsigned degree);

bool is_prime(std::uint64_t n);

/// Carry-less product of a and b reduced modulo poly (degree `degree`).
/// Slow reference path; used to build the log tables and as a test oracle.
std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t poly,
                        unsigned degree);

/// Finite field descriptor.  Immutable after construction and cheap to copy;
/// GF(2^k) log/antilog tables are shared between copies.
class Field {
 public:
  /// GF(q) for prime q < 2^31.
  static Field prime(std::uint64_t q);
  /// GF(2^k) reduced by `poly` (bitmask with the x^k bit set).
  static Field binary(unsigned degree, std::uint32_t poly);
  /// GF(2^k) with the default polynomial for k.
  static Field binary(unsigned degree);
  /// Prime field when q is prime, GF(2^k) when q = 2^k with k >= 2.
  static Field with_order(std::uint64_t q);
  /// Parses "p:<q>" or "2^<k>[:<poly-hex>]".
  static Field parse(std::string_view descriptor);

  FieldKind kind() const noexcept { return kind_; }
  std::uint32_t characteristic() const noexcept { return characteristic_; }
  unsigned degree() const noexcept { return degree_; }
  std::uint32_t order() const noexcept { return order_; }
  std::uint32_t polynomial() const noexcept { return poly_; }
  std::uint32_t tag() const noexcept { return tag_; }

  /// Canonical descriptor: "p:<q>", "2^<k>", or "2^<k>:<poly-hex>" when the
  /// polynomial is not the default one.  parse(name()) == *this.
  std::string name() const;

  Element zero() const noexcept { return {0, tag_}; }
  Element one() const noexcept { return {1, tag_}; }
  /// Element with representative v; throws unless v < q.
  Element element(std::uint64_t v) const;
  bool contains(const Element& a) const noexcept {
    return a.field_tag == tag_ && a.value < order_;
  }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// Uniform over all q elements, zero included.
  Element sample(RngStream& rng) const {
    return {static_cast<std::uint32_t>(rng.below(order_)), tag_};
  }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.tag_ == b.tag_;
  }

 private:
  struct Tables {
    std::vector<std::uint32_t> log;
    std::vector<std::uint32_t> exp;  // doubled length, no modular index
  };

  Field() = default;
  void check(const Element& a) const;

  FieldKind kind_ = FieldKind::prime;
  std::uint32_t characteristic_ = 2;
  unsigned degree_ = 1;
  std::uint32_t order_ = 2;
  std::uint32_t poly_ = 0;
  std::uint32_t tag_ = 0;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace rlnc::gf
