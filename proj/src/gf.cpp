#include "rlnc/gf.hpp"

#include <bit>
#include <charconv>

#include <fmt/format.h>

#include "rlnc/error.hpp"

namespace rlnc::gf {
namespace {

constexpr std::uint32_t kBinaryTagBit = 0x80000000u;

// Primitive polynomials, x^k term included.
constexpr std::uint32_t kDefaultPolynomials[kMaxBinaryDegree + 1] = {
    0,       0x3,    0x7,    0xb,    0x13,   0x25,   0x43,
    0x89,    0x11d,  0x211,  0x409,  0x805,  0x1053, 0x201b,
    0x4443,  0x8003, 0x1100b};

unsigned poly_degree(std::uint32_t p) {
  return p == 0 ? 0 : static_cast<unsigned>(std::bit_width(p)) - 1;
}

// Remainder of a modulo b over GF(2).
std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const unsigned db = poly_degree(b);
  while (a != 0 && poly_degree(a) >= db) a ^= b << (poly_degree(a) - db);
  return a;
}

std::uint64_t parse_uint(std::string_view text, int base,
                         std::string_view what) {
  std::uint64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v, base);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw InvalidArgument(
        fmt::format("invalid {} '{}' in field descriptor", what, text));
  }
  return v;
}

}  // namespace

std::uint32_t default_polynomial(unsigned degree) {
  if (degree < 1 || degree > kMaxBinaryDegree) {
    throw InvalidArgument(fmt::format(
        "binary extension degree {} outside [1, {}]", degree, kMaxBinaryDegree));
  }
  return kDefaultPolynomials[degree];
}

bool is_irreducible_binary(std::uint32_t poly, unsigned degree) {
  if (degree < 1 || poly_degree(poly) != degree) return false;
  // Any reducible polynomial has a factor of degree <= degree / 2.
  for (std::uint32_t f = 2; poly_degree(f) <= degree / 2; ++f) {
    if (poly_mod(poly, f) == 0) return false;
  }
  return true;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t poly,
                        unsigned degree) {
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < 32; ++i) {
    if ((b >> i) & 1u) acc ^= std::uint64_t{a} << i;
  }
  for (int bit = 63; bit >= static_cast<int>(degree); --bit) {
    if ((acc >> bit) & 1u) acc ^= std::uint64_t{poly} << (bit - degree);
  }
  return static_cast<std::uint32_t>(acc);
}

Field Field::prime(std::uint64_t q) {
  if (q >= kMaxPrimeOrder) {
    throw InvalidArgument(
        fmt::format("prime order {} exceeds supported maximum 2^31", q));
  }
  if (!is_prime(q)) {
    throw InvalidArgument(fmt::format("field order {} is not prime", q));
  }
  Field f;
  f.kind_ = FieldKind::prime;
  f.characteristic_ = static_cast<std::uint32_t>(q);
  f.degree_ = 1;
  f.order_ = static_cast<std::uint32_t>(q);
  f.poly_ = 0;
  f.tag_ = f.order_;
  return f;
}

Field Field::binary(unsigned degree) {
  return binary(degree, default_polynomial(degree));
}

Field Field::binary(unsigned degree, std::uint32_t poly) {
  if (degree < 1 || degree > kMaxBinaryDegree) {
    throw InvalidArgument(fmt::format(
        "binary extension degree {} outside [1, {}]", degree, kMaxBinaryDegree));
  }
  if (poly_degree(poly) != degree) {
    throw InvalidArgument(fmt::format(
        "polynomial {:#x} does not have degree {}", poly, degree));
  }
  if (!is_irreducible_binary(poly, degree)) {
    throw InvalidArgument(
        fmt::format("polynomial {:#x} is reducible over GF(2)", poly));
  }
  Field f;
  f.kind_ = FieldKind::binary_extension;
  f.characteristic_ = 2;
  f.degree_ = degree;
  f.order_ = std::uint32_t{1} << degree;
  f.poly_ = poly;
  f.tag_ = kBinaryTagBit | poly;

  // x need not be primitive for an arbitrary irreducible polynomial, so
  // search for a generator of the multiplicative group.
  const std::uint32_t group = f.order_ - 1;
  auto tables = std::make_shared<Tables>();
  tables->log.assign(f.order_, 0);
  tables->exp.assign(2 * static_cast<std::size_t>(group), 0);
  for (std::uint32_t g = (group == 1 ? 1 : 2); g < f.order_; ++g) {
    std::uint32_t x = 1;
    std::uint32_t period = 0;
    do {
      tables->exp[period] = x;
      x = clmul_mod(x, g, poly, degree);
      ++period;
    } while (x != 1 && period < group);
    if (x == 1 && period == group) break;
  }
  for (std::uint32_t i = 0; i < group; ++i) {
    tables->exp[group + i] = tables->exp[i];
    tables->log[tables->exp[i]] = i;
  }
  f.tables_ = std::move(tables);
  return f;
}

Field Field::with_order(std::uint64_t q) {
  if (is_prime(q)) return prime(q);
  if (q >= 4 && std::has_single_bit(q)) {
    return binary(static_cast<unsigned>(std::countr_zero(q)));
  }
  throw InvalidArgument(fmt::format(
      "field order {} is neither prime nor a supported power of two", q));
}

Field Field::parse(std::string_view descriptor) {
  if (descriptor.starts_with("p:")) {
    return prime(parse_uint(descriptor.substr(2), 10, "prime order"));
  }
  if (descriptor.starts_with("2^")) {
    auto rest = descriptor.substr(2);
    const auto colon = rest.find(':');
    const auto degree = parse_uint(rest.substr(0, colon), 10, "degree");
    if (degree < 1 || degree > kMaxBinaryDegree) {
      throw InvalidArgument(fmt::format(
          "binary extension degree {} outside [1, {}]", degree,
          kMaxBinaryDegree));
    }
    if (colon == std::string_view::npos) {
      return binary(static_cast<unsigned>(degree));
    }
    auto hex = rest.substr(colon + 1);
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    const auto poly = parse_uint(hex, 16, "polynomial");
    if (poly > UINT32_MAX) {
      throw InvalidArgument(fmt::format("polynomial '{}' too wide", hex));
    }
    return binary(static_cast<unsigned>(degree),
                  static_cast<std::uint32_t>(poly));
  }
  throw InvalidArgument(fmt::format(
      "field descriptor '{}' must look like p:<q> or 2^<k>[:poly-hex]",
      descriptor));
}

std::string Field::name() const {
  if (kind_ == FieldKind::prime) return fmt::format("p:{}", order_);
  if (poly_ == kDefaultPolynomials[degree_]) {
    return fmt::format("2^{}", degree_);
  }
  return fmt::format("2^{}:{:x}", degree_, poly_);
}

Element Field::element(std::uint64_t v) const {
  if (v >= order_) {
    throw InvalidArgument(
        fmt::format("value {} is not an element of {}", v, name()));
  }
  return {static_cast<std::uint32_t>(v), tag_};
}

void Field::check(const Element& a) const {
  if (a.field_tag != tag_) {
    throw InvalidArgument(
        fmt::format("operand does not belong to field {}", name()));
  }
}

Element Field::add(Element a, Element b) const {
  check(a);
  check(b);
  if (kind_ == FieldKind::binary_extension) return {a.value ^ b.value, tag_};
  const std::uint64_t s = std::uint64_t{a.value} + b.value;
  return {static_cast<std::uint32_t>(s >= order_ ? s - order_ : s), tag_};
}

Element Field::neg(Element a) const {
  check(a);
  if (kind_ == FieldKind::binary_extension || a.value == 0) return a;
  return {order_ - a.value, tag_};
}

Element Field::sub(Element a, Element b) const { return add(a, neg(b)); }

Element Field::mul(Element a, Element b) const {
  check(a);
  check(b);
  if (kind_ == FieldKind::prime) {
    return {static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value %
                                       order_),
            tag_};
  }
  if (a.value == 0 || b.value == 0) return zero();
  const auto& t = *tables_;
  return {t.exp[t.log[a.value] + t.log[b.value]], tag_};
}

Element Field::inv(Element a) const {
  check(a);
  if (a.value == 0) {
    throw InvalidArgument(fmt::format("zero has no inverse in {}", name()));
  }
  if (kind_ == FieldKind::binary_extension) {
    const auto& t = *tables_;
    const std::uint32_t group = order_ - 1;
    return {t.exp[(group - t.log[a.value]) % group], tag_};
  }
  // Extended Euclid on (a, q).
  std::int64_t r0 = order_, r1 = a.value, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t quot = r0 / r1;
    std::int64_t tmp = r0 - quot * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - quot * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (s0 < 0) s0 += order_;
  return {static_cast<std::uint32_t>(s0), tag_};
}

}  // namespace rlnc::gf
