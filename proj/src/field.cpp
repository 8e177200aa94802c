#include "srlnc/field.hpp"

#include <array>
#include <charconv>
#include <string>
#include <tuple>
#include <utility>

#include "srlnc/errors.hpp"

namespace srlnc {

namespace {

constexpr std::array<std::uint32_t, 17> kDefaultPolynomials = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x83,    0x11B,
    0x211,   0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

unsigned poly_degree(std::uint64_t p) noexcept {
  unsigned d = 0;
  while (p >>= 1) ++d;
  return d;
}

// Remainder of a modulo b over F_2[x]; b != 0.
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) noexcept {
  const unsigned db = poly_degree(b);
  while (a != 0 && poly_degree(a) >= db) a ^= b << (poly_degree(a) - db);
  return a;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint32_t parse_uint(std::string_view s, int base, std::string_view what) {
  if (base == 16 && (s.starts_with("0x") || s.starts_with("0X"))) s.remove_prefix(2);
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t clmul_reduce(std::uint32_t a, std::uint32_t b, std::uint32_t poly, unsigned w) noexcept {
  std::uint64_t prod = 0;
  for (unsigned i = 0; i < 32; ++i) {
    if ((b >> i) & 1U) prod ^= static_cast<std::uint64_t>(a) << i;
  }
  for (int bit = 63; bit >= static_cast<int>(w); --bit) {
    if ((prod >> bit) & 1U) prod ^= static_cast<std::uint64_t>(poly) << (bit - static_cast<int>(w));
  }
  return static_cast<std::uint32_t>(prod);
}

bool is_irreducible_gf2(std::uint32_t poly, unsigned w) noexcept {
  if (w == 0 || poly_degree(poly) != w) return false;
  // Trial division by every polynomial of degree 1..w/2.
  for (std::uint64_t d = 2; poly_degree(d) <= w / 2; ++d) {
    if (poly_mod(poly, d) == 0) return false;
  }
  return true;
}

std::uint32_t Field::default_polynomial(unsigned w) {
  if (w < 1 || w > 16) throw UsageError("binary extension degree must be in [1,16], got " + std::to_string(w));
  return kDefaultPolynomials[w];
}

Field::Field(FieldKind kind, std::uint32_t q, unsigned w, std::uint32_t poly)
    : kind_(kind), q_(q), w_(w), poly_(poly) {
  if (kind_ == FieldKind::prime) {
    if (q_ >= (1U << 16) || !is_prime(q_)) throw UsageError("field order " + std::to_string(q_) + " is not a prime below 2^16");
    w_ = 1;
    poly_ = 0;
    inverse_.assign(q_, 0);
    // Extended Euclid per element; q < 2^16 keeps this cheap.
    for (std::uint32_t a = 1; a < q_; ++a) {
      std::int64_t r0 = q_, r1 = a, t0 = 0, t1 = 1;
      while (r1 != 0) {
        const std::int64_t k = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - k * r1};
        std::tie(t0, t1) = std::pair{t1, t0 - k * t1};
      }
      inverse_[a] = static_cast<std::uint16_t>((t0 % q_ + q_) % q_);
    }
    return;
  }

  if (w_ < 1 || w_ > 16) throw UsageError("binary extension degree must be in [1,16], got " + std::to_string(w_));
  if (!is_irreducible_gf2(poly_, w_)) throw UsageError("reduction polynomial is not irreducible of degree " + std::to_string(w_));
  q_ = 1U << w_;

  const std::uint32_t group = q_ - 1;
  const auto factors = prime_factors(group);
  auto power = [&](std::uint32_t base, std::uint32_t e) {
    std::uint32_t acc = 1;
    while (e) {
      if (e & 1U) acc = clmul_reduce(acc, base, poly_, w_);
      base = clmul_reduce(base, base, poly_, w_);
      e >>= 1;
    }
    return acc;
  };
  generator_ = 1;
  if (group > 1) {
    for (std::uint32_t g = 2; g < q_; ++g) {
      bool primitive = true;
      for (auto f : factors) {
        if (power(g, group / f) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        generator_ = g;
        break;
      }
    }
  }

  log_.assign(q_, 0);
  antilog_.assign(2 * static_cast<std::size_t>(group), 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < group; ++i) {
    antilog_[i] = x;
    antilog_[i + group] = x;
    log_[x] = i;
    x = clmul_reduce(x, generator_, poly_, w_);
  }

  inverse_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a) inverse_[a] = static_cast<std::uint16_t>(antilog_[(group - log_[a]) % group]);

  if (q_ == 256) {
    gf256_table_.assign(256 * 256, 0);
    for (std::uint32_t a = 1; a < 256; ++a) {
      for (std::uint32_t b = 1; b < 256; ++b) gf256_table_[(a << 8) | b] = static_cast<std::uint8_t>(antilog_[log_[a] + log_[b]]);
    }
  }
}

FieldPtr Field::prime(std::uint32_t p) { return std::make_shared<const Field>(FieldKind::prime, p, 1, 0); }

FieldPtr Field::binary_extension(unsigned w, std::uint32_t poly) {
  return std::make_shared<const Field>(FieldKind::binary_extension, 0, w, poly);
}

FieldPtr Field::binary_extension(unsigned w) { return binary_extension(w, default_polynomial(w)); }

FieldPtr Field::parse(std::string_view text) {
  if (text == "gf2") return gf2();
  if (text == "gf256") return gf256();
  if (text.starts_with("prime:")) return prime(parse_uint(text.substr(6), 10, "prime"));
  if (text.starts_with("binext:")) {
    auto rest = text.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) return binary_extension(parse_uint(rest, 10, "extension degree"));
    return binary_extension(parse_uint(rest.substr(0, colon), 10, "extension degree"),
                            parse_uint(rest.substr(colon + 1), 16, "reduction polynomial"));
  }
  auto digits = text;
  if (digits.starts_with("gf")) digits.remove_prefix(2);
  const std::uint32_t q = parse_uint(digits, 10, "field");
  if (q >= 2 && (q & (q - 1)) == 0 && q != 2) return binary_extension(poly_degree(q));
  if (is_prime(q)) return prime(q);
  throw UsageError("unsupported field order " + std::to_string(q) + " (need a prime or 2^w, w <= 16)");
}

std::string Field::name() const {
  if (kind_ == FieldKind::prime) return q_ == 2 ? "gf2" : "prime:" + std::to_string(q_);
  if (q_ == 256 && poly_ == kDefaultPolynomials[8]) return "gf256";
  char buf[16];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), poly_, 16);
  (void)ec;
  return "binext:" + std::to_string(w_) + ":" + std::string(buf, ptr);
}

Elem Field::inv(Elem a) const {
  if (a == 0 || a >= q_) throw DomainError("zero has no multiplicative inverse");
  return inverse_[a];
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  Elem acc = 1;
  while (e) {
    if (e & 1U) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
  if (!field_) throw UsageError("field element without a field");
  if (!field_->contains(value_)) throw DomainError("element code " + std::to_string(value_) + " outside " + field_->name());
}

const Field& FieldElement::common_field(const FieldElement& rhs) const {
  if (field_ != rhs.field_ && !(*field_ == *rhs.field_)) {
    throw UsageError("mixing elements of " + field_->name() + " and " + rhs.field_->name());
  }
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const { return {field_, common_field(rhs).add(value_, rhs.value_)}; }
FieldElement FieldElement::operator-(const FieldElement& rhs) const { return {field_, common_field(rhs).sub(value_, rhs.value_)}; }
FieldElement FieldElement::operator*(const FieldElement& rhs) const { return {field_, common_field(rhs).mul(value_, rhs.value_)}; }
FieldElement FieldElement::operator/(const FieldElement& rhs) const { return {field_, common_field(rhs).div(value_, rhs.value_)}; }

}  // namespace srlnc
