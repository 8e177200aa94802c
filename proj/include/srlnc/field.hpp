#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace srlnc {

/// Integer code of a field element, always in [0, q).
using Elem = std::uint32_t;

enum class FieldKind { prime, binary_extension };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// A finite field F_q with q prime (< 2^16) or q = 2^w (w <= 16).
///
/// Elements are integer codes. For binary-extension fields the code is the
/// coefficient bitmask of a polynomial over F_2 reduced modulo the reduction
/// polynomial; addition is XOR and multiplication goes through log/antilog
/// tables built from a primitive element. GF(256) additionally carries a full
/// 256x256 product table.
///
/// A Field is immutable after construction and is shared through FieldPtr.
class Field {
 public:
  static FieldPtr prime(std::uint32_t p);
  /// `poly` includes the leading x^w term, e.g. 0x11B for x^8+x^4+x^3+x+1.
  static FieldPtr binary_extension(unsigned w, std::uint32_t poly);
  static FieldPtr binary_extension(unsigned w);
  static FieldPtr gf2() { return prime(2); }
  static FieldPtr gf256() { return binary_extension(8); }

  /// Accepts "gf2", "gf256", "gf<2^w>", "prime:p", "binext:w:poly_hex" or a bare
  /// order ("2", "3", "256"). Throws UsageError on anything else.
  static FieldPtr parse(std::string_view text);

  /// Default irreducible polynomial for GF(2^w); the AES polynomial for w = 8.
  static std::uint32_t default_polynomial(unsigned w);

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return kind_ == FieldKind::prime ? q_ : 2; }
  FieldKind kind() const noexcept { return kind_; }
  /// Extension degree w (1 for prime fields).
  unsigned degree() const noexcept { return w_; }
  std::uint32_t reduction_polynomial() const noexcept { return poly_; }
  /// Canonical string accepted by parse().
  std::string name() const;

  bool operator==(const Field& other) const noexcept {
    return q_ == other.q_ && kind_ == other.kind_ && poly_ == other.poly_;
  }

  Elem add(Elem a, Elem b) const noexcept {
    if (kind_ == FieldKind::binary_extension || q_ == 2) return a ^ b;
    Elem s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Elem neg(Elem a) const noexcept {
    if (kind_ == FieldKind::binary_extension || q_ == 2 || a == 0) return a;
    return q_ - a;
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (kind_ == FieldKind::prime) {
      return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % q_);
    }
    if (q_ == 256) return gf256_table_[(a << 8) | b];
    if (a == 0 || b == 0) return 0;
    return antilog_[log_[a] + log_[b]];
  }
  /// Throws DomainError for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  bool contains(Elem a) const noexcept { return a < q_; }

  /// Row c of the GF(256) product table: gf256_row(c)[x] == mul(c, x). q == 256 only.
  const std::uint8_t* gf256_row(Elem c) const noexcept { return gf256_table_.data() + (c << 8); }

  /// Primitive element used to build the tables (binary-extension only).
  Elem generator() const noexcept { return generator_; }
  /// antilog[i] = g^i for 0 <= i < q-1 (binary-extension only; empty otherwise).
  std::span<const std::uint32_t> antilog_table() const noexcept {
    return {antilog_.data(), antilog_.empty() ? 0 : q_ - 1};
  }
  /// log[a] for nonzero a; log[0] is unused (binary-extension only).
  std::span<const std::uint32_t> log_table() const noexcept { return log_; }

  Field(FieldKind kind, std::uint32_t q, unsigned w, std::uint32_t poly);

 private:
  FieldKind kind_;
  std::uint32_t q_;
  unsigned w_;
  std::uint32_t poly_;
  Elem generator_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> antilog_;  // length 2(q-1) so log sums need no reduction
  std::vector<std::uint16_t> inverse_;
  std::vector<std::uint8_t> gf256_table_;
};

/// Carry-less product of a and b reduced modulo `poly` (degree w). Independent of
/// the table path; used to build tables and to cross-check them.
std::uint32_t clmul_reduce(std::uint32_t a, std::uint32_t b, std::uint32_t poly, unsigned w) noexcept;

/// True if `poly` (leading term x^w included) is irreducible over F_2.
bool is_irreducible_gf2(std::uint32_t poly, unsigned w) noexcept;

bool is_prime(std::uint64_t n) noexcept;

/// Field element bound to its field. Mixing elements of different fields
/// throws UsageError.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value);

  const FieldPtr& field() const noexcept { return field_; }
  Elem value() const noexcept { return value_; }

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator/(const FieldElement& rhs) const;
  FieldElement operator-() const { return {field_, field_->neg(value_)}; }
  FieldElement inv() const { return {field_, field_->inv(value_)}; }

  bool operator==(const FieldElement& rhs) const noexcept {
    return value_ == rhs.value_ && *field_ == *rhs.field_;
  }

 private:
  const Field& common_field(const FieldElement& rhs) const;

  FieldPtr field_;
  Elem value_;
};

inline FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement neg(const FieldElement& a) { return -a; }
inline FieldElement inv(const FieldElement& a) { return a.inv(); }

}  // namespace srlnc
