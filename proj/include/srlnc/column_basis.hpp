#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "srlnc/field.hpp"

namespace srlnc {

// Incremental echelon bases of F_q^n. Vectors are inserted one at a time and
// reduced against the stored basis; insert() reports whether the vector was
// independent of everything inserted so far. Each stored vector is indexed by
// its lowest nonzero coordinate (its pivot), so reduction needs no
// back-substitution. Used by the Monte Carlo kernels to grow the column space
// of a random matrix until it reaches dimension n or provably cannot.

/// GF(2); vectors packed into ceil(n/64) words, bit j of the vector in word j/64.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }
  std::size_t rank() const noexcept { return rank_; }
  void clear() noexcept;

  /// Reduces `v` in place (it holds the residual afterwards).
  bool insert(std::span<std::uint64_t> v) noexcept;

 private:
  std::size_t n_;
  std::size_t words_;
  std::size_t rank_ = 0;
  std::vector<std::uint64_t> rows_;  // n_ x words_, slot p holds the vector with pivot p
  std::vector<std::uint8_t> present_;
};

/// GF(256) with the field's product table. Vectors are n bytes.
class Gf256Basis {
 public:
  Gf256Basis(FieldPtr field, std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  std::size_t rank() const noexcept { return rank_; }
  void clear() noexcept;

  /// Reduces `v` in place; stored vectors are scaled so the pivot is 1.
  bool insert(std::span<std::uint8_t> v) noexcept;

  /// True when the SSSE3 multiply-add kernel was compiled in.
  static bool simd_enabled() noexcept;

 private:
  FieldPtr field_;
  std::size_t n_;
  std::size_t stride_;  // n_ rounded up to 16
  std::size_t rank_ = 0;
  std::vector<std::uint8_t> rows_;
  std::vector<std::uint8_t> present_;
  std::vector<std::uint8_t> nibble_tables_;  // 256 x 32: low-nibble then high-nibble products
  std::vector<std::uint8_t> scratch_;
};

/// Any supported field, element by element.
class GenericBasis {
 public:
  GenericBasis(FieldPtr field, std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  std::size_t rank() const noexcept { return rank_; }
  void clear() noexcept;

  bool insert(std::span<Elem> v);

 private:
  FieldPtr field_;
  std::size_t n_;
  std::size_t rank_ = 0;
  std::vector<Elem> rows_;
  std::vector<std::uint8_t> present_;
};

}  // namespace srlnc
