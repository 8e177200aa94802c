#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srlnc/field.hpp"

namespace srlnc {

/// Dense row-major matrix over F_q. Entries are stored as 16-bit codes.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, std::initializer_list<std::initializer_list<Elem>> rows);

  static Matrix identity(FieldPtr field, std::size_t n);
  /// Parses the debug dump format: one row per line, space-separated codes.
  static Matrix parse(FieldPtr field, std::string_view text);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldPtr& field() const noexcept { return field_; }

  Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  /// Throws DomainError if v is not a field element.
  void set(std::size_t r, std::size_t c, Elem v);

  std::span<std::uint16_t> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint16_t> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<std::uint16_t> data() noexcept { return data_; }
  std::span<const std::uint16_t> data() const noexcept { return data_; }

  Matrix transpose() const;
  /// Columns `keep` in the given order.
  Matrix select_columns(std::span<const std::size_t> keep) const;
  /// Rows [first, first+count).
  Matrix row_block(std::size_t first, std::size_t count) const;
  /// [this | rhs]; row counts must agree.
  Matrix hconcat(const Matrix& rhs) const;

  bool is_zero() const noexcept;

  // Elementary row operations (in place).
  void swap_rows(std::size_t a, std::size_t b) noexcept;
  void scale_row(std::size_t r, Elem c) noexcept;
  /// row[dst] += c * row[src]
  void add_scaled_row(std::size_t dst, std::size_t src, Elem c) noexcept;

  /// Debug dump: one row per line, space-separated integer codes.
  std::string dump() const;

  bool operator==(const Matrix& other) const noexcept;

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint16_t> data_;
};

struct RrefResult {
  Matrix rref;
  std::size_t rank;
  std::vector<std::size_t> pivots;  // strictly increasing column indices
};

/// Rank by Gaussian elimination; always completes. GF(2) uses the bit-packed path.
std::size_t rank(const Matrix& m);
/// Rank via the generic element-wise elimination, regardless of field.
std::size_t rank_generic(const Matrix& m);
/// Consuming variant: eliminates `m` in place.
std::size_t rank_in_place(Matrix& m);
/// rank(m) == rows(m), stopping as soon as full rank becomes unreachable.
bool is_full_row_rank(const Matrix& m);

RrefResult rref(const Matrix& m);
/// Throws UsageError on shape or field mismatch.
Matrix matmul(const Matrix& a, const Matrix& b);
/// nullopt when `m` is singular. Throws UsageError if `m` is not square.
std::optional<Matrix> invert(const Matrix& m);

}  // namespace srlnc
