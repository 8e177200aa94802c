#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "srlnc/matrix.hpp"

namespace srlnc {

/// GF(2) matrix with rows packed 64 columns per word.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);
  /// Throws UsageError unless `m` is over GF(2).
  static BitMatrix from_matrix(const Matrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool get(std::size_t r, std::size_t c) const noexcept { return (row(r)[c >> 6] >> (c & 63)) & 1U; }
  void set(std::size_t r, std::size_t c, bool v) noexcept;

  std::span<std::uint64_t> row(std::size_t r) noexcept { return {bits_.data() + r * words_, words_}; }
  std::span<const std::uint64_t> row(std::size_t r) const noexcept { return {bits_.data() + r * words_, words_}; }

  Matrix to_matrix() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Rank by word-wide XOR elimination. Consumes its argument.
std::size_t rank(BitMatrix m);
/// Early-exit full-row-rank test.
bool is_full_row_rank(BitMatrix m);

}  // namespace srlnc
