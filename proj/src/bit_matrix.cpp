#include "srlnc/bit_matrix.hpp"

#include <algorithm>

#include "srlnc/errors.hpp"

namespace srlnc {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

BitMatrix BitMatrix::from_matrix(const Matrix& m) {
  if (m.field()->order() != 2) throw UsageError("bit-packed matrices are GF(2) only");
  BitMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto src = m.row(r);
    auto dst = out.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) dst[c >> 6] |= static_cast<std::uint64_t>(src[c] & 1U) << (c & 63);
  }
  return out;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) noexcept {
  auto& w = row(r)[c >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (c & 63);
  w = v ? (w | bit) : (w & ~bit);
}

Matrix BitMatrix::to_matrix() const {
  Matrix m(Field::gf2(), rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m.set(r, c, get(r, c));
  }
  return m;
}

namespace {

std::size_t eliminate_bits(BitMatrix& m, bool stop_when_short) {
  const std::size_t words = m.words_per_row();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    if (stop_when_short && m.cols() - col < m.rows() - pivot_row) break;
    const std::size_t w = col >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (col & 63);
    std::size_t p = pivot_row;
    while (p < m.rows() && !(m.row(p)[w] & bit)) ++p;
    if (p == m.rows()) continue;
    if (p != pivot_row) std::swap_ranges(m.row(p).begin(), m.row(p).end(), m.row(pivot_row).begin());
    const auto piv = m.row(pivot_row);
    for (std::size_t r = pivot_row + 1; r < m.rows(); ++r) {
      auto dst = m.row(r);
      if (dst[w] & bit) {
        // Words left of w are already zero in the pivot row.
        for (std::size_t k = w; k < words; ++k) dst[k] ^= piv[k];
      }
    }
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace

std::size_t rank(BitMatrix m) { return eliminate_bits(m, false); }

bool is_full_row_rank(BitMatrix m) {
  if (m.rows() > m.cols()) return false;
  return eliminate_bits(m, true) == m.rows();
}

}  // namespace srlnc
