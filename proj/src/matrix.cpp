#include "srlnc/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "srlnc/bit_matrix.hpp"
#include "srlnc/errors.hpp"

namespace srlnc {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (!field_) throw UsageError("matrix without a field");
}

Matrix::Matrix(FieldPtr field, std::initializer_list<std::initializer_list<Elem>> rows)
    : Matrix(std::move(field), rows.size(), rows.size() ? rows.begin()->size() : 0) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) throw UsageError("ragged matrix literal");
    std::size_t c = 0;
    for (Elem v : row) set(r, c++, v);
    ++r;
  }
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::parse(FieldPtr field, std::string_view text) {
  std::vector<std::vector<Elem>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<Elem> row;
    long long v = 0;
    while (ls >> v) {
      if (v < 0) throw UsageError("negative matrix entry");
      row.push_back(static_cast<Elem>(v));
    }
    if (!ls.eof()) throw UsageError("non-numeric matrix entry in '" + line + "'");
    if (!row.empty()) rows.push_back(std::move(row));
  }
  Matrix m(std::move(field), rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw UsageError("ragged matrix dump");
    for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, Elem v) {
  if (!field_->contains(v)) throw DomainError("entry " + std::to_string(v) + " outside " + field_->name());
  data_[r * cols_ + c] = static_cast<std::uint16_t>(v);
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  }
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> keep) const {
  Matrix out(field_, rows_, keep.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (keep[j] >= cols_) throw UsageError("column index out of range");
      out.data_[r * keep.size() + j] = data_[r * cols_ + keep[j]];
    }
  }
  return out;
}

Matrix Matrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw UsageError("row block out of range");
  Matrix out(field_, count, cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_, out.data_.begin());
  return out;
}

Matrix Matrix::hconcat(const Matrix& rhs) const {
  if (rows_ != rhs.rows_) throw UsageError("hconcat row count mismatch");
  if (!(*field_ == *rhs.field_)) throw UsageError("hconcat field mismatch");
  Matrix out(field_, rows_, cols_ + rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::copy(row(r).begin(), row(r).end(), out.row(r).begin());
    std::copy(rhs.row(r).begin(), rhs.row(r).end(), out.row(r).begin() + static_cast<std::ptrdiff_t>(cols_));
  }
  return out;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint16_t v) { return v == 0; });
}

void Matrix::swap_rows(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

void Matrix::scale_row(std::size_t r, Elem c) noexcept {
  for (auto& v : row(r)) v = static_cast<std::uint16_t>(field_->mul(c, v));
}

void Matrix::add_scaled_row(std::size_t dst, std::size_t src, Elem c) noexcept {
  if (c == 0) return;
  const auto s = row(src);
  auto d = row(dst);
  const Field& f = *field_;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (s[j] != 0) d[j] = static_cast<std::uint16_t>(f.add(d[j], f.mul(c, s[j])));
  }
}

std::string Matrix::dump() const {
  std::string out;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += ' ';
      out += std::to_string(data_[r * cols_ + c]);
    }
    out += '\n';
  }
  return out;
}

bool Matrix::operator==(const Matrix& other) const noexcept {
  return rows_ == other.rows_ && cols_ == other.cols_ && *field_ == *other.field_ && data_ == other.data_;
}

namespace {

// Forward elimination from `start_col`. Pivot rows are normalized to a leading 1.
// With `reduce_above` the result is the RREF. Stops early when fewer columns
// than still-missing pivots remain and `stop_when_short` is set.
std::size_t eliminate(Matrix& m, bool reduce_above, std::vector<std::size_t>* pivots, bool stop_when_short) {
  const Field& f = *m.field();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    if (stop_when_short && m.cols() - col < m.rows() - pivot_row) break;
    std::size_t p = pivot_row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, pivot_row);
    const Elem lead = m(pivot_row, col);
    if (lead != 1) m.scale_row(pivot_row, f.inv(lead));
    for (std::size_t r = reduce_above ? 0 : pivot_row + 1; r < m.rows(); ++r) {
      if (r == pivot_row) continue;
      const Elem v = m(r, col);
      if (v != 0) m.add_scaled_row(r, pivot_row, f.neg(v));
    }
    if (pivots) pivots->push_back(col);
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace

std::size_t rank_in_place(Matrix& m) { return eliminate(m, false, nullptr, false); }

std::size_t rank_generic(const Matrix& m) {
  Matrix work = m;
  return rank_in_place(work);
}

std::size_t rank(const Matrix& m) {
  if (m.field()->order() == 2) return rank(BitMatrix::from_matrix(m));
  return rank_generic(m);
}

bool is_full_row_rank(const Matrix& m) {
  if (m.rows() > m.cols()) return false;
  if (m.field()->order() == 2) return is_full_row_rank(BitMatrix::from_matrix(m));
  Matrix work = m;
  return eliminate(work, false, nullptr, true) == m.rows();
}

RrefResult rref(const Matrix& m) {
  RrefResult out{m, 0, {}};
  out.rank = eliminate(out.rref, true, &out.pivots, false);
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw UsageError("matmul shape mismatch");
  if (!(*a.field() == *b.field())) throw UsageError("matmul field mismatch");
  const Field& f = *a.field();
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik == 0) continue;
      auto dst = out.row(i);
      const auto src = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (src[j] != 0) dst[j] = static_cast<std::uint16_t>(f.add(dst[j], f.mul(aik, src[j])));
      }
    }
  }
  return out;
}

std::optional<Matrix> invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw UsageError("invert needs a square matrix");
  const std::size_t n = m.rows();
  Matrix aug = m.hconcat(Matrix::identity(m.field(), n));
  const Field& f = *m.field();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && aug(p, col) == 0) ++p;
    if (p == n) return std::nullopt;
    aug.swap_rows(p, col);
    const Elem lead = aug(col, col);
    if (lead != 1) aug.scale_row(col, f.inv(lead));
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Elem v = aug(r, col);
      if (v != 0) aug.add_scaled_row(r, col, f.neg(v));
    }
  }
  std::vector<std::size_t> right(n);
  for (std::size_t j = 0; j < n; ++j) right[j] = n + j;
  return aug.select_columns(right);
}

}  // namespace srlnc
