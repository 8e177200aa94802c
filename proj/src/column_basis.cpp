#include "srlnc/column_basis.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "srlnc/errors.hpp"

#if defined(__SSSE3__)
#include <tmmintrin.h>
#define SRLNC_GF256_SSSE3 1
#endif

namespace srlnc {

Gf2Basis::Gf2Basis(std::size_t n)
    : n_(n), words_((n + 63) / 64), rows_(n * words_, 0), present_(n, 0) {
  if (n == 0) throw UsageError("basis dimension must be positive");
}

void Gf2Basis::clear() noexcept {
  std::fill(present_.begin(), present_.end(), 0);
  rank_ = 0;
}

bool Gf2Basis::insert(std::span<std::uint64_t> v) noexcept {
  std::size_t w = 0;
  if (words_ == 1) {
    std::uint64_t x = v[0];
    while (x != 0) {
      const auto p = static_cast<std::size_t>(std::countr_zero(x));
      if (!present_[p]) {
        rows_[p] = x;
        present_[p] = 1;
        ++rank_;
        v[0] = x;
        return true;
      }
      x ^= rows_[p];
    }
    v[0] = 0;
    return false;
  }
  for (;;) {
    while (w < words_ && v[w] == 0) ++w;
    if (w == words_) return false;
    const std::size_t p = w * 64 + static_cast<std::size_t>(std::countr_zero(v[w]));
    std::uint64_t* slot = rows_.data() + p * words_;
    if (!present_[p]) {
      std::copy(v.begin(), v.end(), slot);
      present_[p] = 1;
      ++rank_;
      return true;
    }
    // Slot p is zero below word w.
    for (std::size_t k = w; k < words_; ++k) v[k] ^= slot[k];
  }
}

namespace {

#if SRLNC_GF256_SSSE3
// dst[0..len) ^= c * src[0..len), len a multiple of 16, via split-nibble tables.
inline void muladd_ssse3(std::uint8_t* dst, const std::uint8_t* src, const std::uint8_t* tables, std::size_t len) noexcept {
  const __m128i lo_table = _mm_loadu_si128(reinterpret_cast<const __m128i*>(tables));
  const __m128i hi_table = _mm_loadu_si128(reinterpret_cast<const __m128i*>(tables + 16));
  const __m128i mask = _mm_set1_epi8(0x0f);
  for (std::size_t i = 0; i < len; i += 16) {
    const __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    const __m128i lo = _mm_shuffle_epi8(lo_table, _mm_and_si128(s, mask));
    const __m128i hi = _mm_shuffle_epi8(hi_table, _mm_and_si128(_mm_srli_epi64(s, 4), mask));
    __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    d = _mm_xor_si128(d, _mm_xor_si128(lo, hi));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), d);
  }
}
#endif

}  // namespace

Gf256Basis::Gf256Basis(FieldPtr field, std::size_t n)
    : field_(std::move(field)), n_(n), stride_((n + 15) / 16 * 16) {
  if (!field_ || field_->order() != 256) throw UsageError("Gf256Basis needs GF(256)");
  if (n == 0) throw UsageError("basis dimension must be positive");
  rows_.assign(n_ * stride_, 0);
  present_.assign(n_, 0);
  scratch_.assign(stride_, 0);
  nibble_tables_.resize(256 * 32);
  for (Elem c = 0; c < 256; ++c) {
    const std::uint8_t* row = field_->gf256_row(c);
    for (Elem x = 0; x < 16; ++x) {
      nibble_tables_[c * 32 + x] = row[x];
      nibble_tables_[c * 32 + 16 + x] = row[x << 4];
    }
  }
}

void Gf256Basis::clear() noexcept {
  std::fill(present_.begin(), present_.end(), 0);
  rank_ = 0;
}

bool Gf256Basis::simd_enabled() noexcept {
#if SRLNC_GF256_SSSE3
  return true;
#else
  return false;
#endif
}

bool Gf256Basis::insert(std::span<std::uint8_t> v) noexcept {
  std::uint8_t* x = scratch_.data();
  std::memcpy(x, v.data(), n_);
  for (std::size_t p = 0; p < n_; ++p) {
    const std::uint8_t c = x[p];
    if (c == 0) continue;
    std::uint8_t* slot = rows_.data() + p * stride_;
    if (!present_[p]) {
      // Normalize so the pivot is 1; coordinates below p are already zero.
      const std::uint8_t* scale = field_->gf256_row(field_->inv(c));
      std::memset(slot, 0, stride_);
      for (std::size_t k = p; k < n_; ++k) slot[k] = scale[x[k]];
      present_[p] = 1;
      ++rank_;
      std::memcpy(v.data(), x, n_);
      return true;
    }
#if SRLNC_GF256_SSSE3
    const std::size_t start = p / 16 * 16;
    muladd_ssse3(x + start, slot + start, nibble_tables_.data() + c * 32, stride_ - start);
#else
    const std::uint8_t* mul = field_->gf256_row(c);
    for (std::size_t k = p; k < n_; ++k) x[k] ^= mul[slot[k]];
#endif
  }
  std::memcpy(v.data(), x, n_);
  return false;
}

GenericBasis::GenericBasis(FieldPtr field, std::size_t n)
    : field_(std::move(field)), n_(n), rows_(n * n, 0), present_(n, 0) {
  if (!field_) throw UsageError("basis without a field");
  if (n == 0) throw UsageError("basis dimension must be positive");
}

void GenericBasis::clear() noexcept {
  std::fill(present_.begin(), present_.end(), 0);
  rank_ = 0;
}

bool GenericBasis::insert(std::span<Elem> v) {
  const Field& f = *field_;
  for (std::size_t p = 0; p < n_; ++p) {
    const Elem c = v[p];
    if (c == 0) continue;
    Elem* slot = rows_.data() + p * n_;
    if (!present_[p]) {
      const Elem scale = f.inv(c);
      std::fill(slot, slot + p, 0);
      for (std::size_t k = p; k < n_; ++k) slot[k] = f.mul(scale, v[k]);
      present_[p] = 1;
      ++rank_;
      return true;
    }
    const Elem factor = f.neg(c);
    for (std::size_t k = p; k < n_; ++k) v[k] = f.add(v[k], f.mul(factor, slot[k]));
  }
  return false;
}

}  // namespace srlnc
