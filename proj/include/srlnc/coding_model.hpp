#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "srlnc/field.hpp"
#include "srlnc/matrix.hpp"
#include "srlnc/rng.hpp"

namespace srlnc {

/// Sparse coefficient law over F_q: zero with probability p0, each nonzero
/// element with probability (1 - p0) / (q - 1). p0 = 1/q is uniform RLNC.
class CoefficientModel {
 public:
  /// Throws DomainError unless 0 <= p0 <= 1.
  CoefficientModel(FieldPtr field, double p0);

  /// Uniform model, p0 = 1/q.
  static CoefficientModel uniform(FieldPtr field);

  const FieldPtr& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_->order(); }
  double p0() const noexcept { return p0_; }
  /// Integer threshold on a 53-bit uniform draw for the zero event.
  std::uint64_t zero_threshold() const noexcept { return zero_threshold_; }

  /// Pr{g = t}.
  double probability(Elem t) const noexcept;

 private:
  FieldPtr field_;
  double p0_;
  std::uint64_t zero_threshold_;
};

/// One coefficient: a 53-bit draw decides zero; otherwise a uniform draw in [1, q-1].
Elem sample_coefficient(const CoefficientModel& model, RngStream& rng) noexcept;

/// rows x cols matrix, row-major, exactly rows*cols calls to sample_coefficient.
/// All-zero columns are kept.
Matrix sample_matrix(const CoefficientModel& model, std::size_t rows, std::size_t cols, RngStream& rng);

/// Indices of the N packets that survive an erasure channel with rate epsilon,
/// in increasing order. Throws DomainError unless 0 <= epsilon <= 1.
std::vector<std::size_t> apply_erasures(std::size_t N, double epsilon, RngStream& rng);

/// Bulk sampler for the Monte Carlo hot loops. Produces the same coefficient
/// law as sample_coefficient but draws zero flags 64 at a time through
/// RngStream::bernoulli_mask, so it consumes the stream differently.
class CoefficientSampler {
 public:
  CoefficientSampler(const CoefficientModel& model, RngStream& rng) noexcept;

  /// `count` (<= 64) fresh lanes; bit i set iff coefficient i is zero.
  std::uint64_t zero_flags(unsigned count) noexcept;
  /// Uniform nonzero element in [1, q-1].
  Elem nonzero() noexcept;
  /// Fills `out` with i.i.d. coefficients.
  void fill(std::span<std::uint16_t> out) noexcept;
  void fill(std::span<std::uint8_t> out) noexcept;
  /// GF(2) only: `nbits` i.i.d. coefficients packed into words (bit set = 1).
  void fill_bits(std::span<std::uint64_t> words, std::size_t nbits) noexcept;

  RngStream& rng() noexcept { return rng_; }

 private:
  std::uint64_t next_mask() noexcept;

  std::uint32_t q_;
  std::uint64_t threshold_;
  RngStream& rng_;
  std::uint64_t pool_ = 0;
  unsigned pool_bits_ = 0;
  std::uint64_t bytes_ = 0;
  unsigned bytes_left_ = 0;
};

}  // namespace srlnc
