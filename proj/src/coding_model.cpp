#include "srlnc/coding_model.hpp"

#include <algorithm>
#include <string>

#include "srlnc/errors.hpp"

namespace srlnc {

CoefficientModel::CoefficientModel(FieldPtr field, double p0)
    : field_(std::move(field)), p0_(p0), zero_threshold_(probability_threshold(p0)) {
  if (!field_) throw UsageError("coefficient model without a field");
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("p0 must lie in [0,1], got " + std::to_string(p0));
}

CoefficientModel CoefficientModel::uniform(FieldPtr field) {
  const double p0 = 1.0 / field->order();
  return {std::move(field), p0};
}

double CoefficientModel::probability(Elem t) const noexcept {
  if (t >= q()) return 0.0;
  return t == 0 ? p0_ : (1.0 - p0_) / (q() - 1);
}

Elem sample_coefficient(const CoefficientModel& model, RngStream& rng) noexcept {
  if (rng.next_u53() < model.zero_threshold()) return 0;
  const std::uint32_t q = model.q();
  return q == 2 ? 1 : 1 + rng.uniform_below(q - 1);
}

Matrix sample_matrix(const CoefficientModel& model, std::size_t rows, std::size_t cols, RngStream& rng) {
  Matrix m(model.field(), rows, cols);
  for (auto& v : m.data()) v = static_cast<std::uint16_t>(sample_coefficient(model, rng));
  return m;
}

std::vector<std::size_t> apply_erasures(std::size_t N, double epsilon, RngStream& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("erasure rate must lie in [0,1], got " + std::to_string(epsilon));
  const std::uint64_t threshold = probability_threshold(epsilon);
  std::vector<std::size_t> kept;
  kept.reserve(N);
  for (std::size_t base = 0; base < N; base += 64) {
    const std::uint64_t erased = rng.bernoulli_mask(threshold);
    const std::size_t lanes = std::min<std::size_t>(64, N - base);
    for (std::size_t i = 0; i < lanes; ++i) {
      if (!((erased >> i) & 1U)) kept.push_back(base + i);
    }
  }
  return kept;
}

CoefficientSampler::CoefficientSampler(const CoefficientModel& model, RngStream& rng) noexcept
    : q_(model.q()), threshold_(model.zero_threshold()), rng_(rng) {}

std::uint64_t CoefficientSampler::next_mask() noexcept { return rng_.bernoulli_mask(threshold_); }

std::uint64_t CoefficientSampler::zero_flags(unsigned count) noexcept {
  if (count == 0) return 0;
  auto low_bits = [](unsigned k) { return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1; };
  if (pool_bits_ >= count) {
    const std::uint64_t out = pool_ & low_bits(count);
    pool_ = count >= 64 ? 0 : pool_ >> count;
    pool_bits_ -= count;
    return out;
  }
  const unsigned have = pool_bits_;
  std::uint64_t out = pool_ & low_bits(have);
  const unsigned need = count - have;
  const std::uint64_t fresh = next_mask();
  out |= (fresh & low_bits(need)) << have;
  pool_ = need >= 64 ? 0 : fresh >> need;
  pool_bits_ = 64 - need;
  return out;
}

Elem CoefficientSampler::nonzero() noexcept {
  if (q_ == 2) return 1;
  if (q_ == 256) {
    for (;;) {
      if (bytes_left_ == 0) {
        bytes_ = rng_.next_u64();
        bytes_left_ = 8;
      }
      const auto b = static_cast<Elem>(bytes_ & 0xFF);
      bytes_ >>= 8;
      --bytes_left_;
      if (b != 0) return b;
    }
  }
  return 1 + rng_.uniform_below(q_ - 1);
}

void CoefficientSampler::fill(std::span<std::uint16_t> out) noexcept {
  for (std::size_t base = 0; base < out.size(); base += 64) {
    const auto lanes = static_cast<unsigned>(std::min<std::size_t>(64, out.size() - base));
    const std::uint64_t zeros = zero_flags(lanes);
    for (unsigned i = 0; i < lanes; ++i) out[base + i] = ((zeros >> i) & 1U) ? 0 : static_cast<std::uint16_t>(nonzero());
  }
}

void CoefficientSampler::fill(std::span<std::uint8_t> out) noexcept {
  for (std::size_t base = 0; base < out.size(); base += 64) {
    const auto lanes = static_cast<unsigned>(std::min<std::size_t>(64, out.size() - base));
    const std::uint64_t zeros = zero_flags(lanes);
    for (unsigned i = 0; i < lanes; ++i) out[base + i] = ((zeros >> i) & 1U) ? 0 : static_cast<std::uint8_t>(nonzero());
  }
}

void CoefficientSampler::fill_bits(std::span<std::uint64_t> words, std::size_t nbits) noexcept {
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::size_t lanes = nbits > w * 64 ? std::min<std::size_t>(64, nbits - w * 64) : 0;
    words[w] = ~zero_flags(static_cast<unsigned>(lanes)) & (lanes >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1);
  }
}

}  // namespace srlnc
