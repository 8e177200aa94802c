#pragma once

#include <array>
#include <cstdint>

namespace srlnc {

/// Philox4x32-10 block function: maps a 128-bit counter and 64-bit key to 128
/// random bits. Matches the Random123 reference outputs.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic counter-based random stream.
///
/// The draw sequence is a pure function of (seed, stream, counter): the seed is
/// the Philox key, and the 128-bit Philox counter holds the block counter in the
/// low half and the stream index in the high half. Distinct stream indices give
/// disjoint counter ranges. A stream is single-owner; parallel work derives one
/// stream per chunk.
class RngStream {
 public:
  static constexpr std::uint64_t kDefaultSeed = 0xC0DEC0DE;

  explicit RngStream(std::uint64_t seed = kDefaultSeed, std::uint64_t stream = 0, std::uint64_t counter = 0) noexcept
      : seed_(seed), stream_(stream), counter_(counter) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  /// Index of the next Philox block to be generated.
  std::uint64_t counter() const noexcept { return counter_; }
  /// Number of 32-bit words handed out so far (block granularity plus buffer offset).
  std::uint64_t words_consumed() const noexcept { return counter_ * 4 - (4 - index_); }

  std::uint32_t next_u32() noexcept {
    if (index_ == 4) refill();
    return buffer_[index_++];
  }
  std::uint64_t next_u64() noexcept {
    const std::uint64_t lo = next_u32();
    return lo | (static_cast<std::uint64_t>(next_u32()) << 32);
  }
  /// Uniform 53-bit integer in [0, 2^53).
  std::uint64_t next_u53() noexcept { return next_u64() >> 11; }
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next_u53()) * 0x1.0p-53; }
  /// Unbiased uniform integer in [0, bound); bound >= 1.
  std::uint32_t uniform_below(std::uint32_t bound) noexcept;
  /// 64 independent lanes; lane bit set iff that lane's uniform 53-bit draw is
  /// below `threshold` (see probability_threshold). Consumes a variable number
  /// of words, about 8 on average.
  std::uint64_t bernoulli_mask(std::uint64_t threshold) noexcept;

  /// Child stream derived from this stream's identity and current position.
  /// Advances this stream by one block so repeated splits differ.
  RngStream split(std::uint64_t index) noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned index_ = 4;
};

/// Maps a probability p to the integer threshold T with Pr{U53 < T} = T / 2^53,
/// T = ceil(p * 2^53), clamped to [0, 2^53]. p <= 0 never fires, p >= 1 always fires.
std::uint64_t probability_threshold(double p) noexcept;

}  // namespace srlnc
