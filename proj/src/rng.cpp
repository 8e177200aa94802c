#include "srlnc/rng.hpp"

#include <cmath>

namespace srlnc {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

constexpr std::uint64_t kTwo53 = std::uint64_t{1} << 53;

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void RngStream::refill() noexcept {
  buffer_ = philox4x32_10({static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                           static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                          {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  ++counter_;
  index_ = 0;
}

std::uint32_t RngStream::uniform_below(std::uint32_t bound) noexcept {
  // Lemire's multiply-shift with rejection of the biased low range.
  std::uint64_t m = static_cast<std::uint64_t>(next_u32()) * bound;
  auto low = static_cast<std::uint32_t>(m);
  if (low < bound) {
    const std::uint32_t floor = static_cast<std::uint32_t>(-bound) % bound;
    while (low < floor) {
      m = static_cast<std::uint64_t>(next_u32()) * bound;
      low = static_cast<std::uint32_t>(m);
    }
  }
  return static_cast<std::uint32_t>(m >> 32);
}

std::uint64_t RngStream::bernoulli_mask(std::uint64_t threshold) noexcept {
  if (threshold == 0) return 0;
  if (threshold >= kTwo53) return ~std::uint64_t{0};
  // Compare 64 lanes of U53 against T bit by bit from the most significant
  // bit; a lane is decided at the first bit where it differs from T.
  std::uint64_t result = 0;
  std::uint64_t undecided = ~std::uint64_t{0};
  for (int b = 52; b >= 0 && undecided; --b) {
    const std::uint64_t w = next_u64();
    if ((threshold >> b) & 1U) {
      result |= undecided & ~w;
      undecided &= w;
    } else {
      undecided &= ~w;
    }
    // Undecided lanes equal T on bits >= b; with T's lower bits all zero they cannot end below T.
    if ((threshold & ((std::uint64_t{1} << b) - 1)) == 0) break;
  }
  return result;
}

RngStream RngStream::split(std::uint64_t index) noexcept {
  const std::uint64_t child = mix64(mix64(stream_ ^ 0x5851F42D4C957F2DULL) ^ mix64(counter_) ^ mix64(index + 0x2545F4914F6CDD1DULL));
  ++counter_;
  index_ = 4;
  return RngStream(seed_, child, 0);
}

std::uint64_t probability_threshold(double p) noexcept {
  if (!(p > 0.0)) return 0;
  if (p >= 1.0) return kTwo53;
  return static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 53)));
}

}  // namespace srlnc
