#include "srlnc/log_prob.hpp"

#include <algorithm>

namespace srlnc {

LogProb LogProb::operator+(const LogProb& rhs) const noexcept {
  const LogProb terms[2] = {*this, rhs};
  return log_sum(terms);
}

LogProb LogProb::pow(unsigned long long k) const noexcept {
  if (k == 0) return one();
  if (sign_ == 0) return {};
  const int s = (sign_ < 0 && (k & 1ULL)) ? -1 : 1;
  return {s, log_mag_ * static_cast<double>(k)};
}

LogProb log_sum(std::span<const LogProb> terms) noexcept {
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (!t.is_zero()) peak = std::max(peak, t.log_magnitude());
  }
  if (peak == -std::numeric_limits<double>::infinity()) return LogProb::zero();
  CompensatedSum acc;
  for (const auto& t : terms) {
    if (!t.is_zero()) acc.add(t.sign() * std::exp(t.log_magnitude() - peak));
  }
  const double scaled = acc.value();
  if (scaled == 0.0) return LogProb::zero();
  LogProb out = LogProb::from_log(peak + std::log(std::fabs(scaled)));
  return scaled < 0 ? -out : out;
}

}  // namespace srlnc
