#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace srlnc {

/// Signed real stored as sign and natural-log magnitude, for quantities that
/// under- or overflow a double (binomial weights, n_k = C(n,k)(q-1)^k, high powers).
class LogProb {
 public:
  constexpr LogProb() noexcept = default;

  static LogProb from_linear(double x) noexcept {
    if (x == 0.0) return {};
    return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
  }
  /// +exp(log_magnitude).
  static LogProb from_log(double log_magnitude) noexcept {
    if (log_magnitude == -std::numeric_limits<double>::infinity()) return {};
    return {1, log_magnitude};
  }
  static LogProb zero() noexcept { return {}; }
  static LogProb one() noexcept { return {1, 0.0}; }

  int sign() const noexcept { return sign_; }
  /// -inf for zero.
  double log_magnitude() const noexcept { return sign_ == 0 ? -std::numeric_limits<double>::infinity() : log_mag_; }
  bool is_zero() const noexcept { return sign_ == 0; }

  double to_linear() const noexcept { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_mag_); }

  LogProb operator*(const LogProb& rhs) const noexcept {
    if (sign_ == 0 || rhs.sign_ == 0) return {};
    return {sign_ * rhs.sign_, log_mag_ + rhs.log_mag_};
  }
  LogProb operator/(const LogProb& rhs) const noexcept {
    if (sign_ == 0) return {};
    return {sign_ * rhs.sign_, log_mag_ - rhs.log_mag_};
  }
  LogProb operator-() const noexcept { return {-sign_, log_mag_}; }
  /// Signed sum via log-sum-exp.
  LogProb operator+(const LogProb& rhs) const noexcept;
  LogProb operator-(const LogProb& rhs) const noexcept { return *this + (-rhs); }

  /// x^k for integer k >= 0, with 0^0 = 1.
  LogProb pow(unsigned long long k) const noexcept;

 private:
  constexpr LogProb(int sign, double log_mag) noexcept : sign_(sign), log_mag_(log_mag) {}

  int sign_ = 0;
  double log_mag_ = 0.0;
};

/// Signed sum of many terms: shifts by the largest magnitude and accumulates
/// the scaled linear values with Neumaier compensated summation.
LogProb log_sum(std::span<const LogProb> terms) noexcept;

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace srlnc
