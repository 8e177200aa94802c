#include "srlnc/rational.hpp"

#include <cctype>
#include <cmath>

#include "srlnc/errors.hpp"

namespace srlnc {

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(scaled);
  const int shift = exp - 53;
  if (shift >= 0) {
    r *= BigInt(1) << shift;
  } else {
    r /= BigInt(1) << (-shift);
  }
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

BigInt parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) throw UsageError("malformed probability '" + std::string(whole) + "'");
  BigInt v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw UsageError("malformed probability '" + std::string(whole) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Rational parse_probability(std::string_view text, std::uint32_t q) {
  if (text == "1/q") return Rational(1, q);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_digits(text.substr(0, slash), text);
    const BigInt den = parse_digits(text.substr(slash + 1), text);
    if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  std::string_view mantissa = text;
  long long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    auto ex = text.substr(e + 1);
    bool negative = false;
    if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
      negative = ex.front() == '-';
      ex.remove_prefix(1);
    }
    if (ex.size() > 4) throw UsageError("exponent too large in '" + std::string(text) + "'");
    exponent = parse_digits(ex, text).convert_to<long long>();
    if (negative) exponent = -exponent;
  }
  std::string digits;
  long long frac_len = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    frac_len = static_cast<long long>(mantissa.size() - dot - 1);
    if (digits.empty()) throw UsageError("malformed probability '" + std::string(text) + "'");
  } else {
    digits = std::string(mantissa);
  }
  Rational r(parse_digits(digits, text));
  const long long scale = exponent - frac_len;
  const BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
  if (scale >= 0) {
    r *= ten_pow;
  } else {
    r /= ten_pow;
  }
  return r;
}

Rational rational_pow(const Rational& r, unsigned k) {
  return Rational(boost::multiprecision::pow(numerator(r), k), boost::multiprecision::pow(denominator(r), k));
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace srlnc
