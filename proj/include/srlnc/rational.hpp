#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace srlnc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double (every double is a dyadic rational).
Rational exact_rational(double x);

/// Nearest double (via the multiprecision conversion).
double to_double(const Rational& r);

/// Parses "0.9", "9/10", "1e-3", or "1/q" (with the given q). Decimal text is
/// read exactly, so "0.9" becomes 9/10 rather than the nearest double.
/// Throws UsageError on malformed input.
Rational parse_probability(std::string_view text, std::uint32_t q);

/// r^k; 0^0 = 1.
Rational rational_pow(const Rational& r, unsigned k);

std::string to_string(const Rational& r);

}  // namespace srlnc
