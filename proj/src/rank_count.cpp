#include <algorithm>
#include <string>

#include "srlnc/analytic.hpp"
#include "srlnc/errors.hpp"

namespace srlnc {

namespace {

// [k]_q! = prod_{j=1}^{k} (q^j - 1) / (q - 1)
BigInt q_factorial(unsigned k, std::uint32_t q) {
  BigInt result = 1;
  BigInt q_pow = 1;
  for (unsigned j = 1; j <= k; ++j) {
    q_pow *= q;
    result *= (q_pow - 1) / (q - 1);
  }
  return result;
}

}  // namespace

BigInt gaussian_binomial(unsigned m, unsigned r, std::uint32_t q) {
  if (q < 2) throw DomainError("field order must be at least 2");
  if (r > m) return 0;
  return q_factorial(m, q) / (q_factorial(r, q) * q_factorial(m - r, q));
}

BigInt rank_count(unsigned n, unsigned m, std::uint32_t q, unsigned r) {
  if (r > std::min(n, m)) {
    throw DomainError("rank " + std::to_string(r) + " out of range for a " + std::to_string(n) + "x" + std::to_string(m) +
                      " matrix");
  }
  const BigInt qb = q;
  BigInt sum = 0;
  for (unsigned k = 0; k <= r; ++k) {
    const unsigned d = r - k;
    const auto exponent = static_cast<unsigned>(static_cast<unsigned long long>(n) * k + d * (d > 0 ? d - 1 : 0) / 2);
    BigInt term = gaussian_binomial(r, k, q) * boost::multiprecision::pow(qb, exponent);
    if (d % 2 == 1) term = -term;
    sum += term;
  }
  return gaussian_binomial(m, r, q) * sum;
}

}  // namespace srlnc
