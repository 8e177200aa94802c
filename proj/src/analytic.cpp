#include "srlnc/analytic.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <string>

#include "srlnc/errors.hpp"
#include "srlnc/log_prob.hpp"

namespace srlnc {

namespace {

constexpr double kClampSlack = 1e-9;

void require_p0(double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("p0 must lie in [0,1], got " + std::to_string(p0));
}

void require_q(std::uint32_t q) {
  if (q < 2) throw DomainError("field order must be at least 2");
}

// 1 - q(1-p0)/(q-1): the ratio by which a sum's distance from uniform shrinks per term.
double contraction(double p0, double q) { return 1.0 - q * (1.0 - p0) / (q - 1.0); }

// Nonnegative quantity that may come out as -tiny from cancellation.
double clamp_nonnegative(double x, std::string_view what) {
  if (x >= 0.0) return x;
  if (x > -kClampSlack) return 0.0;
  throw NumericalIntegrityError(std::string(what) + " evaluated to " + std::to_string(x));
}

// log C(n, k) for k = 0..n by the multiplicative recurrence.
std::vector<double> log_binomial_row(int n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k < n; ++k) row[k + 1] = row[k] + std::log(static_cast<double>(n - k)) - std::log(static_cast<double>(k + 1));
  return row;
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::proposed: return "proposed";
    case Method::brown: return "brown";
    case Method::chen: return "chen";
    case Method::sehat: return "sehat";
    case Method::uniform_exact: return "uniform-exact";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  if (name == "uniform") return Method::uniform_exact;
  return std::nullopt;
}

double checked_probability(double x, std::string_view what) {
  if (x >= 0.0 && x <= 1.0) return x;
  if (x < 0.0 && x >= -kClampSlack) return 0.0;
  if (x > 1.0 && x <= 1.0 + kClampSlack) return 1.0;
  throw NumericalIntegrityError(std::string(what) + " left [0,1]: " + std::to_string(x));
}

double beta(unsigned k, double p0, std::uint32_t q, bool t_is_zero) {
  require_p0(p0);
  require_q(q);
  const double qd = q;
  const double rk = std::pow(contraction(p0, qd), static_cast<double>(k));
  return t_is_zero ? (1.0 + (qd - 1.0) * rk) / qd : (1.0 - rk) / qd;
}

Rational beta_exact(unsigned k, const Rational& p0, std::uint32_t q, bool t_is_zero) {
  if (p0 < 0 || p0 > 1) throw DomainError("p0 must lie in [0,1]");
  require_q(q);
  const Rational qr(q);
  const Rational rk = rational_pow(1 - qr * (1 - p0) / (qr - 1), k);
  if (t_is_zero) return Rational((1 + (qr - 1) * rk) / qr);
  return Rational((1 - rk) / qr);
}

double p_delta(unsigned k, double p0, std::uint32_t q) { return beta(k, p0, q, true); }

double p_dependent(int i, int n, double p0, std::uint32_t q) {
  if (i < 0 || i >= n) throw DomainError("p_dependent needs 0 <= i < n, got i=" + std::to_string(i) + ", n=" + std::to_string(n));
  require_p0(p0);
  require_q(q);
  const double qd = q;
  const LogProb log_p0 = LogProb::from_linear(p0);
  const LogProb log_nz = LogProb::from_linear(1.0 - p0);
  const auto log_binom = log_binomial_row(i);

  // The first i coordinates of a dependent row carry k nonzero coefficients;
  // conditioned on k, each of the remaining n-i coordinates matches its forced
  // value independently with probability `base`.
  std::vector<LogProb> terms;
  terms.reserve(static_cast<std::size_t>(i) + 1);
  for (int k = 0; k <= i; ++k) {
    const LogProb weight = LogProb::from_log(log_binom[k]) * log_nz.pow(k) * log_p0.pow(i - k);
    if (weight.is_zero()) continue;
    const double pd = p_delta(static_cast<unsigned>(k), p0, q);
    const double x = 1.0 - qd * (1.0 - p0) * (1.0 - pd) / (qd - 1.0);
    const double xi = std::pow(x, static_cast<double>(i));
    const double base = clamp_nonnegative(1.0 / qd + (p0 - 1.0 / qd) * xi, "p_dependent inner base");
    terms.push_back(weight * LogProb::from_linear(base).pow(static_cast<unsigned long long>(n - i)));
  }
  return checked_probability(log_sum(terms).to_linear(), "p_dependent");
}

double p_full_rank_proposed(int n, int m, double p0, std::uint32_t q) {
  if (n < 1) throw DomainError("n must be at least 1");
  require_p0(p0);
  if (m < n) return 0.0;
  double prod = 1.0;
  for (int i = 0; i < n && prod != 0.0; ++i) prod *= 1.0 - p_dependent(i, m, p0, q);
  return checked_probability(prod, "proposed P(n,m)");
}

namespace {

// The alternating recursion cancels by tens of orders of magnitude once
// C(l-1, s) is large and rho is close to 1, so it runs in 50 decimal digits.
using Wide = boost::multiprecision::cpp_bin_float_50;

std::vector<Wide> brown_pi_wide(int n, int m, double p0, std::uint32_t q) {
  const Wide qw(q);
  const Wide r = 1 - qw * (1 - Wide(p0)) / (qw - 1);
  std::vector<Wide> rho(static_cast<std::size_t>(n) + 1);
  Wide r_pow = 1;
  for (int l = 1; l <= n; ++l) {
    r_pow *= r;
    rho[l] = boost::multiprecision::pow(Wide((1 + (qw - 1) * r_pow) / qw), m);
  }
  std::vector<Wide> pi(static_cast<std::size_t>(n) + 1);
  for (int l = 1; l <= n; ++l) {
    Wide acc = rho[l];
    Wide binom = 1;  // C(l-1, s)
    for (int s = 1; s <= l - 1; ++s) {
      binom = binom * (l - s) / s;
      acc -= binom * rho[s] * pi[l - s];
    }
    pi[l] = acc;
  }
  return pi;
}

}  // namespace

std::vector<double> brown_pi(int n, int m, double p0, std::uint32_t q) {
  const auto wide = brown_pi_wide(n, m, p0, q);
  std::vector<double> pi(wide.size(), 0.0);
  for (std::size_t l = 1; l < wide.size(); ++l) pi[l] = static_cast<double>(wide[l]);
  return pi;
}

double p_full_rank_brown(int n, int m, double p0, std::uint32_t q) {
  if (n < 1 || m < 1) throw DomainError("brown approximation needs n >= 1 and m >= 1");
  require_p0(p0);
  require_q(q);
  if (m < n) return 0.0;
  const Wide a = 1 - boost::multiprecision::pow(Wide(p0), m);
  if (a <= 0) return 0.0;
  const auto pi = brown_pi_wide(n, m, p0, q);
  Wide exponent = 0;
  Wide binom = n;  // C(n, l)
  Wide a_pow = a;
  for (int l = 2; l <= n; ++l) {
    binom = binom * (n - l + 1) / l;
    a_pow *= a;
    exponent += binom * pi[l] / a_pow;
  }
  const Wide value = boost::multiprecision::exp(n * boost::multiprecision::log(a) - exponent);
  return checked_probability(static_cast<double>(value), "brown P(n,m)");
}

std::vector<Rational> brown_pi_exact(int n, int m, const Rational& p0, std::uint32_t q) {
  if (n < 1 || n > 32) throw UsageError("exact Brown recursion supports 1 <= n <= 32");
  if (m < 1) throw DomainError("m must be at least 1");
  const Rational qr(q);
  const Rational r = 1 - qr * (1 - p0) / (qr - 1);
  std::vector<Rational> rho(static_cast<std::size_t>(n) + 1);
  Rational r_pow = 1;
  for (int l = 1; l <= n; ++l) {
    r_pow *= r;
    rho[l] = rational_pow((1 + (qr - 1) * r_pow) / qr, static_cast<unsigned>(m));
  }
  std::vector<Rational> pi(static_cast<std::size_t>(n) + 1);
  for (int l = 1; l <= n; ++l) {
    Rational acc = rho[l];
    BigInt binom = 1;  // C(l-1, s)
    for (int s = 1; s <= l - 1; ++s) {
      binom = binom * (l - s) / s;
      acc -= Rational(binom) * rho[s] * pi[l - s];
    }
    pi[l] = acc;
  }
  return pi;
}

double p_full_rank_brown_exact(int n, int m, const Rational& p0, std::uint32_t q) {
  if (m < n) return 0.0;
  const Rational a = 1 - rational_pow(p0, static_cast<unsigned>(m));
  if (a <= 0) return 0.0;
  const auto pi = brown_pi_exact(n, m, p0, q);
  Rational exponent = 0;
  BigInt binom = 1;  // C(n, l)
  Rational a_pow = 1;
  for (int l = 1; l <= n; ++l) {
    binom = binom * (n - l + 1) / l;
    a_pow *= a;
    if (l >= 2) exponent += Rational(binom) * pi[l] / a_pow;
  }
  return checked_probability(std::exp(n * std::log(to_double(a)) - to_double(exponent)), "brown P(n,m) (exact)");
}

double p_full_rank_chen(int n, int m, double p0, std::uint32_t q) {
  if (n < 1) throw DomainError("n must be at least 1");
  require_p0(p0);
  require_q(q);
  if (m < n) return 0.0;
  const double qd = q;
  const double p_a = (1.0 + (qd - 1.0) * std::pow(1.0 - qd * (1.0 - p0) * (1.0 - p0) / (qd - 1.0), n)) / qd;
  const double s = 1.0 / qd + (p0 - 1.0 / qd) * std::pow(1.0 - qd * (1.0 - p0) * (1.0 - p_a) / (qd - 1.0), n);
  double prod = std::pow(1.0 - std::pow(p0, static_cast<double>(m)), n);
  for (int i = 0; i < n && prod != 0.0; ++i) prod *= 1.0 - std::pow(s, static_cast<double>(m - i));
  return checked_probability(prod, "chen P(n,m)");
}

double p_full_rank_sehat(int n, int m, double p0, std::uint32_t q) {
  if (n < 1) throw DomainError("n must be at least 1");
  require_p0(p0);
  require_q(q);
  if (m < n) return 0.0;
  const double qd = q;
  const double r = contraction(p0, qd);
  const auto log_binom = log_binomial_row(n);
  const double log_q1 = std::log(qd - 1.0);
  // sum_k n_k log(1 - b_k), each term as -exp(log n_k + log(-log1p(-b_k))).
  CompensatedSum total;
  for (int k = 1; k <= n; ++k) {
    const double inner = clamp_nonnegative((qd - 1.0) / qd * std::pow(r, k) + 1.0 / qd, "sehat inner base");
    const double b = std::pow(inner, static_cast<double>(m));
    if (b >= 1.0) return 0.0;
    const double l1p = std::log1p(-b);
    if (l1p == 0.0) continue;
    total.add(-std::exp(log_binom[k] + k * log_q1 + std::log(-l1p)));
  }
  return checked_probability(std::exp(total.value()), "sehat P(n,m)");
}

double p_full_rank_uniform_exact(int n, int m, std::uint32_t q) {
  if (n < 1) throw DomainError("n must be at least 1");
  require_q(q);
  if (m < n) return 0.0;
  double prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= 1.0 - std::pow(static_cast<double>(q), static_cast<double>(i - m));
  return checked_probability(prod, "uniform P(n,m)");
}

double p_full_rank(Method method, int n, int m, double p0, std::uint32_t q) {
  switch (method) {
    case Method::proposed: return p_full_rank_proposed(n, m, p0, q);
    case Method::brown: return p_full_rank_brown(n, m, p0, q);
    case Method::chen: return p_full_rank_chen(n, m, p0, q);
    case Method::sehat: return p_full_rank_sehat(n, m, p0, q);
    case Method::uniform_exact: return p_full_rank_uniform_exact(n, m, q);
  }
  throw UsageError("unknown method");
}

double PnmTable::at(int m) const {
  if (m < n) return 0.0;
  const long idx = static_cast<long>(m) - m_first;
  if (idx < 0 || idx >= static_cast<long>(values.size())) {
    throw UsageError("P(n,m) table has no entry for m=" + std::to_string(m));
  }
  return values[static_cast<std::size_t>(idx)];
}

std::vector<double> erasure_weights(int N, double epsilon) {
  if (N < 0) throw DomainError("N must be nonnegative");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("erasure rate must lie in [0,1]");
  std::vector<double> w(static_cast<std::size_t>(N) + 1, 0.0);
  if (epsilon == 0.0) {
    w[N] = 1.0;
    return w;
  }
  if (epsilon == 1.0) {
    w[0] = 1.0;
    return w;
  }
  const auto log_binom = log_binomial_row(N);
  const double log_keep = std::log1p(-epsilon);
  const double log_drop = std::log(epsilon);
  for (int m = 0; m <= N; ++m) w[m] = std::exp(log_binom[m] + m * log_keep + (N - m) * log_drop);
  return w;
}

double decoding_success_prob(int n, int N, double epsilon, double p0, std::uint32_t q, const PnmSource& source) {
  if (n < 1 || N < 0) throw DomainError("need n >= 1 and N >= 0");
  const auto weights = erasure_weights(N, epsilon);
  auto pnm = [&](int m) {
    if (const auto* method = std::get_if<Method>(&source)) return p_full_rank(*method, n, m, p0, q);
    return std::get<PnmTable>(source).at(m);
  };
  CompensatedSum acc;
  for (int m = n; m <= N; ++m) {
    if (weights[m] != 0.0) acc.add(weights[m] * pnm(m));
  }
  return checked_probability(acc.value(), "P(epsilon)");
}

double mse(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || a.size() != b.size()) throw UsageError("mse needs two nonempty curves of equal length");
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add((a[i] - b[i]) * (a[i] - b[i]));
  return acc.value() / static_cast<double>(a.size());
}

}  // namespace srlnc
