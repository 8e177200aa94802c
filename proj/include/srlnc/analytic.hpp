#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "srlnc/rational.hpp"

// Closed-form probabilities for sparse random matrices over F_q whose entries
// follow the sparse coefficient law (zero w.p. p0, each nonzero element w.p.
// (1-p0)/(q-1)). Every function is pure and safe to call concurrently.
//
// Conventions shared by all P(n, m) functions:
//   * n is the number of rows (generation size), m the number of columns.
//   * m < n gives 0: an n x m matrix cannot have rank n.
//   * Final probabilities within 1e-9 of [0,1] are clamped; larger excursions
//     throw NumericalIntegrityError.

namespace srlnc {

enum class Method { proposed, brown, chen, sehat, uniform_exact };

std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;
inline constexpr Method kAllMethods[] = {Method::proposed, Method::brown, Method::chen, Method::sehat,
                                         Method::uniform_exact};

/// One evaluation point.
struct ScenarioParams {
  int n = 1;
  int m = 1;
  std::uint32_t q = 2;
  double p0 = 0.5;
  double epsilon = 0.0;
};

/// Distribution of a sum of k i.i.d. sparse coefficients: Pr{X_1+...+X_k = 0}
/// when t_is_zero, else Pr{... = t} for any fixed t != 0. k = 0 is the empty sum.
double beta(unsigned k, double p0, std::uint32_t q, bool t_is_zero);
/// beta in exact rational arithmetic.
Rational beta_exact(unsigned k, const Rational& p0, std::uint32_t q, bool t_is_zero);

/// Probability that the sum of the first k entries of a column of the inverse
/// of a random nonsingular matrix is zero, approximated by beta(k, p0, t=0).
double p_delta(unsigned k, double p0, std::uint32_t q);

/// Approximate probability that a fresh sparse row of length n lies in the span
/// of i given linearly independent sparse rows. Throws DomainError unless 0 <= i < n.
double p_dependent(int i, int n, double p0, std::uint32_t q);

/// Product form prod_{i<n} (1 - p_dependent(i, m)).
double p_full_rank_proposed(int n, int m, double p0, std::uint32_t q);
/// Stein-Chen style approximation with the alternating recursion over pi_l.
double p_full_rank_brown(int n, int m, double p0, std::uint32_t q);
/// Earlier single-parameter RREF approximation.
double p_full_rank_chen(int n, int m, double p0, std::uint32_t q);
/// Independent-dependency approximation prod_k (1 - b_k)^{n_k}, evaluated in log space.
double p_full_rank_sehat(int n, int m, double p0, std::uint32_t q);
/// Exact value for uniform coefficients: prod_{i<n} (1 - q^{i-m}).
double p_full_rank_uniform_exact(int n, int m, std::uint32_t q);

double p_full_rank(Method method, int n, int m, double p0, std::uint32_t q);

/// The pi_l sequence of the Brown recursion in exact rational arithmetic
/// (index 0 unused). For quantifying floating-point cancellation; n <= 32.
std::vector<Rational> brown_pi_exact(int n, int m, const Rational& p0, std::uint32_t q);
/// The Brown recursion (index 0 unused), evaluated in 50 digits and rounded to double.
std::vector<double> brown_pi(int n, int m, double p0, std::uint32_t q);
/// p_full_rank_brown with the exponent sum formed exactly; n <= 32.
double p_full_rank_brown_exact(int n, int m, const Rational& p0, std::uint32_t q);

/// Gaussian binomial [m choose r]_q.
BigInt gaussian_binomial(unsigned m, unsigned r, std::uint32_t q);
/// Number of n x m matrices over F_q with rank r. Throws DomainError unless 0 <= r <= min(n, m).
BigInt rank_count(unsigned n, unsigned m, std::uint32_t q, unsigned r);

/// Tabulated P(n, m) for m in [m_first, m_first + values.size()), e.g. from Monte Carlo.
struct PnmTable {
  int n = 1;
  int m_first = 0;
  std::vector<double> values;
  /// Throws UsageError when m is not covered and m >= n.
  double at(int m) const;
};

using PnmSource = std::variant<Method, PnmTable>;

/// Binomial received-count weights C(N,m) (1-eps)^m eps^{N-m} for m = 0..N.
std::vector<double> erasure_weights(int N, double epsilon);

/// Receiver decoding probability over an erasure channel:
/// sum_{m=n}^{N} C(N,m) (1-eps)^m eps^{N-m} P(n,m).
double decoding_success_prob(int n, int N, double epsilon, double p0, std::uint32_t q, const PnmSource& source);

/// Mean of squared pointwise differences. Throws UsageError on empty or unequal input.
double mse(std::span<const double> a, std::span<const double> b);

/// Applies the clamping rule. Throws NumericalIntegrityError on larger excursions or NaN.
double checked_probability(double x, std::string_view what);

}  // namespace srlnc
