#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "srlnc/analytic.hpp"
#include "srlnc/errors.hpp"

using namespace srlnc;

namespace {

std::vector<double> p0_grid(std::uint32_t q) { return {1.0 / q, 0.5, 0.8, 0.9, 0.96, 0.99}; }

bool is_binary_order(std::uint32_t q) { return (q & (q - 1)) == 0; }

std::uint32_t default_poly(std::uint32_t q) {
  switch (q) {
    case 4: return 0x7;
    case 8: return 0xB;
    default: return 0;
  }
}

// All nonzero coefficient vectors of length k over F_q.
std::vector<std::vector<std::uint32_t>> nonzero_vectors(unsigned k, std::uint32_t q) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> g(k, 1);
  for (;;) {
    out.push_back(g);
    unsigned i = 0;
    while (i < k && ++g[i] == q) g[i++] = 1;
    if (i == k) return out;
  }
}

}  // namespace

TEST(Beta, Examples) {
  EXPECT_DOUBLE_EQ(beta(1, 0.9, 2, true), 0.9);
  EXPECT_DOUBLE_EQ(beta(1, 0.37, 256, true), 0.37);
  for (unsigned k = 1; k < 10; ++k) EXPECT_NEAR(beta(k, 0.5, 2, true), 0.5, 1e-15);
  EXPECT_NEAR(beta(2, 0.9, 2, true), 0.82, 1e-15);  // p0^2 + (1-p0)^2
  EXPECT_EQ(beta(0, 0.7, 5, true), 1.0);
  EXPECT_EQ(beta(0, 0.7, 5, false), 0.0);
}

TEST(PDelta, Examples) {
  EXPECT_EQ(p_delta(0, 0.9, 2), 1.0);
  EXPECT_DOUBLE_EQ(p_delta(1, 0.9, 256), 0.9);
  for (unsigned k = 0; k < 20; ++k) {
    if (k > 0) EXPECT_NEAR(p_delta(k, 1.0 / 256, 256), 1.0 / 256, 1e-15);
    EXPECT_EQ(beta_exact(k + 1, Rational(1, 256), 256, true), Rational(1, 256));
  }
}

TEST(Beta, EqualsExhaustiveConvolutionExactly) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u}) {
    const bool binary = is_binary_order(q) && q > 2;
    for (const Rational p0 : {Rational(1, q), Rational(7, 10), Rational(9, 10), Rational(1, 7), Rational(0), Rational(1)}) {
      for (unsigned k = 0; k <= 6; ++k) {
        const auto dist = oracle::weighted_sum_law(std::vector<std::uint32_t>(k, 1), q, binary, default_poly(q), p0);
        ASSERT_EQ(dist[0], beta_exact(k, p0, q, true)) << "q=" << q << " k=" << k;
        for (std::uint32_t t = 1; t < q; ++t) ASSERT_EQ(dist[t], beta_exact(k, p0, q, false)) << "q=" << q << " t=" << t;
        EXPECT_NEAR(beta(k, to_double(p0), q, true), to_double(dist[0]), 1e-15);
        EXPECT_NEAR(beta(k, to_double(p0), q, false), to_double(dist[1]), 1e-15);
      }
    }
  }
}

TEST(Beta, WeightedSumsHaveTheSameLawForNonzeroWeights) {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    for (const Rational p0 : {Rational(1, q), Rational(7, 10), Rational(9, 10), Rational(1, 10)}) {
      for (unsigned k = 1; k <= 4; ++k) {
        const auto plain = oracle::weighted_sum_law(std::vector<std::uint32_t>(k, 1), q, false, 0, p0);
        for (const auto& g : nonzero_vectors(k, q)) {
          ASSERT_EQ(oracle::weighted_sum_law(g, q, false, 0, p0), plain) << "q=" << q << " k=" << k;
        }
      }
    }
  }
}

TEST(PDependent, Examples) {
  // Uniform coefficients: (1/q)^{n-i}.
  for (std::uint32_t q : {2u, 3u, 256u}) {
    for (int n = 1; n <= 12; ++n) {
      for (int i = 0; i < n; ++i) {
        EXPECT_NEAR(p_dependent(i, n, 1.0 / q, q), std::pow(1.0 / q, n - i), 1e-12 * std::pow(1.0 / q, n - i));
      }
    }
  }
  // i = 0: the row must be zero.
  for (double p0 : {0.3, 0.9, 0.96}) EXPECT_NEAR(p_dependent(0, 7, p0, 256), std::pow(p0, 7), 1e-15);
  EXPECT_THROW(p_dependent(3, 3, 0.5, 2), DomainError);
  EXPECT_THROW(p_dependent(-1, 3, 0.5, 2), DomainError);
}

TEST(PDependent, CloseToExhaustiveConditionalValue) {
  // Exact conditional dependence probability for q=2, n=3, i=1, p0=0.9 by
  // enumeration of all row pairs: 108743/135500.
  const Rational exact = oracle::conditional_dependence_by_enumeration(1, 3, 2, Rational(9, 10));
  ASSERT_EQ(exact, Rational(108743, 135500));
  EXPECT_NEAR(p_dependent(1, 3, 0.9, 2), to_double(exact), 0.05);
  EXPECT_NEAR(p_dependent(1, 3, 0.9, 2), 0.8085664, 1e-12);
}

TEST(PDependent, NegativeInnerBaseIsTrackedBySign) {
  // p0 < 1/q makes the inner base negative; the result must still be a probability.
  for (int n = 2; n <= 40; ++n) {
    for (int i = 0; i < n; ++i) {
      const double v = p_dependent(i, n, 0.05, 2);
      ASSERT_TRUE(v >= 0.0 && v <= 1.0) << i << "," << n << " -> " << v;
    }
  }
}

TEST(Proposed, Examples) {
  for (int m = 8; m <= 32; ++m) {
    EXPECT_NEAR(p_full_rank_proposed(8, m, 0.5, 2), to_double(oracle::uniform_full_rank(8, m, 2)), 1e-12);
  }
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(p_full_rank_proposed(n, n + 3, 1.0, 256), 0.0);
  // Exact value 0.0198 = 2 p0^2 (1-p0)^2 + 4 p0 (1-p0)^3; the approximation gives 0.019152.
  EXPECT_NEAR(p_full_rank_proposed(2, 2, 0.9, 2), 0.0198, 0.05);
  EXPECT_NEAR(p_full_rank_proposed(2, 2, 0.9, 2), 0.019152, 1e-12);
  EXPECT_EQ(p_full_rank_proposed(5, 4, 0.5, 2), 0.0);
}

TEST(Brown, Examples) {
  for (double p0 : {0.5, 0.9}) {
    for (int m = 1; m <= 6; ++m) EXPECT_NEAR(p_full_rank_brown(1, m, p0, 2), 1 - std::pow(p0, m), 1e-15);
  }
  const double v = p_full_rank_brown(3, 4, 0.7, 2);
  EXPECT_TRUE(std::isfinite(v) && v >= 0.0 && v <= 1.0);
  EXPECT_EQ(p_full_rank_brown(4, 9, 1.0, 2), 0.0);
  EXPECT_THROW(p_full_rank_brown(0, 3, 0.5, 2), DomainError);
}

TEST(Brown, RecursionTracksExactRecursion) {
  for (std::uint32_t q : {2u, 256u}) {
    for (const Rational p0 : {Rational(1, 2), Rational(4, 5), Rational(9, 10), Rational(24, 25)}) {
      for (int n : {4, 8, 16}) {
        for (int m : {n, n + 8, n + 24}) {
          const double approx = p_full_rank_brown(n, m, to_double(p0), q);
          const double exact = p_full_rank_brown_exact(n, m, p0, q);
          EXPECT_NEAR(approx, exact, 1e-9 * exact) << "q=" << q << " n=" << n << " m=" << m << " p0=" << to_double(p0);
        }
      }
    }
    // Heavy cancellation: a double-precision recursion is off by orders of magnitude here.
    for (int n : {18, 24}) {
      const double exact = p_full_rank_brown_exact(n, n, Rational(99, 100), q);
      EXPECT_NEAR(p_full_rank_brown(n, n, 0.99, q), exact, 1e-9 * exact) << "q=" << q << " n=" << n;
    }
  }
  const auto pi = brown_pi_exact(5, 7, Rational(9, 10), 2);
  const auto pd = brown_pi(5, 7, 0.9, 2);
  for (int l = 1; l <= 5; ++l) EXPECT_NEAR(pd[l], to_double(pi[l]), 1e-15);
  EXPECT_EQ(pi[1], rational_pow(beta_exact(1, Rational(9, 10), 2, true), 7));
}

TEST(Chen, Examples) {
  for (std::uint32_t q : {2u, 256u}) {
    for (int n : {1, 4, 8}) {
      for (int m = n; m <= n + 10; ++m) {
        double expected = std::pow(1 - std::pow(1.0 / q, m), n);
        for (int i = 0; i < n; ++i) expected *= 1 - std::pow(1.0 / q, m - i);
        EXPECT_NEAR(p_full_rank_chen(n, m, 1.0 / q, q), expected, 1e-13);
      }
    }
  }
  EXPECT_EQ(p_full_rank_chen(4, 9, 1.0, 2), 0.0);
}

TEST(Sehat, Examples) {
  for (double p0 : {0.5, 0.8, 0.96}) {
    for (int m = 1; m <= 8; ++m) EXPECT_NEAR(p_full_rank_sehat(1, m, p0, 2), 1 - std::pow(p0, m), 1e-14);
  }
  EXPECT_EQ(p_full_rank_sehat(4, 9, 1.0, 2), 0.0);
  // Large n_k = C(n,k)(q-1)^k overflows double; the log-space path must stay finite.
  const double v = p_full_rank_sehat(128, 150, 0.96, 256);
  EXPECT_TRUE(v >= 0.0 && v <= 1.0);
}

TEST(UniformExact, Examples) {
  EXPECT_DOUBLE_EQ(p_full_rank_uniform_exact(2, 2, 2), 0.375);
  EXPECT_DOUBLE_EQ(p_full_rank_uniform_exact(1, 1, 7), 1 - 1.0 / 7);
  double prev = 0.0;
  for (int m = 6; m < 60; ++m) {
    const double v = p_full_rank_uniform_exact(6, m, 2);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(prev, 1.0, 1e-12);
  EXPECT_EQ(p_full_rank_uniform_exact(3, 2, 2), 0.0);
}

TEST(RankCount, Examples) {
  EXPECT_EQ(rank_count(2, 2, 2, 2), 6);
  BigInt total = 0;
  for (unsigned r = 0; r <= 3; ++r) total += rank_count(3, 3, 2, r);
  EXPECT_EQ(total, 512);
  for (unsigned n = 1; n <= 5; ++n) EXPECT_EQ(rank_count(n, n + 2, 3, 0), 1);
  EXPECT_THROW(rank_count(2, 3, 2, 3), DomainError);
}

TEST(RankCount, AgreesWithProductFormulaAndTotals) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    for (unsigned n = 1; n <= 8; ++n) {
      for (unsigned m = 1; m <= 8; ++m) {
        BigInt total = 0;
        for (unsigned r = 0; r <= std::min(n, m); ++r) {
          const BigInt c = rank_count(n, m, q, r);
          ASSERT_EQ(c, oracle::rank_count_product(n, m, q, r)) << n << "x" << m << " q=" << q << " r=" << r;
          ASSERT_EQ(c, rank_count(m, n, q, r));
          total += c;
        }
        ASSERT_EQ(total, boost::multiprecision::pow(BigInt(q), n * m));
      }
    }
  }
}

TEST(RankCount, AgreesWithEnumeration) {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t m = 1; m <= 3; ++m) {
        if (p == 3 && n * m > 6) continue;
        std::vector<BigInt> by_rank(std::min(n, m) + 1, 0);
        oracle::for_each_matrix(n, m, p, [&](const auto& mat, int) { ++by_rank[oracle::prime_rank(mat, p)]; });
        for (unsigned r = 0; r < by_rank.size(); ++r) {
          ASSERT_EQ(rank_count(static_cast<unsigned>(n), static_cast<unsigned>(m), p, r), by_rank[r]);
        }
      }
    }
  }
}

TEST(RankCount, FullRankFractionEqualsUniformProduct) {
  for (std::uint32_t q : {2u, 3u}) {
    for (unsigned n = 1; n <= 8; ++n) {
      for (unsigned m = 1; m <= 8; ++m) {
        const Rational frac(rank_count(n, m, q, std::min(n, m)), boost::multiprecision::pow(BigInt(q), n * m));
        if (n <= m) {
          const double uniform = p_full_rank_uniform_exact(static_cast<int>(n), static_cast<int>(m), q);
          EXPECT_NEAR(to_double(frac), uniform, 1e-12 * uniform);
          EXPECT_EQ(frac, oracle::uniform_full_rank(n, m, q));
        }
      }
    }
  }
}

TEST(GaussianBinomial, SmallValues) {
  EXPECT_EQ(gaussian_binomial(4, 2, 2), 35);
  EXPECT_EQ(gaussian_binomial(3, 1, 3), 13);
  EXPECT_EQ(gaussian_binomial(5, 0, 7), 1);
  EXPECT_EQ(gaussian_binomial(2, 3, 2), 0);
}

TEST(DecodingSuccessProb, Examples) {
  for (auto method : kAllMethods) {
    EXPECT_EQ(decoding_success_prob(4, 9, 0.0, 0.9, 2, method), p_full_rank(method, 4, 9, 0.9, 2));
    EXPECT_EQ(decoding_success_prob(4, 9, 1.0, 0.9, 2, method), 0.0);
  }
  // sum_{m=2}^{4} C(4,m) / 16 * prod_{i<2} (1 - 2^{i-m}) = 729/2048.
  Rational expected = 0;
  for (unsigned m = 2; m <= 4; ++m) {
    const BigInt binom = m == 2 ? 6 : (m == 3 ? 4 : 1);
    expected += Rational(binom, 16) * oracle::uniform_full_rank(2, m, 2);
  }
  ASSERT_EQ(expected, Rational(729, 2048));
  EXPECT_NEAR(decoding_success_prob(2, 4, 0.5, 0.5, 2, Method::uniform_exact), to_double(expected), 1e-15);
  EXPECT_EQ(decoding_success_prob(5, 4, 0.2, 0.5, 2, Method::proposed), 0.0);
}

TEST(DecodingSuccessProb, TableSource) {
  const PnmTable table{3, 3, {0.25, 0.5, 0.75}};
  EXPECT_EQ(table.at(2), 0.0);
  EXPECT_EQ(table.at(4), 0.5);
  EXPECT_THROW(table.at(6), UsageError);
  EXPECT_EQ(decoding_success_prob(3, 5, 0.0, 0.5, 2, table), 0.75);
  const auto w = erasure_weights(5, 0.3);
  EXPECT_NEAR(decoding_success_prob(3, 5, 0.3, 0.5, 2, table), w[3] * 0.25 + w[4] * 0.5 + w[5] * 0.75, 1e-15);
  double total = 0.0;
  for (double x : w) total += x;
  EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(Mse, Examples) {
  const std::vector<double> a{0.1, 0.2, 0.3};
  EXPECT_EQ(mse(a, a), 0.0);
  EXPECT_EQ(mse(std::vector<double>{0, 1}, std::vector<double>{1, 0}), 1.0);
  EXPECT_NEAR(mse(std::vector<double>{0.5}, std::vector<double>{0.4}), 0.01, 1e-15);
  EXPECT_THROW(mse(std::vector<double>{}, std::vector<double>{}), UsageError);
  EXPECT_THROW(mse(a, std::vector<double>{1.0}), UsageError);
}

TEST(CheckedProbability, ClampsRoundoffAndRejectsLargerExcursions) {
  EXPECT_EQ(checked_probability(-5e-10, "x"), 0.0);
  EXPECT_EQ(checked_probability(1 + 5e-10, "x"), 1.0);
  EXPECT_EQ(checked_probability(0.25, "x"), 0.25);
  EXPECT_THROW(checked_probability(-1e-6, "x"), NumericalIntegrityError);
  EXPECT_THROW(checked_probability(1.01, "x"), NumericalIntegrityError);
  EXPECT_THROW(checked_probability(std::nan(""), "x"), NumericalIntegrityError);
}

TEST(MethodNames, RoundTrip) {
  for (auto m : kAllMethods) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_FALSE(parse_method("nope").has_value());
}

TEST(AnalyticGrid, AllOutputsAreProbabilities) {
  for (std::uint32_t q : {2u, 256u}) {
    for (int n = 1; n <= 128; ++n) {
      for (double p0 : p0_grid(q)) {
        for (int m = n; m <= n + 64; m += (n > 32 ? 4 : 1)) {
          for (auto method : kAllMethods) {
            const double v = p_full_rank(method, n, m, p0, q);
            ASSERT_TRUE(v >= 0.0 && v <= 1.0) << method_name(method) << " q=" << q << " n=" << n << " m=" << m << " p0=" << p0;
          }
        }
      }
    }
  }
}

TEST(AnalyticGrid, ProposedDegeneratesToUniformProduct) {
  for (std::uint32_t q : {2u, 256u}) {
    for (int n = 1; n <= 128; ++n) {
      for (int m = n; m <= n + 64; ++m) {
        const double uniform = p_full_rank_uniform_exact(n, m, q);
        ASSERT_NEAR(p_full_rank_proposed(n, m, 1.0 / q, q), uniform, 1e-12 * uniform) << "q=" << q << " n=" << n << " m=" << m;
      }
    }
  }
}

TEST(AnalyticGrid, ProposedMonotoneOnTestedGrid) {
  for (std::uint32_t q : {2u, 256u}) {
    for (double p0 : p0_grid(q)) {
      for (int n = 1; n <= 64; ++n) {
        for (int m = n; m <= n + 64; ++m) {
          const double here = p_full_rank_proposed(n, m, p0, q);
          // Nonincreasing in n at fixed m, nondecreasing in m at fixed n.
          ASSERT_LE(p_full_rank_proposed(n + 1, m, p0, q), here + 1e-15) << "q=" << q << " p0=" << p0 << " n=" << n << " m=" << m;
          ASSERT_GE(p_full_rank_proposed(n, m + 1, p0, q), here - 1e-15) << "q=" << q << " p0=" << p0 << " n=" << n << " m=" << m;
        }
      }
    }
  }
}
