#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "srlnc/analytic.hpp"
#include "srlnc/errors.hpp"
#include "srlnc/multicast.hpp"

using namespace srlnc;

namespace {

GenerationConfig config(int n, int N, const FieldPtr& f, double p0, double eps, int receivers = 1, int L = 0) {
  GenerationConfig c;
  c.n = n;
  c.N = N;
  c.L = L;
  c.field = f;
  c.p0 = p0;
  c.epsilon = eps;
  c.receivers = receivers;
  return c;
}

struct TableWithNoise {
  PnmTable table;
  std::vector<double> std_errors;
};

TableWithNoise mc_table(int n, int N, const FieldPtr& f, double p0, std::uint64_t trials, std::uint64_t seed) {
  TableWithNoise t;
  t.table.n = n;
  t.table.m_first = n;
  const CoefficientModel model(f, p0);
  for (int m = n; m <= N; ++m) {
    const auto e = mc_full_rank(n, m, model, trials, point_seed(seed, m));
    t.table.values.push_back(e.estimate);
    t.std_errors.push_back(e.std_error);
  }
  return t;
}

}  // namespace

TEST(GenerationConfig, Validation) {
  EXPECT_NO_THROW(config(2, 0, Field::gf2(), 0.5, 0.1).validate());
  EXPECT_THROW(config(0, 4, Field::gf2(), 0.5, 0.1).validate(), UsageError);
  EXPECT_THROW(config(2, -1, Field::gf2(), 0.5, 0.1).validate(), UsageError);
  EXPECT_THROW(config(2, 4, Field::gf2(), 0.5, 0.1, 0).validate(), UsageError);
  EXPECT_THROW(config(2, 4, Field::gf2(), 0.5, 0.1, 1, -1).validate(), UsageError);
  EXPECT_THROW(config(2, 4, Field::gf2(), 0.5, 1.1).validate(), DomainError);
  EXPECT_THROW(config(2, 4, Field::gf2(), -0.5, 0.1).validate(), DomainError);
  EXPECT_THROW(config(2, 4, nullptr, 0.5, 0.1).validate(), UsageError);
}

TEST(RunGeneration, FullErasureReceivesNothing) {
  RngStream rng(1);
  const auto cfg = config(3, 6, Field::gf256(), 0.5, 1.0, 3);
  for (int t = 0; t < 100; ++t) {
    for (const auto& o : run_generation(cfg, rng)) {
      EXPECT_EQ(o.received, 0);
      EXPECT_EQ(o.rank, 0);
      EXPECT_FALSE(o.decoded);
    }
  }
}

TEST(RunGeneration, OutcomeInvariants) {
  RngStream rng(2);
  const auto cfg = config(4, 8, Field::gf2(), 0.8, 0.3, 5);
  for (int t = 0; t < 2000; ++t) {
    const auto outcomes = run_generation(cfg, rng);
    ASSERT_EQ(outcomes.size(), 5u);
    std::set<std::uint64_t> streams;
    for (const auto& o : outcomes) {
      ASSERT_LE(o.rank, std::min(cfg.n, o.received));
      ASSERT_EQ(o.decoded, o.rank == cfg.n);
      ASSERT_FALSE(o.payload_recovered.has_value());
      streams.insert(o.stream_index);
    }
    ASSERT_EQ(streams.size(), outcomes.size());
  }
}

TEST(RunGeneration, UniformSquareDecodeRate) {
  RngStream rng(3);
  const auto cfg = config(2, 2, Field::gf2(), 0.5, 0.0);
  const int runs = 400000;
  int decoded = 0;
  for (int t = 0; t < runs; ++t) decoded += run_generation(cfg, rng)[0].decoded;
  EXPECT_NEAR(static_cast<double>(decoded) / runs, 0.375, 4 * std::sqrt(0.375 * 0.625 / runs));
}

TEST(RunGeneration, PayloadRoundTrip) {
  // decoded <=> exact payload reconstruction, over 1e4 generations per field.
  for (const auto& f : {Field::gf2(), Field::gf256(), Field::prime(5)}) {
    RngStream rng(4);
    const auto cfg = config(5, 8, f, 0.7, 0.25, 2, 4);
    int decoded = 0;
    for (int t = 0; t < 10000; ++t) {
      for (const auto& o : run_generation(cfg, rng)) {
        ASSERT_TRUE(o.payload_recovered.has_value());
        ASSERT_EQ(o.decoded, *o.payload_recovered) << f->name();
        decoded += o.decoded;
      }
    }
    EXPECT_GT(decoded, 0) << f->name();
    EXPECT_LT(decoded, 20000) << f->name();
  }
}

TEST(EstimatePEpsilon, Examples) {
  EXPECT_EQ(estimate_p_epsilon(config(4, 3, Field::gf2(), 0.5, 0.0), 10000, 1).successes, 0u);
  EXPECT_EQ(estimate_p_epsilon(config(4, 8, Field::gf256(), 0.5, 1.0, 3), 10000, 1).successes, 0u);
  EXPECT_THROW(estimate_p_epsilon(config(4, 8, Field::gf2(), 0.5, 0.1), 0, 1), UsageError);

  // n=2, N=4, eps=1/2, uniform GF(2): closed form 729/2048.
  const double analytic = decoding_success_prob(2, 4, 0.5, 0.5, 2, Method::uniform_exact);
  EXPECT_NEAR(analytic, 729.0 / 2048, 1e-15);
  const auto e = estimate_p_epsilon(config(2, 4, Field::gf2(), 0.5, 0.5), 1000000, 5);
  EXPECT_LE(std::fabs(e.estimate - analytic), 4 * e.std_error);
}

TEST(EstimatePEpsilon, ZeroErasureMatchesFullRankEstimate) {
  const auto cfg = config(6, 9, Field::gf256(), 0.9, 0.0);
  const auto channel = estimate_p_epsilon(cfg, 200000, 6);
  const auto direct = mc_full_rank(6, 9, CoefficientModel(cfg.field, cfg.p0), 200000, 7);
  EXPECT_LE(std::fabs(channel.estimate - direct.estimate),
            4 * std::hypot(channel.std_error, direct.std_error));
}

TEST(EstimatePEpsilon, DeterministicAcrossThreadCounts) {
  const auto cfg = config(8, 16, Field::gf2(), 0.9, 0.3, 3);
  const auto a = estimate_p_epsilon(cfg, 150000, 8, 1);
  const auto b = estimate_p_epsilon(cfg, 150000, 8, 4);
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_EQ(a.trials, b.trials);
}

TEST(EstimatePEpsilon, ReceiversAreExchangeable) {
  // Pooled R=4 rate matches R=1 at four times the trials.
  const auto four = estimate_p_epsilon(config(4, 8, Field::gf2(), 0.9, 0.3, 4), 50000, 9);
  const auto one = estimate_p_epsilon(config(4, 8, Field::gf2(), 0.9, 0.3, 1), 200000, 10);
  EXPECT_EQ(four.trials, 200000u);
  EXPECT_LE(std::fabs(four.estimate - one.estimate), 4 * std::hypot(four.std_error, one.std_error));
}

TEST(EstimatePEpsilon, AgreesWithMixtureOverMonteCarloTable) {
  int checked = 0;
  for (std::uint32_t q : {2u, 256u}) {
    const auto f = q == 2 ? Field::gf2() : Field::gf256();
    for (double p0 : {1.0 / q, 0.9}) {
      for (int n : {4, 8}) {
        const auto t = mc_table(n, 2 * n, f, p0, 100000, 1000 + q + n);
        for (int N = n; N <= 2 * n; ++N) {
          for (double eps : {0.1, 0.3, 0.5}) {
            const double analytic = decoding_success_prob(n, N, eps, p0, q, t.table);
            const auto w = erasure_weights(N, eps);
            double table_var = 0.0;
            for (int m = n; m <= N; ++m) table_var += w[m] * w[m] * t.std_errors[m - n] * t.std_errors[m - n];
            const auto e = estimate_p_epsilon(config(n, N, f, p0, eps), 20000, 31 * N + n + q);
            // Simulation noise at the hypothesised value; the plug-in error is 0 whenever every trial agrees.
            const double sim_var = analytic * (1 - analytic) / static_cast<double>(e.trials);
            const double sigma = std::sqrt(sim_var + table_var);
            EXPECT_LE(std::fabs(e.estimate - analytic), 4 * sigma + 1e-12)
                << "q=" << q << " p0=" << p0 << " n=" << n << " N=" << N << " eps=" << eps;
            ++checked;
          }
        }
      }
    }
  }
  EXPECT_EQ(checked, 168);
}
