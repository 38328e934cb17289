#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "riffle/exact_dist.hpp"
#include "riffle/limit_laws.hpp"
#include "riffle/montecarlo.hpp"

using riffle::McConfig;
using riffle::McEngine;
using riffle::ShuffleParams;
using riffle::StrategyTable;

namespace {

McConfig config(std::uint64_t trials, std::uint64_t seed, unsigned workers = 1, McEngine engine = McEngine::automatic) {
  McConfig c;
  c.trials = trials;
  c.seed = seed;
  c.chunk_size = 50'000;
  c.workers = workers;
  c.engine = engine;
  return c;
}

}  // namespace

TEST(McConfig, Validation) {
  McConfig c = config(0, 1);
  EXPECT_THROW(riffle::simulate_x(ShuffleParams(3, 0.5), c), std::invalid_argument);
  c = config(10, 1);
  c.chunk_size = 0;
  EXPECT_THROW(riffle::simulate_x(ShuffleParams(3, 0.5), c), std::invalid_argument);
}

TEST(SimulateX, SingleCard) {
  for (auto e : {McEngine::deck_play, McEngine::decomposed}) {
    EXPECT_DOUBLE_EQ(riffle::simulate_x(ShuffleParams(1, 0.3), config(1000, 9, 1, e))[1], 1.0);
  }
}

TEST(SimulateX, DeterministicAcrossWorkerCounts) {
  for (auto e : {McEngine::deck_play, McEngine::decomposed}) {
    const auto a = riffle::simulate_x_counts(ShuffleParams(10, 0.3), StrategyTable(0.3, 10), config(400'000, 42, 1, e));
    const auto b = riffle::simulate_x_counts(ShuffleParams(10, 0.3), StrategyTable(0.3, 10), config(400'000, 42, 8, e));
    EXPECT_EQ(a, b);
    const auto c = riffle::simulate_x_counts(ShuffleParams(10, 0.3), StrategyTable(0.3, 10), config(400'000, 43, 1, e));
    EXPECT_NE(a, c);
  }
}

TEST(SimulateX, ConsistentWithExactOnGrid) {
  for (int n = 2; n <= 12; n += 2) {
    for (double p : {0.1, 0.15, 0.3, 0.5, 0.7, 0.9}) {
      const auto mc = riffle::simulate_x(ShuffleParams(n, p), config(1'000'000, 7 + n));
      EXPECT_LT(riffle::tv_distance(mc, riffle::x_pmf(ShuffleParams(n, p))), 0.005) << n << " " << p;
    }
  }
}

TEST(SimulateX, DecomposedEngineMatchesExact) {
  for (double p : {0.1, 0.15, 0.5, 0.75}) {
    for (int n : {12, 30, 60}) {
      const auto mc = riffle::simulate_x(ShuffleParams(n, p), config(1'000'000, 3, 1, McEngine::decomposed));
      EXPECT_LT(riffle::tv_distance(mc, riffle::x_pmf(ShuffleParams(n, p))), 0.005) << n << " " << p;
    }
  }
}

TEST(SimulateX, IdentityMassWithinThreeStandardErrors) {
  const ShuffleParams prm(8, 0.7);
  const std::uint64_t trials = 1'000'000;
  const double q = riffle::identity_probability(prm);
  const double se = std::sqrt(q * (1 - q) / trials);
  EXPECT_NEAR(riffle::simulate_x(prm, config(trials, 5))[8], q, 3 * se);
}

TEST(TieCount, MatchesTwoColorDp) {
  // a + Bin(Z, 1/2) has the law of C_{a,b}.
  for (int a = 0; a <= 25; ++a) {
    for (int b = 0; b <= 25; ++b) {
      const auto z = riffle::TwoColorSampler::tie_count_pmf(a, b);
      std::vector<double> law(static_cast<std::size_t>(a + b) + 1, 0.0);
      for (std::size_t r = 0; r < z.size(); ++r) {
        for (std::size_t h = 0; h <= r; ++h) {
          double c = 1.0;
          for (std::size_t i = 1; i <= h; ++i) c = c * static_cast<double>(r - h + i) / static_cast<double>(i);
          law[static_cast<std::size_t>(std::max(a, b)) + h] += z[r] * c * std::pow(0.5, static_cast<double>(r));
        }
      }
      const auto exact = riffle::c_pmf(a, b);
      for (std::size_t k = 0; k < law.size(); ++k) ASSERT_NEAR(law[k], exact[static_cast<std::int64_t>(k)], 1e-12) << a << " " << b;
    }
  }
}

TEST(SimulateCjn, TwoCards) {
  EXPECT_DOUBLE_EQ(riffle::simulate_cjn(ShuffleParams(2, 0.6), config(1000, 1))[1], 1.0);
  EXPECT_THROW(riffle::simulate_cjn(ShuffleParams(1, 0.6), config(10, 1)), std::invalid_argument);
}

TEST(SimulateCjn, BothEnginesMatchExact) {
  for (auto e : {McEngine::deck_play, McEngine::decomposed}) {
    const auto mc = riffle::simulate_cjn(ShuffleParams(40, 0.3), config(500'000, 2, 1, e));
    EXPECT_LT(riffle::tv_distance(mc, riffle::cjn_pmf(ShuffleParams(40, 0.3))), 0.01);
  }
}

TEST(SimulateCjn, MatchesExactAtFourHundred) {
  const ShuffleParams prm(400, 0.75);
  const auto mc = riffle::simulate_cjn(prm, config(1'000'000, 4));
  EXPECT_LT(riffle::tv_distance(mc, riffle::cjn_pmf(prm)), 0.01);
}

TEST(SimulateCjn, DeterministicAcrossWorkerCounts) {
  EXPECT_EQ(riffle::simulate_cjn_counts(ShuffleParams(50, 0.4), config(200'000, 8, 1)),
            riffle::simulate_cjn_counts(ShuffleParams(50, 0.4), config(200'000, 8, 3)));
}
