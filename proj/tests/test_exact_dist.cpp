#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "riffle/exact_dist.hpp"
#include "riffle/limit_laws.hpp"

using riffle::Pmf;
using riffle::ShuffleParams;
using riffle::StrategyTable;

namespace {

double tv_to(const Pmf& pmf, const std::vector<double>& ref) {
  double acc = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) acc += std::abs(pmf[static_cast<std::int64_t>(k)] - ref[k]);
  return acc / 2;
}

}  // namespace

TEST(TwoColor, SmallCases) {
  const Pmf m0 = riffle::c_pmf(4, 0);
  EXPECT_DOUBLE_EQ(m0[4], 1.0);
  EXPECT_DOUBLE_EQ(riffle::c_pmf(0, 0)[0], 1.0);
  const Pmf one = riffle::c_pmf(1, 1);
  EXPECT_NEAR(one[1], 0.5, 1e-15);
  EXPECT_NEAR(one[2], 0.5, 1e-15);
  const Pmf two = riffle::c_pmf(2, 1);
  EXPECT_NEAR(two[2], 2.0 / 3, 1e-15);
  EXPECT_NEAR(two[3], 1.0 / 3, 1e-15);
  EXPECT_THROW(riffle::c_pmf(-1, 0), std::invalid_argument);
  EXPECT_THROW(riffle::c_pmf(3000, 1001), riffle::guard_error);
}

TEST(TwoColor, MatchesEnumeration) {
  for (int m1 = 0; m1 <= 10; ++m1) {
    for (int m2 = 0; m1 + m2 <= 16; ++m2) {
      EXPECT_LT(tv_to(riffle::c_pmf(m1, m2), oracle::two_color_law(m1, m2)), 1e-13) << m1 << " " << m2;
    }
  }
}

TEST(TwoColor, SymmetrySupportAndHead) {
  for (int m1 = 0; m1 <= 30; ++m1) {
    for (int m2 = 0; m2 <= 30; ++m2) {
      const Pmf a = riffle::c_pmf(m1, m2), b = riffle::c_pmf(m2, m1);
      ASSERT_EQ(a.min_value(), b.min_value());
      for (std::int64_t k = a.min_value(); k <= a.max_value(); ++k) ASSERT_NEAR(a[k], b[k], 1e-12);
      ASSERT_EQ(a.min_value(), std::max(m1, m2));
      ASSERT_EQ(a.max_value(), m1 + m2);
      if (m1 >= m2) ASSERT_NEAR(a[m1], 1.0 - static_cast<double>(m2) / (m1 + 1), 1e-12);
    }
  }
}

TEST(TwoColor, LayersAgreeWithRectangleSweep) {
  riffle::TwoColorLayers layers;
  while (layers.total() < 40) layers.advance();
  for (int a = 0; a <= 40; ++a) {
    const Pmf ref = riffle::c_pmf(a, 40 - a);
    const auto& got = layers.law(a);
    for (std::size_t i = 0; i < got.size(); ++i) ASSERT_NEAR(got[i], ref[ref.min_value() + static_cast<std::int64_t>(i)], 1e-13);
  }
}

TEST(TruncatedBinomial, Values) {
  EXPECT_DOUBLE_EQ(riffle::truncated_binomial_pmf(2, 0.37)[1], 1.0);
  const Pmf j3 = riffle::truncated_binomial_pmf(3, 0.5);
  EXPECT_NEAR(j3[1], 2.0 / 3, 1e-15);
  EXPECT_NEAR(j3[2], 1.0 / 3, 1e-15);
  EXPECT_NEAR(riffle::truncated_binomial_pmf(10, 0.3).mean(), 9 * 0.3 / (1 - std::pow(0.7, 9)), 1e-12);
}

TEST(XLaw, SmallCases) {
  const Pmf one = riffle::x_pmf(ShuffleParams(1, 0.4));
  EXPECT_DOUBLE_EQ(one[1], 1.0);
  for (double p : {0.5, 0.6, 0.9}) {
    const Pmf two = riffle::x_pmf(ShuffleParams(2, p));
    EXPECT_NEAR(two[1], p * (1 - p), 1e-15);
    EXPECT_NEAR(two[2], 1 - p * (1 - p), 1e-15);
  }
}

TEST(XLaw, MatchesBruteForce) {
  for (int n = 1; n <= 12; ++n) {
    for (double p : {0.1, 0.15, 0.3, 0.5, 0.7, 0.9}) {
      const StrategyTable t(p, n);
      const Pmf exact = riffle::x_pmf(riffle::XnLawRequest(ShuffleParams(n, p), t));
      const Pmf brute = riffle::x_pmf_bruteforce(ShuffleParams(n, p), t);
      EXPECT_LE(riffle::tv_distance(exact, brute), 1e-10) << n << " " << p;
      EXPECT_LT(tv_to(brute, oracle::x_law(n, p)), 1e-12) << n << " " << p;
    }
  }
}

// Deck sizes where the first guess is the shifted mode.
TEST(XLaw, MatchesBruteForceWhenModeIsGuessed) {
  for (double p : {0.1, 0.15}) {
    for (int n = 13; n <= 20; ++n) {
      const StrategyTable t(p, n);
      const Pmf exact = riffle::x_pmf(riffle::XnLawRequest(ShuffleParams(n, p), t));
      EXPECT_LE(riffle::tv_distance(exact, riffle::x_pmf_bruteforce(ShuffleParams(n, p), t)), 1e-10) << n << " " << p;
    }
  }
}

TEST(XLaw, MeanMatchesBruteForce) {
  const ShuffleParams prm(7, 0.3);
  const StrategyTable t(0.3, 7);
  EXPECT_NEAR(riffle::x_pmf(prm).mean(), riffle::x_pmf_bruteforce(prm, t).mean(), 1e-10);
}

TEST(XLaw, IdentityMassWhenCardOneIsAlwaysGuessed) {
  for (double p : {0.3, 0.5, 0.7, 0.9}) {
    riffle::XLawSequence seq(StrategyTable(p, 200));
    for (int n = 2; n <= 200; ++n) {
      seq.advance();
      ASSERT_NEAR(seq.masses().back(), riffle::identity_probability(ShuffleParams(n, p)), 1e-12) << n << " " << p;
    }
  }
}

TEST(XLaw, BruteForceIdentityMass) {
  for (int n = 1; n <= 12; ++n) {
    for (double p : {0.3, 0.5, 0.7}) {
      EXPECT_NEAR(riffle::x_pmf_bruteforce(ShuffleParams(n, p), StrategyTable(p, n))[n],
                  riffle::identity_probability(ShuffleParams(n, p)), 1e-14);
    }
  }
}

TEST(XLaw, Guards) {
  EXPECT_THROW(riffle::x_pmf(ShuffleParams(5001, 0.5)), riffle::guard_error);
  EXPECT_THROW(riffle::x_pmf_bruteforce(ShuffleParams(25, 0.5), StrategyTable(0.5, 25)), riffle::guard_error);
  EXPECT_THROW(riffle::XnLawRequest(ShuffleParams(5, 0.5), StrategyTable(0.4, 5)), std::invalid_argument);
}

TEST(XLaw, NormalizedAtLargerSizes) {
  for (double p : {0.15, 0.5, 0.75}) {
    const Pmf law = riffle::x_pmf(ShuffleParams(300, p));
    double total = 0.0;
    for (double m : law.masses()) total += m;
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(CJn, SmallCases) {
  EXPECT_DOUBLE_EQ(riffle::cjn_pmf(ShuffleParams(2, 0.3))[1], 1.0);
  // n = 3: J in {1, 2}; C_{1,1} or C_{0,2}.
  const double p = 0.4, w1 = 2 * p * (1 - p), w2 = p * p, z = w1 + w2;
  const Pmf c = riffle::cjn_pmf(ShuffleParams(3, p));
  EXPECT_NEAR(c[1], w1 / z * 0.5, 1e-15);
  EXPECT_NEAR(c[2], w1 / z * 0.5 + w2 / z, 1e-15);
}

TEST(Moments, Examples) {
  EXPECT_NEAR(riffle::moments(riffle::c_pmf(1, 1), 1), 1.5, 1e-15);
  std::vector<double> g(61);
  for (int k = 0; k <= 60; ++k) g[static_cast<std::size_t>(k)] = riffle::geometric_pmf(1.0 / 3, k);
  g[60] += 1.0 - std::accumulate(g.begin(), g.end(), 0.0);
  EXPECT_NEAR(riffle::moments(Pmf(0, g), 1), 0.5, 1e-9);
}
