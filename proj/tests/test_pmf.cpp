#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "riffle/binomial.hpp"
#include "riffle/pmf.hpp"

using riffle::Pmf;

TEST(Pmf, RejectsNegativeMass) { EXPECT_THROW(Pmf(0, {1.5, -0.5}), std::invalid_argument); }

TEST(Pmf, RejectsBadNormalization) {
  EXPECT_THROW(Pmf(0, {0.5, 0.4}), std::invalid_argument);
  EXPECT_NO_THROW(Pmf(0, {0.5, 0.5 + 5e-10}));
}

TEST(Pmf, RejectsEmpty) { EXPECT_THROW(Pmf(0, {}), std::invalid_argument); }

TEST(Pmf, IndexingOutsideSupportIsZero) {
  const Pmf p(3, {0.25, 0.0, 0.75});
  EXPECT_EQ(p[2], 0.0);
  EXPECT_EQ(p[3], 0.25);
  EXPECT_EQ(p[4], 0.0);
  EXPECT_EQ(p[5], 0.75);
  EXPECT_EQ(p[6], 0.0);
  EXPECT_EQ(p.min_value(), 3);
  EXPECT_EQ(p.max_value(), 5);
}

TEST(Pmf, UnitMassMoments) {
  EXPECT_DOUBLE_EQ(riffle::moments(Pmf::unit(5), 1), 5.0);
  EXPECT_DOUBLE_EQ(riffle::moments(Pmf::unit(5), 2), 25.0);
  EXPECT_THROW(riffle::moments(Pmf::unit(5), 0), std::invalid_argument);
}

TEST(Pmf, ShiftAndReflect) {
  const Pmf p(1, {0.2, 0.8});
  const Pmf r = p.reflected(5);  // 5 - X on {3, 4}
  EXPECT_EQ(r.min_value(), 3);
  EXPECT_DOUBLE_EQ(r[3], 0.8);
  EXPECT_DOUBLE_EQ(r[4], 0.2);
  EXPECT_DOUBLE_EQ(p.shifted(-1)[0], 0.2);
  EXPECT_DOUBLE_EQ(p.cdf(1), 0.2);
  EXPECT_DOUBLE_EQ(p.cdf(10), 1.0);
}

TEST(Pmf, FromCounts) {
  const std::vector<std::uint64_t> counts{1, 0, 3};
  const Pmf p = Pmf::from_counts(2, counts);
  EXPECT_DOUBLE_EQ(p[2], 0.25);
  EXPECT_DOUBLE_EQ(p[4], 0.75);
  const std::vector<std::uint64_t> none{0, 0};
  EXPECT_THROW(Pmf::from_counts(0, none), std::invalid_argument);
}

TEST(Binomial, RowSumsToOneOnBothPaths) {
  for (int n : {1, 7, 50, 51, 400}) {
    double total = 0.0;
    for (double v : riffle::binomial::pmf_row(n, 0.3)) total += v;
    EXPECT_NEAR(total, 1.0, 1e-12) << n;
  }
}

TEST(Binomial, LogPathAgreesWithDirectPath) {
  // n = 50 is direct, compare with a product-form evaluation.
  double c = 1.0;
  for (int i = 1; i <= 20; ++i) c = c * (30 + i) / i;
  EXPECT_NEAR(riffle::binomial::pmf(50, 20, 0.4), c * std::pow(0.4, 20) * std::pow(0.6, 30), 1e-15);
  // n = 60 goes through lgamma.
  double c60 = 1.0;
  for (int i = 1; i <= 25; ++i) c60 = c60 * (35 + i) / i;
  EXPECT_NEAR(riffle::binomial::pmf(60, 25, 0.4) / (c60 * std::pow(0.4, 25) * std::pow(0.6, 35)), 1.0, 1e-11);
}

TEST(Binomial, ModeMass) {
  for (int n : {1, 9, 10, 100, 1000}) {
    double best = 0.0;
    for (double v : riffle::binomial::pmf_row(n, 0.15)) best = std::max(best, v);
    EXPECT_DOUBLE_EQ(riffle::binomial::mode_mass(n, 0.15), best) << n;
  }
}
