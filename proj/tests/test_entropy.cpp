#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "goelab/catalog.hpp"
#include "goelab/entropy.hpp"
#include "oracles.hpp"

using namespace goelab;

namespace {
const double kLogPhi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
}

TEST(Entropy, PerronValues) {
  EXPECT_NEAR(perron_entropy(builtin_golden_mean()).value, kLogPhi, 1e-9);
  EXPECT_NEAR(perron_entropy(builtin_even()).value, kLogPhi, 1e-9);
  EXPECT_NEAR(perron_entropy(builtin_full(3)).value, std::log(3.0), 1e-9);
  EXPECT_NEAR(perron_entropy(builtin_period_two()).value, 0.0, 1e-9);
  EXPECT_NEAR(perron_entropy(fiorenzi_ternary_shift()).value, std::log(2.0), 1e-9);
  PerronValue v = perron_entropy(builtin_golden_mean());
  EXPECT_LE(v.lower, kLogPhi + 1e-12);
  EXPECT_GE(v.upper, kLogPhi - 1e-12);
}

TEST(Entropy, CountRowsForGoldenMean) {
  EntropyEstimate e = pattern_count_entropy(builtin_golden_mean(), 0, 20);
  ASSERT_EQ(e.rows.size(), 21u);
  BigInt a = 1, b = 2;  // words of length 0 and 1
  for (const auto& r : e.rows) {
    EXPECT_EQ(r.cells, static_cast<std::size_t>(r.n + 1));
    EXPECT_EQ(r.count, b);
    BigInt c = a + b;
    a = b;
    b = c;
  }
  EXPECT_NEAR(e.rows.back().estimate, kLogPhi, 0.05);
  EXPECT_GE(e.rows.back().estimate, kLogPhi - 1e-12);
}

TEST(Entropy, CountEstimatesDecreaseTowardsPerron) {
  for (const auto& x : {builtin_golden_mean(), builtin_even(), builtin_full(2)}) {
    EntropyEstimate e = pattern_count_entropy(x, 1, 40);
    double h = perron_entropy(x).value;
    for (const auto& r : e.rows) EXPECT_GE(r.estimate, h - 1e-9) << x.name;
    EXPECT_NEAR(e.rows.back().estimate, h, 0.05) << x.name;
  }
}

TEST(Entropy, LedrappierBoxes) {
  EntropyEstimate e = pattern_count_entropy(builtin_ledrappier(), 0, 10);
  for (const auto& r : e.rows) {
    EXPECT_EQ(r.cells, static_cast<std::size_t>((r.n + 1) * (r.n + 1)));
    EXPECT_EQ(r.count, BigInt(1) << (2 * r.n + 1));
    EXPECT_NEAR(r.estimate, (2 * r.n + 1) * std::log(2.0) / ((r.n + 1) * (r.n + 1)), 1e-12);
  }
}

TEST(Entropy, HardBallBoxesDecrease) {
  EntropyEstimate e = pattern_count_entropy(builtin_hard_ball(2), 1, 6);
  for (std::size_t i = 1; i < e.rows.size(); ++i) EXPECT_LE(e.rows[i].estimate, e.rows[i - 1].estimate + 1e-12);
  EXPECT_GT(e.rows.back().estimate, 0.4);
  EXPECT_LT(e.rows.back().estimate, std::log(2.0));
}

TEST(Entropy, ImageCountsBoundedByDomainCounts) {
  std::mt19937_64 rng(53);
  for (const auto& x : {builtin_full(2), builtin_golden_mean(), builtin_even()}) {
    for (int t = 0; t < 10; ++t) {
      CellularAutomaton tau = oracle::random_ca(rng, 2, 1 + static_cast<int>(rng() % 3));
      ImageEntropyReport rep = image_entropy_check(tau, x, 1, 8);
      EXPECT_TRUE(rep.ok()) << x.name;
      EXPECT_EQ(rep.violations(), 0u);
    }
  }
}

TEST(Entropy, ImageOfFullShiftUnderMajorityLosesEntropy) {
  ImageEntropyReport rep = image_entropy_check(majority_ca(), builtin_full(2), 1, 10);
  ASSERT_TRUE(rep.image_perron && rep.domain_perron);
  EXPECT_LT(rep.image_perron->value, rep.domain_perron->value - 0.05);
}

TEST(Entropy, NoSurjectionOntoLargerAlphabet) {
  NoSurjectionReport r = no_surjection_bigger_alphabet_check(2, 3, 20, 59);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.trials.size(), 20u);
  for (const auto& t : r.trials) {
    ASSERT_TRUE(t.goe_word.has_value());
    EXPECT_EQ(oracle::preimage_count(t.ca, *t.goe_word), 0u);
  }
}

TEST(Entropy, TilingBound) {
  TilingEntropyReport g = tiling_entropy_bound_check(builtin_golden_mean(), FiniteSubset::interval(0, 1), 2, 12);
  EXPECT_TRUE(g.applicable);
  EXPECT_TRUE(g.ok());
  TilingEntropyReport h = tiling_entropy_bound_check(builtin_hard_ball(2), FiniteSubset::box({0, 0}, {1, 1}), 1, 4);
  EXPECT_TRUE(h.ok());
  TilingEntropyReport f = tiling_entropy_bound_check(builtin_full(2), FiniteSubset::interval(0, 1), 1, 4);
  EXPECT_FALSE(f.applicable);
}

TEST(Entropy, RandomAutomataAreSeedDeterministic) {
  std::mt19937_64 a(61), b(61);
  EXPECT_EQ(random_ca_1d(a, 3, 2, -1, 3), random_ca_1d(b, 3, 2, -1, 3));
}
