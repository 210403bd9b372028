#include <gtest/gtest.h>

#include <cmath>

#include "goelab/catalog.hpp"
#include "goelab/goe_search.hpp"
#include "oracles.hpp"

using namespace goelab;

TEST(GoeSearch, MajorityWitnessHasNoPreimage) {
  CellularAutomaton r = majority_ca();
  GoeSearchResult g = find_goe_pattern(r, SearchBudget{});
  ASSERT_TRUE(g.found());
  PlacedWord w = pattern_to_word(*g.witness);
  EXPECT_EQ(oracle::preimage_count(r, w.word), 0u);
  EXPECT_TRUE(is_goe_pattern(r, *g.witness));
}

TEST(GoeSearch, LargerWindowsStayGardenOfEden) {
  CellularAutomaton r = majority_ca();
  Pattern p = word_to_pattern({0, 1, 0, 0, 1});
  ASSERT_TRUE(is_goe_pattern(r, p));
  for (const auto& left : oracle::all_words(2, 1))
    for (const auto& right : oracle::all_words(2, 2)) {
      std::vector<Symbol> w = left;
      w.insert(w.end(), p.values().begin(), p.values().end());
      w.insert(w.end(), right.begin(), right.end());
      EXPECT_TRUE(is_goe_pattern(r, word_to_pattern(w, -1)));
    }
}

TEST(GoeSearch, IdentityHasNoWitness) {
  for (auto g : {GroupDescriptor::zd(1), GroupDescriptor::zd(2)}) {
    CellularAutomaton id = identity_ca(g, binary_alphabet());
    EXPECT_FALSE(find_goe_pattern(id, SearchBudget{8, 1u << 16}).found());
    EXPECT_FALSE(find_me_pair(id, SearchBudget{8, 1u << 16}).found());
    EXPECT_EQ(semi_decide(id, SearchBudget{6, 1u << 16}).kind, SemiVerdictKind::unknown);
  }
}

TEST(GoeSearch, MutuallyErasablePairs) {
  CellularAutomaton r = majority_ca();
  EXPECT_TRUE(me_check(r, word_to_pattern({0, 0, 0, 0, 0}), word_to_pattern({0, 0, 1, 0, 0})).erasable);
  EXPECT_FALSE(me_check(r, word_to_pattern({0, 0, 0}), word_to_pattern({0, 1, 0})).erasable);
  MEPairResult m = find_me_pair(r, SearchBudget{});
  ASSERT_TRUE(m.found());
  auto [p, q] = *m.pair;
  EXPECT_FALSE(p == q);
  EXPECT_TRUE(me_check_1d(r, full_shift(2), p, q).erasable);
  EXPECT_TRUE(me_check(r, p, p).erasable);
}

TEST(GoeSearch, MeCheckMatchesOneDimensionalCheck) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    CellularAutomaton tau = oracle::random_ca(rng, 2, 2);
    auto words = oracle::all_words(2, 3);
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        Pattern p = word_to_pattern(words[i]), q = word_to_pattern(words[j]);
        EXPECT_EQ(me_check(tau, p, q).erasable, me_check_1d(tau, full_shift(2), p, q).erasable);
      }
  }
}

TEST(GoeSearch, SemiDecisionOnMajority) {
  SemiVerdict v = semi_decide(majority_ca(), SearchBudget{});
  EXPECT_NE(v.kind, SemiVerdictKind::unknown);
  if (v.goe) {
    EXPECT_TRUE(is_goe_pattern(majority_ca(), *v.goe));
  }
  if (v.me_pair) {
    EXPECT_TRUE(me_check(majority_ca(), v.me_pair->first, v.me_pair->second).erasable);
  }
}

TEST(GoeSearch, WindowScheduleIsNondecreasing) {
  for (int d = 1; d <= 3; ++d) {
    auto s = window_schedule(d, 12);
    std::size_t last = 0;
    for (const auto& sides : s) {
      ASSERT_EQ(sides.size(), static_cast<std::size_t>(d));
      std::size_t cells = 1;
      for (int x : sides) cells *= static_cast<std::size_t>(x);
      EXPECT_LE(cells, 12u);
      EXPECT_GE(cells, last);
      last = cells;
    }
  }
}

TEST(GoeSearch, N0BoundSmallCase) {
  N0Result r = n0_bound(2, 2, 1, 1);
  EXPECT_EQ(r.n0, 5u);
  EXPECT_TRUE(r.exact_verified);
  EXPECT_TRUE(r.holds_at_n0);
  EXPECT_TRUE(r.fails_below);
}

TEST(GoeSearch, N0BoundAgainstDirectInequality) {
  // (k - 2r/n)^d > log_a(a^(k^d) - 1), checked in long double for small parameters.
  for (std::uint64_t a = 2; a <= 3; ++a)
    for (std::uint64_t k = 1; k <= 3; ++k)
      for (std::uint64_t r = 1; r <= 2; ++r) {
        const std::uint64_t d = 1;
        auto holds = [&](std::uint64_t n) {
          if (n * k <= 2 * r) return false;
          long double lhs = std::pow(static_cast<long double>(k) - 2.0L * r / n, static_cast<long double>(d));
          long double rhs = std::log(std::pow(static_cast<long double>(a), static_cast<long double>(k)) - 1) /
                            std::log(static_cast<long double>(a));
          return lhs > rhs;
        };
        std::uint64_t n = 1;
        while (!holds(n)) ++n;
        EXPECT_EQ(n0_bound(a, k, d, r).n0, n) << a << " " << k << " " << r;
      }
}

TEST(GoeSearch, GreedyTilings) {
  for (auto g : {GroupDescriptor::zd(1), GroupDescriptor::zd(2), GroupDescriptor::free_group(2)}) {
    FiniteSubset e = ball(g, 1), window = ball(g, 4);
    Tiling t = greedy_tiling(e, window);
    TilingCheck c = verify_tiling(e, window, t);
    EXPECT_TRUE(c.disjoint);
    EXPECT_TRUE(c.maximal);
    EXPECT_TRUE(c.covers);
    EXPECT_FALSE(t.centers.empty());
  }
}

TEST(GoeSearch, TwoDimensionalXorIsBudgetLimited) {
  SemiVerdict v = semi_decide(xor_three_z2(), SearchBudget{4, 1u << 16});
  EXPECT_EQ(v.kind, SemiVerdictKind::unknown);
}

TEST(GoeSearch, FreeGroupIsUnsupported) {
  CellularAutomaton t = identity_ca(GroupDescriptor::free_group(2), binary_alphabet());
  EXPECT_THROW(find_goe_pattern(t, SearchBudget{}), Error);
}
