#include <gtest/gtest.h>

#include <random>

#include "goelab/catalog.hpp"
#include "goelab/sofic.hpp"
#include "goelab/subshift.hpp"
#include "oracles.hpp"

using namespace goelab;

namespace {

// No translate of a forbidden pattern inside the window matches.
bool admissible(const SFTPresentation& x, const FiniteSubset& window, const std::vector<Symbol>& v) {
  for (const auto& p : x.forbidden())
    for (const auto& t : window) {
      GroupElement shift = mul(t, inverse(p.support()[0]));
      bool inside = true, match = true;
      for (std::size_t k = 0; k < p.size() && inside; ++k) {
        GroupElement c = mul(shift, p.support()[k]);
        std::size_t i = window.index_of(c);
        if (i == window.size()) inside = false;
        else if (v[i] != p.values()[k]) match = false;
      }
      if (inside && match) return false;
    }
  return true;
}

std::uint64_t count_admissible(const SFTPresentation& x, const FiniteSubset& window) {
  std::uint64_t c = 0;
  for (const auto& v : oracle::all_words(x.alphabet().size(), window.size()))
    if (admissible(x, window, v)) ++c;
  return c;
}

// Even shift language: every 0-block between two 1s has even length.
bool even_member(const std::vector<Symbol>& w) {
  int last = -1;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[static_cast<std::size_t>(i)] == 1) {
      if (last >= 0 && (i - last - 1) % 2 != 0) return false;
      last = i;
    }
  return true;
}

SoficPresentation1D random_graph(std::mt19937_64& rng, std::size_t v, std::size_t a) {
  std::vector<LabeledEdge> e;
  for (std::uint32_t i = 0; i < v; ++i)
    for (std::uint32_t j = 0; j < v; ++j)
      for (Symbol c = 0; c < a; ++c)
        if (rng() % 4 == 0) e.push_back({i, j, c});
  return SoficPresentation1D(Alphabet::digits(a), v, e);
}

}  // namespace

TEST(Subshift, GoldenMeanCountsAreFibonacci) {
  SoficPresentation1D g = sft_to_sofic(golden_mean_sft());
  auto c = language_counts(determinize_dfa(g), 30);
  EXPECT_EQ(c[1], 2);
  EXPECT_EQ(c[2], 3);
  for (std::size_t n = 3; n <= 30; ++n) EXPECT_EQ(c[n], c[n - 1] + c[n - 2]);
}

TEST(Subshift, EvenShiftCountsMatchBruteForce) {
  SoficPresentation1D e = even_shift();
  for (std::size_t n = 1; n <= 12; ++n) {
    std::uint64_t expect = 0;
    for (const auto& w : oracle::all_words(2, n)) expect += even_member(w);
    EXPECT_EQ(language_count(e, n), expect) << "n=" << n;
  }
}

TEST(Subshift, EvenShiftRecurrence) {
  auto c = language_counts(determinize_dfa(even_shift()), 25);
  for (std::size_t n = 3; n <= 25; ++n) EXPECT_EQ(c[n], c[n - 1] + c[n - 2] + 1);
}

TEST(Subshift, TernaryShiftCounts) {
  SoficPresentation1D t = as_sofic(fiorenzi_ternary_shift());
  for (std::size_t n = 1; n <= 8; ++n) {
    EXPECT_EQ(language_count(t, n), count_admissible(fiorenzi_ternary_shift().sft(), FiniteSubset::interval(0, static_cast<int>(n) - 1)));
  }
}

TEST(Subshift, DeterminizePreservesLanguage) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    SoficPresentation1D g = random_graph(rng, 1 + rng() % 4, 2);
    Dfa d = determinize_dfa(g);
    for (std::size_t n = 0; n <= 7; ++n)
      for (const auto& w : oracle::all_words(2, n)) {
        bool expect = oracle::occurs(g, w);
        EXPECT_EQ(word_appears(g, w), expect);
        EXPECT_EQ(dfa_accepts(d, w), expect);
      }
    EXPECT_TRUE(sofic_equal(g, determinize(g)).equal);
    EXPECT_TRUE(determinize(g).is_deterministic());
  }
}

TEST(Subshift, TrimKeepsLanguageAndIsEssential) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 30; ++t) {
    SoficPresentation1D g = random_graph(rng, 1 + rng() % 5, 2);
    SoficPresentation1D tg = trim(g);
    EXPECT_TRUE(tg.is_essential());
    for (const auto& w : oracle::all_words(2, 5)) EXPECT_EQ(oracle::occurs(tg, w), oracle::occurs(g, w));
  }
}

TEST(Subshift, GoldenAndEvenDiffer) {
  SoficComparison c = sofic_equal(sft_to_sofic(golden_mean_sft()), even_shift());
  EXPECT_FALSE(c.equal);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_EQ(*c.witness, (std::vector<Symbol>{1, 1}));
  EXPECT_TRUE(word_appears(even_shift(), {1, 0, 0, 1}));
  EXPECT_FALSE(word_appears(even_shift(), {1, 0, 1}));
}

TEST(Subshift, HardBallCounts) {
  EXPECT_EQ(locally_admissible_count(hard_ball(1), FiniteSubset::interval(0, 3)), 8);
  for (int n = 1; n <= 3; ++n) {
    FiniteSubset box = FiniteSubset::box({0, 0}, {n, n});
    EXPECT_EQ(locally_admissible_count(hard_ball(2), box), count_admissible(hard_ball(2), box));
  }
  EXPECT_EQ(locally_admissible_count(hard_ball(2), FiniteSubset::box({0, 0}, {1, 1})), 7);
}

TEST(Subshift, LedrappierCounts) {
  for (int n = 0; n <= 3; ++n) {
    FiniteSubset box = FiniteSubset::box({0, 0}, {n, n});
    BigInt expect = BigInt(1) << (2 * n + 1);
    EXPECT_EQ(locally_admissible_count(ledrappier(), box), expect) << "n=" << n;
    EXPECT_EQ(locally_admissible_count(ledrappier(), box), count_admissible(ledrappier(), box));
  }
}

TEST(Subshift, Irreducibility) {
  EXPECT_TRUE(irreducible(sft_to_sofic(golden_mean_sft())));
  EXPECT_TRUE(irreducible(even_shift()));
  EXPECT_TRUE(irreducible(period_two_shift()));
  SoficPresentation1D zero(binary_alphabet(), 1, {{0, 0, 0}}), one(binary_alphabet(), 1, {{0, 0, 1}});
  EXPECT_FALSE(irreducible(disjoint_union(zero, one)));
  // Either copy alone presents the full shift.
  EXPECT_TRUE(irreducible(disjoint_union(full_shift(2), full_shift(2))));
}

TEST(Subshift, MixingGap) {
  EXPECT_TRUE(mixing_gap(sft_to_sofic(golden_mean_sft())).has_value());
  EXPECT_TRUE(mixing_gap(full_shift(2)).has_value());
  EXPECT_FALSE(mixing_gap(period_two_shift()).has_value());
}

TEST(Subshift, GluingOnGoldenMean) {
  const SFTPresentation& g = golden_mean_sft();
  FiniteSubset a = FiniteSubset::interval(0, 0), b = FiniteSubset::interval(1, 1), c = FiniteSubset::interval(2, 2);
  EXPECT_TRUE(gluing_test(g, a, b, FiniteSubset::interval(0, 1)).has_value());
  EXPECT_FALSE(gluing_test(g, a, c, FiniteSubset::interval(0, 2)).has_value());
}

TEST(Subshift, BuiltinsByName) {
  for (const char* name : {"golden_mean", "even", "ledrappier", "full_2", "period_two", "hard_ball_2"})
    EXPECT_TRUE(builtin_by_name(name).has_value()) << name;
  EXPECT_FALSE(builtin_by_name("nope").has_value());
}

TEST(Subshift, InvalidPresentations) {
  EXPECT_THROW(SoficPresentation1D(binary_alphabet(), 1, {{0, 1, 0}}), Error);
  EXPECT_THROW(SoficPresentation1D(binary_alphabet(), 1, {{0, 0, 2}}), Error);
  EXPECT_THROW(SFTPresentation(GroupDescriptor::zd(1), binary_alphabet(), {word_to_pattern({2})}), Error);
}
