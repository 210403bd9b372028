#include <gtest/gtest.h>

#include <random>

#include "goelab/pattern.hpp"

using namespace goelab;

TEST(Pattern, EnumeratorIndexRoundTrip) {
  FiniteSubset box = FiniteSubset::box({0, 0}, {1, 2});
  PatternEnumerator en(box, 3);
  EXPECT_EQ(en.count(), 729u);
  for (std::uint64_t i = 0; i < en.count(); ++i) EXPECT_EQ(en.index_of(en.pattern_at(i)), i);
}

TEST(Pattern, FirstSupportPointIsMostSignificant) {
  PatternEnumerator en(FiniteSubset::interval(0, 2), 2);
  EXPECT_EQ(en.pattern_at(1).values(), (std::vector<Symbol>{0, 0, 1}));
  EXPECT_EQ(en.pattern_at(4).values(), (std::vector<Symbol>{1, 0, 0}));
}

TEST(Pattern, EnumerationCap) {
  EXPECT_FALSE(bounded_power(2, 64, ~std::uint64_t{0}).has_value());
  EXPECT_EQ(bounded_power(3, 4, 100), std::optional<std::uint64_t>(81));
  EXPECT_FALSE(bounded_power(3, 5, 100).has_value());
  EXPECT_THROW(PatternEnumerator(FiniteSubset::interval(0, 40), 2), Error);
}

TEST(Pattern, TranslationIsALeftAction) {
  std::mt19937_64 rng(3);
  for (auto g : {GroupDescriptor::zd(2), GroupDescriptor::free_group(2)}) {
    FiniteSubset pool = ball(g, 2);
    for (int t = 0; t < 50; ++t) {
      std::vector<std::pair<GroupElement, Symbol>> cells;
      for (const auto& e : pool)
        if (rng() % 2) cells.emplace_back(e, static_cast<Symbol>(rng() % 3));
      Pattern p = Pattern::from_cells(g, cells);
      GroupElement a = pool[rng() % pool.size()], b = pool[rng() % pool.size()];
      EXPECT_EQ(translate_pattern(a, translate_pattern(b, p)), translate_pattern(mul(a, b), p));
      EXPECT_EQ(translate_pattern(GroupElement::identity(g), p), p);
    }
  }
}

TEST(Pattern, ShiftMovesMassForward) {
  // (gx)(h) = x(g^-1 h)
  FiniteConfig delta(0, word_to_pattern({1}));
  FiniteConfig moved = translate_config(GroupElement::integer(2), delta);
  EXPECT_EQ(moved.at(GroupElement::integer(2)), 1);
  EXPECT_EQ(moved.at(GroupElement::integer(0)), 0);
}

TEST(Pattern, Restrict) {
  Pattern p = word_to_pattern({1, 0, 2, 1});
  Pattern r = p.restrict(FiniteSubset::interval(1, 2));
  EXPECT_EQ(r.values(), (std::vector<Symbol>{0, 2}));
  EXPECT_EQ(r.at(GroupElement::integer(2)), std::optional<Symbol>(2));
  EXPECT_FALSE(r.at(GroupElement::integer(0)).has_value());
}

TEST(Pattern, FiniteConfigNormalizes) {
  FiniteConfig a(0, word_to_pattern({0, 1, 0}));
  FiniteConfig b(0, Pattern::from_cells(GroupDescriptor::zd(1), {{GroupElement::integer(1), 1}}));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.deviation().size(), 1u);
}

TEST(Pattern, PeriodicConfigWraps) {
  PeriodicConfig x({2, 3}, {0, 1, 2, 3, 4, 5});
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j)
      EXPECT_EQ(x.at(GroupElement::vec({i, j})), x.at(GroupElement::vec({i + 2, j - 3})));
  for (std::size_t k = 0; k < x.cells().size(); ++k) EXPECT_EQ(x.offset(x.element(k)), k);
  EXPECT_THROW(PeriodicConfig({2}, {0, 1, 0}), Error);
}

TEST(Pattern, AlphabetWords) {
  Alphabet a({"x", "y", "z"});
  EXPECT_EQ(a.parse_word("zyx"), (std::vector<Symbol>{2, 1, 0}));
  EXPECT_EQ(a.format_word({0, 2}), "xz");
  EXPECT_THROW(a.parse_word("xw"), Error);
  EXPECT_EQ(Alphabet::digits(2), Alphabet({"0", "1"}));
}
