#include <gtest/gtest.h>

#include <random>

#include "goelab/automaton.hpp"
#include "goelab/catalog.hpp"
#include "goelab/freegroup_lab.hpp"
#include "oracles.hpp"

using namespace goelab;

TEST(Automaton, WolframRoundTrip) {
  for (int n = 0; n < 256; ++n) EXPECT_EQ(wolfram_number(wolfram_rule(n)), n);
  EXPECT_THROW(wolfram_rule(256), Error);
}

TEST(Automaton, WolframTableConvention) {
  // Rule 2 outputs 1 only on the window (x(-1), x(0), x(1)) = (0, 0, 1).
  CellularAutomaton r2 = wolfram_rule(2);
  FiniteConfig delta(0, word_to_pattern({1}));
  FiniteConfig img = apply_to_finite_config(r2, delta);
  EXPECT_EQ(img, FiniteConfig(0, word_to_pattern({1}, -1)));
}

TEST(Automaton, FromRuleWindowOrder) {
  CellularAutomaton left = CellularAutomaton::from_rule(GroupDescriptor::zd(1), binary_alphabet(), binary_alphabet(),
                                                        FiniteSubset::interval(-1, 0),
                                                        [](const std::vector<Symbol>& y) { return y[0]; });
  EXPECT_EQ(wolfram_number(left), 240);
}

TEST(Automaton, TableValidation) {
  GroupDescriptor z = GroupDescriptor::zd(1);
  EXPECT_THROW(CellularAutomaton(z, binary_alphabet(), binary_alphabet(), FiniteSubset::interval(0, 1), {0, 1, 1}),
               Error);
  EXPECT_THROW(CellularAutomaton(z, binary_alphabet(), binary_alphabet(), FiniteSubset::interval(0, 0), {0, 2}), Error);
}

TEST(Automaton, ComposeMatchesPointwise) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    CellularAutomaton s = oracle::random_ca(rng, 3, 2), u = oracle::random_ca(rng, 3, 3);
    CellularAutomaton c = compose(s, u);
    for (int k = 0; k < 5; ++k) {
      FiniteConfig x = oracle::random_finite_config(rng, GroupDescriptor::zd(1), 3, 4);
      EXPECT_EQ(apply_to_finite_config(c, x), apply_to_finite_config(s, apply_to_finite_config(u, x)));
    }
  }
  CellularAutomaton m = muller_moore_ca();
  CellularAutomaton mm = compose(m, m);
  EXPECT_EQ(mm.memory(), ball(f2(), 2));
  for (int k = 0; k < 10; ++k) {
    FiniteConfig x = oracle::random_finite_config(rng, f2(), 2, 2);
    EXPECT_EQ(apply_to_finite_config(mm, x), apply_to_finite_config(m, apply_to_finite_config(m, x)));
  }
}

TEST(Automaton, MinimalMemorySet) {
  EXPECT_EQ(minimal_memory_set(wolfram_rule(204)).memory(), FiniteSubset::interval(0, 0));
  EXPECT_EQ(minimal_memory_set(wolfram_rule(170)).memory(), FiniteSubset::interval(1, 1));
  EXPECT_EQ(minimal_memory_set(wolfram_rule(102)).memory(), FiniteSubset::interval(0, 1));
  EXPECT_TRUE(minimal_memory_set(wolfram_rule(0)).memory().empty());
  EXPECT_EQ(minimal_memory_set(wolfram_rule(232)).memory(), FiniteSubset::interval(-1, 1));
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    CellularAutomaton tau = oracle::random_ca(rng, 2, 3);
    CellularAutomaton m = minimal_memory_set(tau);
    EXPECT_TRUE(extensionally_equal(tau, m));
    EXPECT_TRUE(m.memory().subset_of(tau.memory()));
    for (std::size_t j = 0; j < m.memory().size(); ++j) EXPECT_TRUE(depends_on(m, j));
  }
}

TEST(Automaton, EnlargedMemoryIsExtensionallyEqual) {
  CellularAutomaton r = wolfram_rule(110);
  CellularAutomaton big = with_memory_set(r, FiniteSubset::interval(-3, 2));
  EXPECT_EQ(big.table().size(), 64u);
  EXPECT_TRUE(extensionally_equal(r, big));
  EXPECT_FALSE(extensionally_equal(r, wolfram_rule(111)));
}

TEST(Automaton, ImageSupportBound) {
  // supp(tau(x) - tau(bg)) lies in supp(x - bg) S^-1.
  std::mt19937_64 rng(13);
  for (auto g : {GroupDescriptor::zd(1), GroupDescriptor::zd(2), f2()}) {
    for (int t = 0; t < 20; ++t) {
      FiniteSubset s = ball(g, 1);
      std::vector<Symbol> table(static_cast<std::size_t>(*bounded_power(2, s.size(), 1u << 20)));
      for (auto& v : table) v = static_cast<Symbol>(rng() % 2);
      CellularAutomaton tau(g, binary_alphabet(), binary_alphabet(), s, table);
      FiniteConfig x = oracle::random_finite_config(rng, g, 2, 2);
      FiniteConfig y = apply_to_finite_config(tau, x);
      FiniteSubset bound = set_product(x.deviation().support(), set_inverse(s));
      EXPECT_TRUE(y.deviation().support().subset_of(bound));
      EXPECT_EQ(y.background(), tau.eval_at(GroupElement::identity(g), [&](const GroupElement&) { return x.background(); }));
    }
  }
}

TEST(Automaton, Equivariance) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) EXPECT_TRUE(equivariance_spot_check(oracle::random_ca(rng, 2, 3), 20, t).ok);
  EXPECT_TRUE(equivariance_spot_check(muller_moore_ca(), 20, 1).ok);
  EXPECT_TRUE(equivariance_spot_check(majority_von_neumann(), 20, 2).ok);
}

TEST(Automaton, EquivarianceCatchesPositionDependentMaps) {
  auto pinned = [](const CellularAutomaton& tau, const FiniteConfig& x) {
    FiniteConfig y = apply_to_finite_config(tau, x);
    const GroupElement e = GroupElement::identity(tau.group());
    std::vector<std::pair<GroupElement, Symbol>> cells{{e, static_cast<Symbol>(1 - y.at(e))}};
    for (std::size_t i = 0; i < y.deviation().size(); ++i)
      if (y.deviation().support()[i] != e) cells.emplace_back(y.deviation().support()[i], y.deviation().values()[i]);
    return FiniteConfig(y.background(), Pattern::from_cells(tau.group(), cells));
  };
  EquivarianceResult r = equivariance_spot_check(wolfram_rule(110), 50, 0, pinned);
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(r.shift.has_value());
}

TEST(Automaton, PeriodicImageAgreesWithFinite) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    CellularAutomaton tau = oracle::random_ca(rng, 2, 3);
    PeriodicConfig x({5}, {1, 0, 0, 1, 1});
    PeriodicConfig y = apply_to_periodic(tau, x);
    for (int g = -6; g <= 6; ++g)
      EXPECT_EQ(y.at(GroupElement::integer(g)),
                tau.eval_at(GroupElement::integer(g), [&](const GroupElement& e) { return x.at(e); }));
  }
}
