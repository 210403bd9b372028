#include <gtest/gtest.h>

#include <random>

#include "goelab/decide1d.hpp"
#include "goelab/freegroup_lab.hpp"

using namespace goelab;

TEST(FreeGroup, ThresholdTable) {
  CellularAutomaton t = muller_moore_ca();
  ASSERT_EQ(t.table().size(), 32u);
  std::size_t ones = 0;
  for (Symbol v : t.table()) ones += v;
  EXPECT_EQ(ones, 16u);
  EXPECT_TRUE(t.memory().contains(GroupElement::identity(f2())));
  EXPECT_EQ(t.memory().size(), 5u);
}

TEST(FreeGroup, DiamondAtEveryRadius) {
  for (int r = 1; r <= 4; ++r) {
    DiamondReport d = verify_ex1_diamond(r);
    EXPECT_TRUE(d.ok()) << "radius " << r;
  }
  EXPECT_THROW(verify_ex1_diamond(0), Error);
}

TEST(FreeGroup, ControlPairIsNotADiamond) {
  GroupDescriptor g = f2();
  FiniteConfig x1 = FiniteConfig::constant(g, 0);
  FiniteConfig x2 = ones_at({GroupElement::identity(g), f2_letter(1), f2_letter(2)});
  DiamondReport d = compare_images(muller_moore_ca(), x1, x2, 2);
  EXPECT_TRUE(d.distinct);
  EXPECT_FALSE(d.equal_everywhere);
}

TEST(FreeGroup, PreimagesOfAllOnes) {
  for (int n = 0; n <= 4; ++n) {
    FiniteSubset b = ball(f2(), n);
    BallConfig y{n, Pattern(b, std::vector<Symbol>(b.size(), 1)), 0};
    PreimageReport p = ex1_preimage(y);
    EXPECT_TRUE(p.ok()) << n;
    EXPECT_EQ(p.x.at(GroupElement::identity(f2())), 0);
  }
}

TEST(FreeGroup, PreimagesOfRandomBalls) {
  std::mt19937_64 rng(101);
  CellularAutomaton tau = muller_moore_ca();
  for (int n = 1; n <= 4; ++n)
    for (int t = 0; t < 10; ++t) {
      BallConfig y = random_ball_config(rng, n);
      PreimageReport p = ex1_preimage(y);
      EXPECT_TRUE(p.verified_full);
      // Independent re-evaluation on B_n.
      for (const auto& c : ball(f2(), n))
        EXPECT_EQ(tau.eval_at(c, [&](const GroupElement& h) { return p.x.at(h); }), y.at(c));
    }
}

TEST(FreeGroup, LinearRuleStructure) {
  MatrixCA m = muller_myhill_ca();
  EXPECT_FALSE(m.memory().contains(GroupElement::identity(f2())));
  EXPECT_EQ(m.memory(), set_difference(f2_unit_ball(), singleton(f2(), GroupElement::identity(f2()))));
  CellularAutomaton t = to_cellular_automaton(m);
  EXPECT_EQ(t.table().size(), 256u);
  for (Symbol s : t.table()) EXPECT_EQ(decode_vector(s, 2, 2)[1], 0u);
}

TEST(FreeGroup, LinearRuleCertificates) {
  Ex2Report r = verify_ex2(3);
  EXPECT_TRUE(r.second_coordinate_zero);
  EXPECT_TRUE(r.delta_image_in_sphere);
  ASSERT_EQ(r.kernels.size(), 4u);
  for (const auto& k : r.kernels) EXPECT_TRUE(k.trivial()) << "radius " << k.radius;
  EXPECT_TRUE(r.ok());
  EXPECT_THROW(verify_ex2(5), Error);
}

TEST(FreeGroup, DeltaImage) {
  CellularAutomaton t = to_cellular_automaton(muller_myhill_ca());
  GroupDescriptor g = f2();
  FiniteConfig delta(0, Pattern(singleton(g, GroupElement::identity(g)), {encode_vector({1, 1}, 2)}));
  FiniteConfig img = apply_to_finite_config(t, delta);
  EXPECT_EQ(img.deviation().size(), 4u);
  for (const auto& c : img.deviation().support()) EXPECT_EQ(c.length(), 1);
  for (Symbol v : img.deviation().values()) EXPECT_EQ(v, encode_vector({1, 0}, 2));
}

TEST(FreeGroup, NoOneDimensionalDecision) {
  EXPECT_THROW(decide_surjective(muller_moore_ca()), Error);
}
