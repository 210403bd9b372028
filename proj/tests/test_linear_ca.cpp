#include <gtest/gtest.h>

#include <random>

#include "goelab/catalog.hpp"
#include "goelab/freegroup_lab.hpp"
#include "goelab/linear_ca.hpp"
#include "oracles.hpp"

using namespace goelab;

namespace {

GroupRingElement z_poly(std::uint32_t p, const std::vector<std::pair<int, std::int64_t>>& terms) {
  std::vector<std::pair<GroupElement, std::int64_t>> t;
  for (auto [e, c] : terms) t.emplace_back(GroupElement::integer(e), c);
  return GroupRingElement(GroupDescriptor::zd(1), p, t);
}

GroupRingElement random_element(std::mt19937_64& rng, const GroupDescriptor& g, std::uint32_t p) {
  GroupRingElement r(g, p);
  for (const auto& e : ball(g, 1)) r.add(e, static_cast<std::int64_t>(rng() % p));
  return r;
}

MatrixCA one_plus_u() {
  MatrixCA m = MatrixCA::zero(GroupDescriptor::zd(1), 2, 1);
  m.at(0, 0) = z_poly(2, {{0, 1}, {1, 1}});
  return m;
}

}  // namespace

TEST(LinearCA, ConvolutionExamples) {
  EXPECT_EQ(z_poly(2, {{0, 1}, {1, 1}}) * z_poly(2, {{0, 1}, {1, 1}}), z_poly(2, {{0, 1}, {2, 1}}));
  EXPECT_EQ(z_poly(3, {{0, 1}, {1, 1}}) * z_poly(3, {{0, 1}, {1, -1}}), z_poly(3, {{0, 1}, {2, -1}}));
  GroupDescriptor g = f2();
  GroupRingElement a = GroupRingElement::delta(g, 2, f2_letter(1)), ai = GroupRingElement::delta(g, 2, f2_letter(-1));
  EXPECT_EQ(a * ai, GroupRingElement::delta(g, 2, GroupElement::identity(g)));
  GroupRingElement b = GroupRingElement::delta(g, 2, f2_letter(2));
  EXPECT_NE(a * b, b * a);
  EXPECT_TRUE((a + a).is_zero());
}

TEST(LinearCA, InvolutionLaws) {
  std::mt19937_64 rng(67);
  for (auto g : {GroupDescriptor::zd(1), GroupDescriptor::zd(2), f2()}) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
      GroupRingElement r = random_element(rng, g, p), s = random_element(rng, g, p), t = random_element(rng, g, p);
      EXPECT_EQ(involution(involution(r)), r);
      EXPECT_EQ(involution(r * s), involution(s) * involution(r));
      EXPECT_EQ(involution(r + s), involution(r) + involution(s));
      EXPECT_EQ((r * s) * t, r * (s * t));
      EXPECT_EQ(r * (s + t), r * s + r * t);
    }
  }
}

TEST(LinearCA, RejectsNonPrimeField) { EXPECT_THROW(GroupRingElement(GroupDescriptor::zd(1), 4), Error); }

TEST(LinearCA, OnePlusUIsRule102) {
  CellularAutomaton t = to_cellular_automaton(one_plus_u());
  ASSERT_EQ(t.input(), binary_alphabet());
  EXPECT_TRUE(extensionally_equal(t, wolfram_rule(102)));
}

TEST(LinearCA, RulesAreAdditive) {
  std::mt19937_64 rng(71);
  for (auto g : {GroupDescriptor::zd(1), f2()})
    for (std::uint32_t p : {2u, 3u}) {
      std::size_t d = p == 2 ? 2 : 1;
      MatrixCA m = random_matrix(rng, g, p, d, g.is_zd() ? FiniteSubset::interval(-1, 1) : f2_unit_ball());
      EXPECT_TRUE(additive_table(to_cellular_automaton(m), p, d, 1u << 16, 3));
    }
}

TEST(LinearCA, ProductIsComposition) {
  std::mt19937_64 rng(73);
  for (auto g : {GroupDescriptor::zd(1), GroupDescriptor::zd(2)})
    for (int t = 0; t < 5; ++t) {
      FiniteSubset s = ball(g, 1);
      MatrixCA m = random_matrix(rng, g, 2, 1, s), n = random_matrix(rng, g, 2, 1, s);
      EXPECT_TRUE(extensionally_equal(to_cellular_automaton(m * n),
                                      compose(to_cellular_automaton(m), to_cellular_automaton(n))));
    }
  std::mt19937_64 r2(79);
  MatrixCA m = random_matrix(r2, GroupDescriptor::zd(1), 3, 2, FiniteSubset::interval(0, 1));
  MatrixCA n = random_matrix(r2, GroupDescriptor::zd(1), 3, 2, FiniteSubset::interval(-1, 0));
  EXPECT_TRUE(extensionally_equal(to_cellular_automaton(m * n), compose(to_cellular_automaton(m), to_cellular_automaton(n))));
}

TEST(LinearCA, AdjointIsAnInvolution) {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 10; ++t) {
    MatrixCA m = random_matrix(rng, f2(), 3, 2, f2_unit_ball());
    EXPECT_EQ(adjoint(adjoint(m)), m);
    MatrixCA n = random_matrix(rng, f2(), 3, 2, f2_unit_ball());
    EXPECT_EQ(adjoint(m * n), adjoint(n) * adjoint(m));
  }
}

TEST(LinearCA, PairingIdentity) {
  std::mt19937_64 rng(89);
  for (auto g : {GroupDescriptor::zd(1), f2()}) {
    MatrixCA m = random_matrix(rng, g, 2, 2, g.is_zd() ? FiniteSubset::interval(-1, 1) : f2_unit_ball());
    EXPECT_TRUE(pairing_identity_check(m, 20, 5, 2, 3).ok());
  }
  EXPECT_TRUE(pairing_identity_check(muller_myhill_ca(), 20, 7, 2, 3).ok());
}

TEST(LinearCA, MemorySetIsUnionOfSupports) {
  EXPECT_EQ(one_plus_u().memory(), FiniteSubset::interval(0, 1));
  EXPECT_FALSE(muller_myhill_ca().memory().contains(GroupElement::identity(f2())));
  EXPECT_EQ(MatrixCA::zero(GroupDescriptor::zd(1), 2, 1).memory(), FiniteSubset::interval(0, 0));
}

TEST(LinearCA, ZeroMatrixKernel) {
  for (std::size_t d : {1u, 2u, 3u}) {
    MatrixCA z = MatrixCA::zero(GroupDescriptor::zd(1), 2, d);
    EXPECT_EQ(kernel_finite_support(z, 0).basis.size(), d);
    EXPECT_EQ(kernel_finite_support(z, 2).basis.size(), 5 * d);
  }
  EXPECT_TRUE(kernel_finite_support(MatrixCA::identity(f2(), 3, 2), 2).trivial());
}

TEST(LinearCA, KernelElementsMapToZero) {
  MatrixCA m(2, 1, {{z_poly(2, {{-1, 1}, {1, 1}})}});  // x(g-1) + x(g+1)
  KernelResult k = kernel_finite_support(m, 3);
  EXPECT_TRUE(k.trivial());
  MatrixCA deficient(2, 2, {{z_poly(2, {{0, 1}}), z_poly(2, {{0, 1}})}, {z_poly(2, {{0, 1}}), z_poly(2, {{0, 1}})}});
  KernelResult kd = kernel_finite_support(deficient, 1);
  EXPECT_EQ(kd.basis.size(), 3u);
  CellularAutomaton t = to_cellular_automaton(deficient);
  for (const auto& p : kd.basis) {
    FiniteConfig x(0, p);
    EXPECT_FALSE(x == FiniteConfig::constant(GroupDescriptor::zd(1), 0));
    EXPECT_EQ(apply_to_finite_config(t, x), FiniteConfig::constant(GroupDescriptor::zd(1), 0));
  }
}

TEST(LinearCA, DualityOverZ) {
  DualityReport r = duality_check(one_plus_u());
  EXPECT_TRUE(r.surjective && r.preinjective && r.adjoint_surjective && r.adjoint_preinjective);
  MatrixCA deficient(2, 2, {{z_poly(2, {{0, 1}}), z_poly(2, {{1, 1}})}, {z_poly(2, {{0, 1}}), z_poly(2, {{1, 1}})}});
  DualityReport d = duality_check(deficient);
  EXPECT_FALSE(d.surjective);
  EXPECT_FALSE(d.preinjective);
  EXPECT_TRUE(d.ok());
  std::mt19937_64 rng(97);
  for (int t = 0; t < 10; ++t)
    EXPECT_TRUE(duality_check(random_matrix(rng, GroupDescriptor::zd(1), 2, 2, FiniteSubset::interval(0, 1))).ok());
}
