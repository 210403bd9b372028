#include <gtest/gtest.h>

#include <random>
#include <set>

#include "goelab/group.hpp"

using namespace goelab;

namespace {

std::vector<GroupDescriptor> groups() {
  return {GroupDescriptor::zd(1), GroupDescriptor::zd(2), GroupDescriptor::zd(3), GroupDescriptor::free_group(2),
          GroupDescriptor::free_group(3)};
}

}  // namespace

TEST(Group, Axioms) {
  std::mt19937_64 rng(7);
  for (const auto& g : groups()) {
    FiniteSubset pool = ball(g, 3);
    auto pick = [&] { return pool[rng() % pool.size()]; };
    GroupElement e = GroupElement::identity(g);
    for (int t = 0; t < 200; ++t) {
      GroupElement x = pick(), y = pick(), z = pick();
      EXPECT_EQ(mul(mul(x, y), z), mul(x, mul(y, z)));
      EXPECT_EQ(mul(x, e), x);
      EXPECT_EQ(mul(e, x), x);
      EXPECT_TRUE(mul(x, inverse(x)).is_identity());
      EXPECT_EQ(inverse(mul(x, y)), mul(inverse(y), inverse(x)));
    }
  }
}

TEST(Group, FreeReduction) {
  EXPECT_TRUE(GroupElement::word(2, {1, -1}).is_identity());
  EXPECT_EQ(GroupElement::word(2, {1, 2, -2, 1}), GroupElement::word(2, {1, 1}));
  GroupElement ab = GroupElement::word(2, {1, 2});
  GroupElement ba = GroupElement::word(2, {2, 1});
  EXPECT_NE(ab, ba);
  EXPECT_EQ(ab.length(), 2);
}

TEST(Group, FreeElementTextRoundTrip) {
  GroupDescriptor g = GroupDescriptor::free_group(2);
  for (const auto& e : ball(g, 3)) EXPECT_EQ(parse_free_element(g, to_string(g, e)), e);
}

TEST(Group, MixedGroupsRejected) {
  try {
    mul(GroupElement::integer(1), GroupElement::word(2, {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::descriptor_mismatch);
  }
}

TEST(Group, SetAlgebraMatchesStdSet) {
  std::mt19937_64 rng(11);
  for (const auto& g : groups()) {
    FiniteSubset pool = ball(g, 2);
    for (int t = 0; t < 30; ++t) {
      std::vector<GroupElement> va, vb;
      for (const auto& e : pool) {
        if (rng() % 3 == 0) va.push_back(e);
        if (rng() % 3 == 0) vb.push_back(e);
      }
      FiniteSubset a(g, va), b(g, vb);
      std::set<GroupElement> sa(va.begin(), va.end()), sb(vb.begin(), vb.end());
      std::set<GroupElement> u = sa, i, d, prod, inv;
      u.insert(sb.begin(), sb.end());
      for (const auto& x : sa) {
        if (sb.count(x)) i.insert(x);
        else d.insert(x);
        inv.insert(inverse(x));
        for (const auto& y : sb) prod.insert(mul(x, y));
      }
      auto as_set = [](const FiniteSubset& s) { return std::set<GroupElement>(s.begin(), s.end()); };
      EXPECT_EQ(as_set(set_union(a, b)), u);
      EXPECT_EQ(as_set(set_intersection(a, b)), i);
      EXPECT_EQ(as_set(set_difference(a, b)), d);
      EXPECT_EQ(as_set(set_product(a, b)), prod);
      EXPECT_EQ(as_set(set_inverse(a)), inv);
    }
  }
}

TEST(Group, SubsetIsSortedAndDeduplicated) {
  GroupDescriptor g = GroupDescriptor::zd(1);
  FiniteSubset s(g, {GroupElement::integer(3), GroupElement::integer(-1), GroupElement::integer(3)});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], GroupElement::integer(-1));
  EXPECT_TRUE(s.contains(GroupElement::integer(3)));
  EXPECT_FALSE(s.contains(GroupElement::integer(0)));
}

TEST(Group, BallAndSphereSizes) {
  GroupDescriptor f2 = GroupDescriptor::free_group(2);
  std::vector<std::uint64_t> spheres{1, 4, 12, 36, 108};
  for (int n = 0; n < 5; ++n) EXPECT_EQ(sphere_size(f2, n), spheres[static_cast<std::size_t>(n)]);
  GroupDescriptor z2 = GroupDescriptor::zd(2);
  for (int n = 0; n < 6; ++n) EXPECT_EQ(ball_size(z2, n), static_cast<std::uint64_t>(2 * n * n + 2 * n + 1));
  for (const auto& g : groups())
    for (int n = 0; n < 4; ++n) EXPECT_EQ(ball(g, n).size(), ball_size(g, n)) << g.to_string() << " n=" << n;
}

TEST(Group, BallIsSymmetricAndNested) {
  for (const auto& g : groups()) {
    FiniteSubset b1 = ball(g, 1), b2 = ball(g, 2);
    EXPECT_EQ(set_inverse(b2), b2);
    EXPECT_TRUE(b1.subset_of(b2));
    EXPECT_EQ(set_product(b1, b1), b2);
  }
}

TEST(Group, FolnerDefectOfCubes) {
  for (int d = 1; d <= 3; ++d) {
    GroupDescriptor g = GroupDescriptor::zd(d);
    for (int n = 1; n <= 4; ++n) {
      FiniteSubset f = folner_set(g, n);
      for (const auto& s : symmetric_generators(g)) EXPECT_EQ(folner_defect(f, s), Rational(1, 2 * n + 1));
    }
  }
}

TEST(Group, FreeBallsAreNotFolner) {
  GroupDescriptor g = GroupDescriptor::free_group(2);
  std::int64_t p = 1;
  for (int n = 1; n <= 5; ++n) {
    p *= 3;
    EXPECT_EQ(folner_defect(ball(g, n), GroupElement::word(2, {1})), Rational(p, 2 * p - 1));
  }
}

TEST(Group, GrowthRates) {
  auto z = growth_rate_estimate(GroupDescriptor::zd(2), 100);
  EXPECT_LT(z.back().ball_root, 1.15);
  auto f = growth_rate_estimate(GroupDescriptor::free_group(2), 12);
  EXPECT_NEAR(f.back().sphere_root, 3.0, 0.2);
  // |B_n| = 2 3^n - 1, so the roots decrease towards 3 from above.
  for (std::size_t i = 1; i < f.size(); ++i) {
    EXPECT_LE(f[i].ball_root, f[i - 1].ball_root);
    EXPECT_GE(f[i].ball_root, 3.0);
  }
}

TEST(Group, InvalidDescriptors) {
  EXPECT_THROW(GroupDescriptor::zd(0), Error);
  EXPECT_THROW(GroupDescriptor::free_group(1), Error);
  EXPECT_THROW(GroupDescriptor::free_group(2, {"a", "a"}), Error);
  EXPECT_THROW(folner_set(GroupDescriptor::free_group(2), 1), Error);
}
