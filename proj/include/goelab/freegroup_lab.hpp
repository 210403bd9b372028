#pragma once

// Two automata over the free group F_2 = <a, b>: a threshold rule that is surjective but has a
// diamond, and a linear rule over the Klein four-group that is pre-injective but not surjective.
// Free-group claims are certified on balls B_R only.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "goelab/automaton.hpp"
#include "goelab/error.hpp"
#include "goelab/group.hpp"
#include "goelab/linear_ca.hpp"
#include "goelab/pattern.hpp"

namespace goelab {

inline GroupDescriptor f2() { return GroupDescriptor::free_group(2); }

// {1, a, a^-1, b, b^-1}
inline FiniteSubset f2_unit_ball() { return ball(f2(), 1); }

// A configuration on B_R; cells outside carry the background.
struct BallConfig {
  int radius = 0;
  Pattern cells{f2()};
  Symbol background = 0;
  Symbol at(const GroupElement& g) const { return cells.at_or(g, background); }
};

// tau(x)(g) = 0 when x(g) + x(ga) + x(ga^-1) + x(gb) + x(gb^-1) <= 2, else 1.
inline CellularAutomaton muller_moore_ca() {
  return CellularAutomaton::from_rule(f2(), Alphabet::digits(2), Alphabet::digits(2), f2_unit_ball(),
                                      [](const std::vector<Symbol>& w) {
                                        int s = 0;
                                        for (Symbol v : w) s += v;
                                        return s >= 3 ? 1 : 0;
                                      });
}

struct DiamondReport {
  int radius = 0;
  bool distinct = false;
  bool equal_on_ball = false;  // tau(x1) = tau(x2) on B_R
  bool images_zero = false;    // both images vanish on B_R
  bool structural = false;     // windows of x1, x2 coincide on B_R \ B_1
  bool equal_everywhere = false;  // exact comparison of the almost-constant images
  bool ok() const { return distinct && equal_on_ball && images_zero && structural && equal_everywhere; }
};

// Compares the images of two configurations that are 0 off a finite set.
inline DiamondReport compare_images(const CellularAutomaton& tau, const FiniteConfig& x1, const FiniteConfig& x2, int radius) {
  DiamondReport r;
  r.radius = radius;
  r.distinct = !(x1 == x2);
  FiniteConfig y1 = apply_to_finite_config(tau, x1), y2 = apply_to_finite_config(tau, x2);
  r.equal_everywhere = y1 == y2;
  FiniteSubset b = ball(tau.group(), radius);
  r.equal_on_ball = r.images_zero = true;
  for (const auto& g : b) {
    if (y1.at(g) != y2.at(g)) r.equal_on_ball = false;
    if (y1.at(g) != 0 || y2.at(g) != 0) r.images_zero = false;
  }
  // Off S^-1 supp, windows of x1 and x2 see the same cells.
  FiniteSubset diff = set_union(x1.deviation().support(), x2.deviation().support());
  FiniteSubset touched = set_product(diff, set_inverse(tau.memory()));
  r.structural = true;
  for (const auto& g : b) {
    if (touched.contains(g)) continue;
    for (const auto& s : tau.memory())
      if (x1.at(mul(g, s)) != x2.at(mul(g, s))) r.structural = false;
  }
  return r;
}

inline FiniteConfig ones_at(const std::vector<GroupElement>& cells) {
  std::vector<std::pair<GroupElement, Symbol>> c;
  for (const auto& g : cells) c.emplace_back(g, 1);
  return FiniteConfig(0, Pattern::from_cells(f2(), std::move(c)));
}

// x1 = 0 and x2 = delta_1 have equal images.
inline DiamondReport verify_ex1_diamond(int radius) {
  require(radius >= 1, ErrorCode::validation, "radius must be at least 1");
  GroupDescriptor g = f2();
  return compare_images(muller_moore_ca(), FiniteConfig::constant(g, 0), ones_at({GroupElement::identity(g)}), radius);
}

inline GroupElement f2_letter(int letter) { return GroupElement::word(2, {letter}); }

// Predecessor of a reduced word: its last letter removed.
inline GroupElement predecessor(const GroupElement& h) {
  std::vector<int> w = h.raw();
  require(!w.empty(), ErrorCode::domain, "the identity has no predecessor");
  w.pop_back();
  return GroupElement::word(2, w);
}

struct PreimageReport {
  int n = 0;
  BallConfig x;
  bool verified_inner = false;  // tau(x) = y on B_{n-1}
  bool verified_full = false;   // tau(x) = y on B_n
  bool ok() const { return verified_inner; }
};

// x(1) = 0 and x(h) = y(h^-) on B_{n+1} \ {1}; then tau(x) = y on B_n, since the children of g
// all carry y(g) and outvote the other two cells of the window.
inline PreimageReport ex1_preimage(const BallConfig& y) {
  const int n = y.radius;
  require(n >= 0, ErrorCode::validation, "radius must be nonnegative");
  GroupDescriptor g = f2();
  FiniteSubset bx = ball(g, n + 1);
  std::vector<Symbol> vals(bx.size(), 0);
  for (std::size_t i = 0; i < bx.size(); ++i)
    if (!bx[i].is_identity()) vals[i] = y.at(predecessor(bx[i]));
  PreimageReport rep;
  rep.n = n;
  rep.x = BallConfig{n + 1, Pattern(bx, std::move(vals)), 0};
  CellularAutomaton tau = muller_moore_ca();
  auto value = [&](const GroupElement& c) { return rep.x.cells.at_or(c, 0); };
  rep.verified_inner = rep.verified_full = true;
  for (const auto& c : ball(g, n)) {
    bool good = tau.eval_at(c, value) == y.at(c);
    if (!good) {
      rep.verified_full = false;
      if (c.length() <= std::max(0, n - 1)) rep.verified_inner = false;
    }
  }
  if (n == 0) rep.verified_inner = rep.verified_full;
  return rep;
}

inline BallConfig random_ball_config(std::mt19937_64& rng, int radius) {
  FiniteSubset b = ball(f2(), radius);
  std::vector<Symbol> v(b.size());
  for (auto& s : v) s = static_cast<Symbol>(rng() & 1);
  return BallConfig{radius, Pattern(b, std::move(v)), 0};
}

// tau(x)(g) = p(x(ga)) + p(x(ga^-1)) + q(x(gb)) + q(x(gb^-1)) over (Z/2)^2 with p(u, v) = (u, 0)
// and q(u, v) = (v, 0).
inline MatrixCA muller_myhill_ca() {
  GroupDescriptor g = f2();
  MatrixCA m = MatrixCA::zero(g, 2, 2);
  m.at(0, 0) = GroupRingElement(g, 2, {{f2_letter(1), 1}, {f2_letter(-1), 1}});
  m.at(0, 1) = GroupRingElement(g, 2, {{f2_letter(2), 1}, {f2_letter(-2), 1}});
  return m;
}

struct Ex2Report {
  int radius = 0;
  bool second_coordinate_zero = false;  // over the whole rule table, so (0,1) is never an output
  bool delta_image_in_sphere = false;   // tau(delta_1 (1,1)) supported in the unit sphere
  std::vector<KernelResult> kernels;    // radii 0..R
  bool kernel_trivial() const {
    for (const auto& k : kernels)
      if (!k.trivial()) return false;
    return !kernels.empty();
  }
  bool ok() const { return second_coordinate_zero && delta_image_in_sphere && kernel_trivial(); }
};

// Non-surjectivity is structural; pre-injectivity is certified for supports inside B_R.
inline Ex2Report verify_ex2(int radius) {
  require(radius >= 0 && radius <= 4, ErrorCode::budget, "ex2 kernel certificate supports radius <= 4");
  MatrixCA m = muller_myhill_ca();
  CellularAutomaton tau = to_cellular_automaton(m);
  Ex2Report rep;
  rep.radius = radius;
  rep.second_coordinate_zero = true;
  for (Symbol s : tau.table())
    if (decode_vector(s, 2, 2)[1] != 0) rep.second_coordinate_zero = false;
  GroupDescriptor g = f2();
  FiniteConfig delta(0, Pattern(singleton(g, GroupElement::identity(g)), {encode_vector({1, 1}, 2)}));
  FiniteConfig img = apply_to_finite_config(tau, delta);
  rep.delta_image_in_sphere = img.background() == 0;
  for (const auto& c : img.deviation().support())
    if (c.length() != 1) rep.delta_image_in_sphere = false;
  for (int r = 0; r <= radius; ++r) rep.kernels.push_back(kernel_finite_support(m, r));
  return rep;
}

}  // namespace goelab
