#pragma once

// Named automata and shifts used throughout the tests, the CLI and the reproduction suite.

#include <vector>

#include "goelab/automaton.hpp"
#include "goelab/group.hpp"
#include "goelab/pattern.hpp"
#include "goelab/sofic.hpp"
#include "goelab/subshift.hpp"

namespace goelab {

// Golden mean to even shift: mu(00) = mu(11) = 1, mu(01) = mu(10) = 0 on S = {0, 1}.
inline CellularAutomaton golden_to_even_ca() {
  return CellularAutomaton::from_rule(GroupDescriptor::zd(1), binary_alphabet(), binary_alphabet(),
                                      FiniteSubset::interval(0, 1),
                                      [](const std::vector<Symbol>& y) { return y[0] == y[1] ? 1 : 0; });
}

// Majority vote on {-1, 0, 1}.
inline CellularAutomaton majority_ca() { return wolfram_rule(232); }

// On S = {0..4}: 1 iff y0y1y2 is 000 or 111, or y0..y4 = 00100.
inline CellularAutomaton fiorenzi_even_sigma() {
  return CellularAutomaton::from_rule(GroupDescriptor::zd(1), binary_alphabet(), binary_alphabet(),
                                      FiniteSubset::interval(0, 4), [](const std::vector<Symbol>& y) {
                                        bool run = y[0] == y[1] && y[1] == y[2];
                                        bool spike = y[0] == 0 && y[1] == 0 && y[2] == 1 && y[3] == 0 && y[4] == 0;
                                        return run || spike ? 1 : 0;
                                      });
}

// Ones at the given positions of {0..len-1}.
inline Pattern indicator_word(int len, const std::vector<int>& ones) {
  std::vector<Symbol> w(static_cast<std::size_t>(len), 0);
  for (int i : ones) w[static_cast<std::size_t>(i)] = 1;
  return word_to_pattern(w);
}

// The ME pair on {0..12}: ones at {6, 9} and at {7, 8, 9}.
inline std::pair<Pattern, Pattern> fiorenzi_even_me_pair() {
  return {indicator_word(13, {6, 9}), indicator_word(13, {7, 8, 9})};
}

inline Alphabet ternary_alphabet() { return Alphabet::digits(3); }

// x(n)x(n+1) never 01 or 02.
inline Subshift fiorenzi_ternary_shift() {
  return {"fiorenzi_ternary",
          SFTPresentation(GroupDescriptor::zd(1), ternary_alphabet(), {word_to_pattern({0, 1}), word_to_pattern({0, 2})})};
}

// S = {0, 1}: y0 if y1 != 0, else 0.
inline CellularAutomaton fiorenzi_ternary_sigma() {
  return CellularAutomaton::from_rule(GroupDescriptor::zd(1), ternary_alphabet(), ternary_alphabet(),
                                      FiniteSubset::interval(0, 1),
                                      [](const std::vector<Symbol>& y) { return y[1] != 0 ? y[0] : Symbol{0}; });
}

// S = {-1, 0}: y(0) unless y(-1)y(0) is 10 or 20, then y(-1).
inline CellularAutomaton fiorenzi_ternary_tau_prime() {
  return CellularAutomaton::from_rule(GroupDescriptor::zd(1), ternary_alphabet(), ternary_alphabet(),
                                      FiniteSubset::interval(-1, 0), [](const std::vector<Symbol>& y) {
                                        return (y[0] != 0 && y[1] == 0) ? y[0] : y[1];
                                      });
}

// Z^2 threshold-3 rule on the von Neumann neighborhood {0, +-e1, +-e2}.
inline CellularAutomaton majority_von_neumann() {
  GroupDescriptor g = GroupDescriptor::zd(2);
  FiniteSubset s = ball(g, 1);
  return CellularAutomaton::from_rule(g, binary_alphabet(), binary_alphabet(), s, [](const std::vector<Symbol>& y) {
    int c = 0;
    for (Symbol v : y) c += v;
    return c >= 3 ? 1 : 0;
  });
}

// Z^2: x(g) + x(g + e1) + x(g + e2) mod 2.
inline CellularAutomaton xor_three_z2() {
  GroupDescriptor g = GroupDescriptor::zd(2);
  FiniteSubset s(g, {GroupElement::vec({0, 0}), GroupElement::vec({1, 0}), GroupElement::vec({0, 1})});
  return CellularAutomaton::from_rule(g, binary_alphabet(), binary_alphabet(), s, [](const std::vector<Symbol>& y) {
    return (y[0] + y[1] + y[2]) % 2;
  });
}

}  // namespace goelab
