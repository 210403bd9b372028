#pragma once

// Brute-force reference computations for the unit tests. Everything here works on plain words
// and direct window evaluation, never on the graph machinery it is used to check.

#include <cstdint>
#include <random>
#include <vector>

#include "goelab/goelab.hpp"

namespace oracle {

using goelab::Symbol;
using Word = std::vector<Symbol>;

inline std::vector<Word> all_words(std::size_t a, std::size_t n) {
  std::vector<Word> out;
  Word w(n, 0);
  do {
    out.push_back(w);
  } while (goelab::next_digits(w, a));
  return out;
}

// Window hull [lo, hi] of a one-dimensional memory set.
inline std::pair<int, int> hull(const goelab::CellularAutomaton& tau) {
  const auto& s = tau.memory();
  if (s.empty()) return {0, 0};
  return {s[0].coord(0), s[s.size() - 1].coord(0)};
}

// Image of a finite word on every cell whose window lies inside it.
inline Word image(const goelab::CellularAutomaton& tau, const Word& z) {
  auto [lo, hi] = hull(tau);
  Word out;
  for (int g = -lo; g + hi < static_cast<int>(z.size()); ++g)
    out.push_back(tau.eval_at(goelab::GroupElement::integer(g),
                              [&](const goelab::GroupElement& e) { return z[static_cast<std::size_t>(e.coord(0))]; }));
  return out;
}

inline std::uint64_t preimage_count(const goelab::CellularAutomaton& tau, const Word& w) {
  auto [lo, hi] = hull(tau);
  std::uint64_t c = 0;
  for (const auto& z : all_words(tau.input().size(), w.size() + static_cast<std::size_t>(hi - lo)))
    if (image(tau, z) == w) ++c;
  return c;
}

// Every word of length <= max_len has a^(m-1) preimages, m the hull length.
inline bool balanced(const goelab::CellularAutomaton& tau, std::size_t max_len) {
  auto [lo, hi] = hull(tau);
  std::uint64_t expect = 1;
  for (int i = 0; i < hi - lo; ++i) expect *= tau.input().size();
  for (std::size_t n = 1; n <= max_len; ++n)
    for (const auto& w : all_words(tau.output().size(), n))
      if (preimage_count(tau, w) != expect) return false;
  return true;
}

// Two distinct words with equal first and last m-1 symbols and equal images: a diamond.
inline bool has_diamond(const goelab::CellularAutomaton& tau, std::size_t len) {
  auto [lo, hi] = hull(tau);
  const std::size_t edge = static_cast<std::size_t>(hi - lo);
  auto words = all_words(tau.input().size(), len);
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const Word &u = words[i], &v = words[j];
      bool same_edges = std::equal(u.begin(), u.begin() + edge, v.begin()) &&
                        std::equal(u.end() - edge, u.end(), v.end() - edge);
      if (same_edges && image(tau, u) == image(tau, v)) return true;
    }
  return false;
}

// w occurs in the shift presented by g: some path reads it while starting late enough and
// ending early enough that it extends on both sides by |V| edges.
inline bool occurs(const goelab::SoficPresentation1D& g, const Word& w) {
  const std::size_t n = g.vertices();
  std::vector<char> cur(n, 1), nxt(n);
  auto step = [&](auto accept) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (const auto& e : g.edges())
      if (cur[e.from] && accept(e.label)) nxt[e.to] = 1;
    std::swap(cur, nxt);
  };
  for (std::size_t i = 0; i < n; ++i) step([](Symbol) { return true; });
  for (Symbol c : w) step([c](Symbol l) { return l == c; });
  for (std::size_t i = 0; i < n; ++i) step([](Symbol) { return true; });
  return std::find(cur.begin(), cur.end(), 1) != cur.end();
}

inline goelab::CellularAutomaton random_ca(std::mt19937_64& rng, std::size_t a, int m) {
  int lo = -static_cast<int>(rng() % static_cast<std::uint64_t>(m));
  return goelab::random_ca_1d(rng, a, a, lo, m);
}

inline goelab::FiniteConfig random_finite_config(std::mt19937_64& rng, const goelab::GroupDescriptor& g,
                                                 std::size_t a, int radius) {
  std::vector<std::pair<goelab::GroupElement, Symbol>> cells;
  for (const auto& e : goelab::ball(g, radius))
    if (rng() % 2) cells.emplace_back(e, static_cast<Symbol>(rng() % a));
  return goelab::FiniteConfig(static_cast<Symbol>(rng() % a), goelab::Pattern::from_cells(g, std::move(cells)));
}

}  // namespace oracle
