#pragma once

// Subshift presentations: forbidden-pattern SFTs over Z^d and labeled-graph sofic
// shifts over Z, the built-in examples, irreducibility and window counts.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "goelab/bigint.hpp"
#include "goelab/error.hpp"
#include "goelab/group.hpp"
#include "goelab/pattern.hpp"
#include "goelab/sofic.hpp"

namespace goelab {

class SFTPresentation {
 public:
  SFTPresentation(GroupDescriptor group, Alphabet alphabet, std::vector<Pattern> forbidden)
      : group_(std::move(group)), alphabet_(std::move(alphabet)), forbidden_(std::move(forbidden)) {
    for (const auto& p : forbidden_) {
      require(!p.empty(), ErrorCode::validation, "forbidden patterns need nonempty support");
      require(p.group().same_group(group_), ErrorCode::descriptor_mismatch, "forbidden pattern in another group");
      require(p.max_value() < alphabet_.size(), ErrorCode::alphabet_mismatch, "forbidden pattern outside alphabet");
    }
  }

  const GroupDescriptor& group() const noexcept { return group_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Pattern>& forbidden() const noexcept { return forbidden_; }

 private:
  GroupDescriptor group_;
  Alphabet alphabet_;
  std::vector<Pattern> forbidden_;
};

// Either presentation form, tagged with a display name.
struct Subshift {
  std::string name;
  std::variant<SFTPresentation, SoficPresentation1D> presentation;

  bool is_sft() const { return std::holds_alternative<SFTPresentation>(presentation); }
  const SFTPresentation& sft() const { return std::get<SFTPresentation>(presentation); }
  const SoficPresentation1D& sofic() const { return std::get<SoficPresentation1D>(presentation); }

  const Alphabet& alphabet() const { return is_sft() ? sft().alphabet() : sofic().alphabet(); }
  GroupDescriptor group() const { return is_sft() ? sft().group() : GroupDescriptor::zd(1); }
  bool is_1d() const { return group().is_zd() && group().dimension() == 1; }
};

inline Alphabet binary_alphabet() { return Alphabet::digits(2); }

inline SFTPresentation golden_mean_sft() {
  return SFTPresentation(GroupDescriptor::zd(1), binary_alphabet(), {word_to_pattern({1, 1})});
}

// Forbids (x(g), x(g + e_i)) = (1, 1) for each axis i.
inline SFTPresentation hard_ball(int d) {
  GroupDescriptor g = GroupDescriptor::zd(d);
  std::vector<Pattern> forbidden;
  for (int i = 0; i < d; ++i) {
    FiniteSubset dom(g, {GroupElement::identity(g), unit_vector(d, i)});
    forbidden.emplace_back(dom, std::vector<Symbol>{1, 1});
  }
  return SFTPresentation(g, binary_alphabet(), std::move(forbidden));
}

// x(m,n) + x(m+1,n) + x(m,n+1) = 0 mod 2: the odd-sum assignments on the L-shape are forbidden.
inline SFTPresentation ledrappier() {
  GroupDescriptor g = GroupDescriptor::zd(2);
  FiniteSubset shape(g, {GroupElement::vec({0, 0}), GroupElement::vec({1, 0}), GroupElement::vec({0, 1})});
  std::vector<Pattern> forbidden;
  PatternEnumerator en(shape, 2);
  for (std::uint64_t i = 0; i < en.count(); ++i) {
    Pattern p = en.pattern_at(i);
    int sum = 0;
    for (Symbol v : p.values()) sum += v;
    if (sum % 2 == 1) forbidden.push_back(std::move(p));
  }
  return SFTPresentation(g, binary_alphabet(), std::move(forbidden));
}

// Vertex 0 may emit 1 and stay, or start a pair of 0s through vertex 1.
inline SoficPresentation1D even_shift() {
  return SoficPresentation1D(binary_alphabet(), 2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
}

// The two points ...0101... and ...1010...
inline SoficPresentation1D period_two_shift() {
  return SoficPresentation1D(binary_alphabet(), 2, {{0, 1, 0}, {1, 0, 1}});
}

inline SoficPresentation1D full_shift(std::size_t a) { return SoficPresentation1D::full_shift(Alphabet::digits(a)); }

inline void require_1d(const GroupDescriptor& g) {
  require(g.is_zd() && g.dimension() == 1, ErrorCode::unsupported_operation, "operation needs G = Z");
}

namespace detail {

// Forbidden words as (offset within hull, values) with the hull length.
struct HullPattern {
  std::vector<int> offsets;
  std::vector<Symbol> values;
  int length;
};

inline HullPattern hull_of(const Pattern& p) {
  HullPattern h;
  int lo = p.support()[0].coord(0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    h.offsets.push_back(p.support()[i].coord(0) - lo);
    h.values.push_back(p.values()[i]);
  }
  h.length = h.offsets.back() + 1;
  return h;
}

inline bool word_avoids(const std::vector<Symbol>& w, const std::vector<HullPattern>& forbidden) {
  for (const auto& f : forbidden) {
    if (f.length > static_cast<int>(w.size())) continue;
    for (int t = 0; t + f.length <= static_cast<int>(w.size()); ++t) {
      bool match = true;
      for (std::size_t j = 0; j < f.offsets.size(); ++j)
        if (w[static_cast<std::size_t>(t + f.offsets[j])] != f.values[j]) {
          match = false;
          break;
        }
      if (match) return false;
    }
  }
  return true;
}

}  // namespace detail

// Higher-block presentation: vertices are allowed words of length L-1, edges allowed words of
// length L labeled by their last symbol, with L the longest forbidden hull.
inline SoficPresentation1D sft_to_sofic(const SFTPresentation& x) {
  require_1d(x.group());
  std::vector<detail::HullPattern> forb;
  int l = 1;
  for (const auto& p : x.forbidden()) {
    forb.push_back(detail::hull_of(p));
    l = std::max(l, forb.back().length);
  }
  const std::size_t a = x.alphabet().size();
  auto count = bounded_power(a, static_cast<std::size_t>(l), std::uint64_t{1} << 24);
  require(count.has_value(), ErrorCode::budget, "higher-block presentation too large");
  const std::uint64_t nv = *count / a;  // a^(L-1)
  std::vector<LabeledEdge> edges;
  std::vector<Symbol> w(static_cast<std::size_t>(l), 0);
  for (std::uint64_t i = 0; i < *count; ++i) {
    if (detail::word_avoids(w, forb)) {
      std::uint64_t from = i / a, to = i % nv;
      edges.push_back({static_cast<std::uint32_t>(from), static_cast<std::uint32_t>(to), w.back()});
    }
    next_digits(w, a);
  }
  return SoficPresentation1D(x.alphabet(), static_cast<std::size_t>(nv), std::move(edges));
}

inline SoficPresentation1D as_sofic(const Subshift& x) {
  if (x.is_sft()) return sft_to_sofic(x.sft());
  return x.sofic();
}

inline Subshift builtin_golden_mean() { return {"golden_mean", golden_mean_sft()}; }
inline Subshift builtin_even() { return {"even", even_shift()}; }
inline Subshift builtin_hard_ball(int d) { return {"hard_ball_" + std::to_string(d), hard_ball(d)}; }
inline Subshift builtin_ledrappier() { return {"ledrappier", ledrappier()}; }
inline Subshift builtin_full(std::size_t a) { return {"full_" + std::to_string(a), full_shift(a)}; }
inline Subshift builtin_period_two() { return {"period_two", period_two_shift()}; }

inline std::optional<Subshift> builtin_by_name(const std::string& name) {
  if (name == "golden_mean" || name == "golden") return builtin_golden_mean();
  if (name == "even") return builtin_even();
  if (name == "ledrappier") return builtin_ledrappier();
  if (name == "period_two") return builtin_period_two();
  if (name.rfind("hard_ball_", 0) == 0) return builtin_hard_ball(std::stoi(name.substr(10)));
  if (name.rfind("full_", 0) == 0) return builtin_full(static_cast<std::size_t>(std::stoul(name.substr(5))));
  return std::nullopt;
}

struct IrreducibilityReport {
  bool irreducible = false;
  std::optional<SoficPresentation1D> component;  // an irreducible component presenting the whole shift
};

// X is irreducible iff one irreducible component of some presentation presents X. Both the given
// trimmed graph and its subset automaton are searched.
inline IrreducibilityReport irreducibility(const SoficPresentation1D& x) {
  SoficPresentation1D base = trim(x);
  if (base.vertices() == 0) return {};
  for (const auto& candidate : {base, determinize(base)}) {
    for (auto& c : irreducible_components(candidate))
      if (sofic_equal(c, base).equal) return {true, std::move(c)};
  }
  return {};
}

inline bool irreducible(const SoficPresentation1D& x) { return irreducibility(x).irreducible; }

// Least k with A^k > 0 entrywise for the 0/1 adjacency matrix of g, or nullopt if not primitive.
inline std::optional<std::size_t> primitivity_index(const SoficPresentation1D& g) {
  const std::size_t n = g.vertices();
  if (n == 0) return std::nullopt;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges()) adj[e.from][e.to] = 1;
  std::vector<std::vector<char>> pw = adj;
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  for (std::size_t k = 1; k <= bound; ++k) {
    bool positive = true;
    for (std::size_t i = 0; i < n && positive; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!pw[i][j]) {
          positive = false;
          break;
        }
    if (positive) return k;
    std::vector<std::vector<char>> nxt(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < n; ++m)
        if (pw[i][m])
          for (std::size_t j = 0; j < n; ++j)
            if (adj[m][j]) nxt[i][j] = 1;
    pw = std::move(nxt);
  }
  return std::nullopt;
}

// Primitivity index of an irreducible component presenting X; nullopt when X is not irreducible
// or that component is periodic.
inline std::optional<std::size_t> mixing_gap(const SoficPresentation1D& x) {
  auto r = irreducibility(x);
  if (!r.irreducible) return std::nullopt;
  return primitivity_index(*r.component);
}

namespace detail {

// Forbidden-pattern placements inside a window, grouped by the last window cell they touch.
struct Placements {
  std::vector<std::vector<std::uint32_t>> cells;
  std::vector<std::vector<Symbol>> values;
  std::vector<std::vector<std::uint32_t>> trigger;  // window cell -> placement ids
};

inline Placements placements(const SFTPresentation& x, const FiniteSubset& window) {
  Placements pl;
  pl.trigger.resize(window.size());
  for (const auto& p : x.forbidden()) {
    GroupElement s0inv = inverse(p.support()[0]);
    for (const auto& w : window) {
      GroupElement t = mul(w, s0inv);
      std::vector<std::uint32_t> cells;
      bool inside = true;
      for (const auto& s : p.support()) {
        std::size_t i = window.index_of(mul(t, s));
        if (i == window.size()) {
          inside = false;
          break;
        }
        cells.push_back(static_cast<std::uint32_t>(i));
      }
      if (!inside) continue;
      std::uint32_t last = *std::max_element(cells.begin(), cells.end());
      pl.trigger[last].push_back(static_cast<std::uint32_t>(pl.cells.size()));
      pl.cells.push_back(std::move(cells));
      pl.values.push_back(p.values());
    }
  }
  return pl;
}

// Depth-first enumeration of locally admissible patterns; calls leaf(values) for each. Returns
// false if the node budget ran out.
template <typename Leaf>
bool enumerate_admissible(const SFTPresentation& x, const FiniteSubset& window, std::uint64_t node_budget,
                          Leaf&& leaf) {
  Placements pl = placements(x, window);
  const std::size_t n = window.size(), a = x.alphabet().size();
  std::vector<Symbol> vals(n, 0);
  if (n == 0) {
    leaf(vals);
    return true;
  }
  auto ok_at = [&](std::size_t i) {
    for (std::uint32_t pid : pl.trigger[i]) {
      const auto& cells = pl.cells[pid];
      const auto& pv = pl.values[pid];
      bool match = true;
      for (std::size_t j = 0; j < cells.size(); ++j)
        if (vals[cells[j]] != pv[j]) {
          match = false;
          break;
        }
      if (match) return false;
    }
    return true;
  };
  std::uint64_t nodes = 0;
  std::size_t depth = 0;
  vals[0] = 0;
  while (true) {
    if (++nodes > node_budget) return false;
    bool good = ok_at(depth);
    if (good && depth + 1 == n) leaf(vals);
    if (good && depth + 1 < n) {
      ++depth;
      vals[depth] = 0;
      continue;
    }
    while (static_cast<std::size_t>(vals[depth]) + 1 >= a) {
      if (depth == 0) return true;
      --depth;
    }
    ++vals[depth];
  }
}

inline bool box_bounds(const FiniteSubset& w, std::vector<int>& lo, std::vector<int>& hi) {
  if (w.empty() || !w.group().is_zd()) return false;
  const std::size_t d = static_cast<std::size_t>(w.group().dimension());
  lo.assign(d, INT32_MAX);
  hi.assign(d, INT32_MIN);
  for (const auto& e : w)
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], e.raw()[i]);
      hi[i] = std::max(hi[i], e.raw()[i]);
    }
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) cells *= static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
  return cells == w.size();
}

// Row transfer for boxes in Z^2 when every forbidden pattern spans at most two rows (second coordinate).
inline std::optional<BigInt> row_transfer_count(const SFTPresentation& x, const std::vector<int>& lo,
                                                const std::vector<int>& hi) {
  for (const auto& p : x.forbidden()) {
    int ymin = INT32_MAX, ymax = INT32_MIN;
    for (const auto& e : p.support()) {
      ymin = std::min(ymin, e.raw()[1]);
      ymax = std::max(ymax, e.raw()[1]);
    }
    if (ymax - ymin > 1) return std::nullopt;
  }
  const int w = hi[0] - lo[0] + 1, h = hi[1] - lo[1] + 1;
  FiniteSubset row = FiniteSubset::box({lo[0], 0}, {hi[0], 0});
  FiniteSubset two_rows = FiniteSubset::box({lo[0], 0}, {hi[0], 1});
  std::vector<std::vector<Symbol>> rows;
  if (!enumerate_admissible(x, row, std::uint64_t{1} << 22,
                            [&](const std::vector<Symbol>& v) { rows.push_back(v); }))
    return std::nullopt;
  if (rows.size() > 4096) return std::nullopt;
  // Canonical order in the two-row box is column-major: (x,0),(x,1),(x+1,0),...
  Placements pl = placements(x, two_rows);
  std::vector<std::vector<std::uint32_t>> succ(rows.size());
  std::vector<Symbol> vals(two_rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      for (int c = 0; c < w; ++c) {
        vals[static_cast<std::size_t>(2 * c)] = rows[i][static_cast<std::size_t>(c)];
        vals[static_cast<std::size_t>(2 * c + 1)] = rows[j][static_cast<std::size_t>(c)];
      }
      bool ok = true;
      for (std::size_t pid = 0; pid < pl.cells.size() && ok; ++pid) {
        bool match = true;
        for (std::size_t k = 0; k < pl.cells[pid].size(); ++k)
          if (vals[pl.cells[pid][k]] != pl.values[pid][k]) {
            match = false;
            break;
          }
        if (match) ok = false;
      }
      if (ok) succ[i].push_back(static_cast<std::uint32_t>(j));
    }
  }
  std::vector<BigInt> cur(rows.size(), BigInt(1)), nxt(rows.size());
  for (int r = 1; r < h; ++r) {
    for (auto& v : nxt) v = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::uint32_t j : succ[i]) nxt[j] += cur[i];
    std::swap(cur, nxt);
  }
  BigInt total = 0;
  for (const auto& v : cur) total += v;
  return total;
}

}  // namespace detail

inline std::uint64_t& admissible_node_budget() {
  static std::uint64_t budget = std::uint64_t{1} << 32;
  return budget;
}

// Patterns on the window containing no translate of a forbidden pattern lying fully inside it.
inline BigInt locally_admissible_count(const SFTPresentation& x, const FiniteSubset& window) {
  require(window.group().same_group(x.group()), ErrorCode::descriptor_mismatch, "window in another group");
  if (x.forbidden().empty()) {
    BigInt r = 1;
    for (std::size_t i = 0; i < window.size(); ++i) r *= static_cast<unsigned long>(x.alphabet().size());
    return r;
  }
  std::vector<int> lo, hi;
  if (x.group().dimension() == 2 && detail::box_bounds(window, lo, hi)) {
    if (auto c = detail::row_transfer_count(x, lo, hi)) return *c;
  }
  std::uint64_t count = 0;
  bool done = detail::enumerate_admissible(x, window, admissible_node_budget(),
                                           [&](const std::vector<Symbol>&) { ++count; });
  require(done, ErrorCode::budget, "locally admissible count exceeds the node budget");
  return BigInt(count);
}

// Brute-force reference: every one of a^|window| patterns is tested.
inline std::uint64_t locally_admissible_count_bruteforce(const SFTPresentation& x, const FiniteSubset& window) {
  PatternEnumerator en(window, x.alphabet().size(), std::uint64_t{1} << 24);
  detail::Placements pl = detail::placements(x, window);
  std::uint64_t count = 0;
  std::vector<Symbol> v(window.size(), 0);
  for (std::uint64_t i = 0; i < en.count(); ++i) {
    bool ok = true;
    for (std::size_t pid = 0; pid < pl.cells.size() && ok; ++pid) {
      bool match = true;
      for (std::size_t k = 0; k < pl.cells[pid].size(); ++k)
        if (v[pl.cells[pid][k]] != pl.values[pid][k]) {
          match = false;
          break;
        }
      if (match) ok = false;
    }
    if (ok) ++count;
    next_digits(v, x.alphabet().size());
  }
  return count;
}

struct GluingFailure {
  Pattern first;
  Pattern second;
};

// Window-level strong irreducibility falsifier: every pair of patterns on omega1 and omega2 that
// occur separately in locally admissible patterns on the box must occur jointly.
inline std::optional<GluingFailure> gluing_test(const SFTPresentation& x, const FiniteSubset& omega1,
                                                const FiniteSubset& omega2, const FiniteSubset& box) {
  require(omega1.subset_of(box) && omega2.subset_of(box), ErrorCode::validation, "sets must lie in the box");
  require(set_intersection(omega1, omega2).empty(), ErrorCode::validation, "sets must be disjoint");
  std::vector<std::size_t> i1, i2;
  for (const auto& e : omega1) i1.push_back(box.index_of(e));
  for (const auto& e : omega2) i2.push_back(box.index_of(e));
  std::set<std::vector<Symbol>> r1, r2;
  std::set<std::pair<std::vector<Symbol>, std::vector<Symbol>>> r12;
  bool done = detail::enumerate_admissible(x, box, admissible_node_budget(), [&](const std::vector<Symbol>& v) {
    std::vector<Symbol> a, b;
    for (auto i : i1) a.push_back(v[i]);
    for (auto i : i2) b.push_back(v[i]);
    r1.insert(a);
    r2.insert(b);
    r12.emplace(std::move(a), std::move(b));
  });
  require(done, ErrorCode::budget, "gluing test exceeds the node budget");
  for (const auto& a : r1)
    for (const auto& b : r2)
      if (!r12.count({a, b})) return GluingFailure{Pattern(omega1, a), Pattern(omega2, b)};
  return std::nullopt;
}

}  // namespace goelab
