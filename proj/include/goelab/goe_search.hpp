#pragma once

// Finite-window searches over Z^d: image pattern sets, Garden of Eden patterns,
// mutually erasable pairs, the counting bound n0(a,k,d,r) and greedy E-tilings.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "goelab/automaton.hpp"
#include "goelab/bigint.hpp"
#include "goelab/error.hpp"
#include "goelab/group.hpp"
#include "goelab/parallel.hpp"
#include "goelab/pattern.hpp"

namespace goelab {

struct SearchBudget {
  std::size_t max_cells = 9;
  std::uint64_t max_candidates = std::uint64_t{1} << 24;
};

// Box windows with at most max_cells cells, in nondecreasing cell count; at equal count cubes
// come first, then rectangles by side lengths. Each box has its lower corner at the origin.
inline std::vector<std::vector<int>> window_schedule(int d, std::size_t max_cells) {
  std::vector<std::vector<int>> shapes;
  std::vector<int> sides(static_cast<std::size_t>(d), 1);
  while (true) {
    std::size_t cells = 1;
    for (int s : sides) cells *= static_cast<std::size_t>(s);
    if (cells <= max_cells) shapes.push_back(sides);
    std::size_t i = 0;
    for (; i < sides.size(); ++i) {
      ++sides[i];
      std::size_t c = 1;
      for (int s : sides) c *= static_cast<std::size_t>(s);
      if (c <= max_cells) break;
      sides[i] = 1;
    }
    if (i == sides.size()) break;
  }
  auto key = [](const std::vector<int>& s) {
    std::size_t cells = 1;
    for (int x : s) cells *= static_cast<std::size_t>(x);
    bool cube = std::all_of(s.begin(), s.end(), [&](int x) { return x == s[0]; });
    return std::make_tuple(cells, cube ? 0 : 1, s);
  };
  std::sort(shapes.begin(), shapes.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  return shapes;
}

inline FiniteSubset window_box(const std::vector<int>& sides) {
  std::vector<int> lo(sides.size(), 0), hi;
  for (int s : sides) hi.push_back(s - 1);
  return FiniteSubset::box(lo, hi);
}

// {tau(x)|_omega : x in A^G}, stored as a bitset over output pattern indices of omega.
class ImagePatternSet {
 public:
  ImagePatternSet(FiniteSubset omega, std::size_t b, std::vector<std::uint64_t> bits, std::uint64_t count)
      : omega_(std::move(omega)), b_(b), bits_(std::move(bits)), count_(count) {}

  const FiniteSubset& omega() const noexcept { return omega_; }
  std::uint64_t universe() const noexcept { return count_; }

  bool contains_index(std::uint64_t i) const { return (bits_[i / 64] >> (i % 64)) & 1; }
  bool contains(const Pattern& p) const { return contains_index(PatternEnumerator(omega_, b_).index_of(p)); }

  std::uint64_t size() const {
    std::uint64_t n = 0;
    for (auto w : bits_) n += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return n;
  }

  std::optional<std::uint64_t> first_missing() const {
    for (std::uint64_t i = 0; i < count_; ++i)
      if (!contains_index(i)) return i;
    return std::nullopt;
  }

  Pattern pattern(std::uint64_t i) const { return PatternEnumerator(omega_, b_).pattern_at(i); }

 private:
  FiniteSubset omega_;
  std::size_t b_;
  std::vector<std::uint64_t> bits_;
  std::uint64_t count_;
};

inline ImagePatternSet image_pattern_set(const CellularAutomaton& tau, const FiniteSubset& omega,
                                         std::uint64_t max_candidates = std::uint64_t{1} << 28) {
  require(omega.group().same_group(tau.group()), ErrorCode::descriptor_mismatch, "window in another group");
  FiniteSubset input = set_product(omega, tau.memory());
  if (tau.memory().empty()) input = FiniteSubset(omega.group());
  const std::size_t a = tau.input().size(), b = tau.output().size();
  auto candidates = bounded_power(a, input.size(), max_candidates);
  require(candidates.has_value(), ErrorCode::budget, "image pattern enumeration exceeds the candidate budget");
  auto outputs = bounded_power(b, omega.size(), std::uint64_t{1} << 34);
  require(outputs.has_value(), ErrorCode::budget, "image pattern set too large to store");
  WindowPlan plan = make_plan(omega, input, tau.memory());
  std::vector<std::atomic<std::uint64_t>> bits(static_cast<std::size_t>((*outputs + 63) / 64));
  const std::uint64_t total = *candidates;
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(total, 256));
  parallel::for_chunks(total, chunks, [&](std::uint64_t lo, std::uint64_t hi, std::size_t) {
    std::vector<Symbol> in(input.size()), out(omega.size());
    PatternEnumerator(input, a, total).decode(lo, in.data());
    for (std::uint64_t i = lo; i < hi; ++i) {
      apply_plan(tau, plan, in.data(), out.data());
      std::uint64_t idx = 0;
      for (Symbol s : out) idx = idx * b + s;
      bits[idx / 64].fetch_or(std::uint64_t{1} << (idx % 64), std::memory_order_relaxed);
      next_digits(in, a);
    }
  });
  std::vector<std::uint64_t> plain(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) plain[i] = bits[i].load();
  return ImagePatternSet(omega, b, std::move(plain), *outputs);
}

struct GoeSearchResult {
  std::optional<Pattern> witness;
  std::vector<int> window;                // sides of the window holding the witness
  std::size_t windows_examined = 0;
  std::size_t windows_skipped = 0;        // over the candidate budget
  std::size_t largest_cells_examined = 0;
  bool found() const { return witness.has_value(); }
};

// Least-index GOE pattern on the first scheduled window that supports one.
inline GoeSearchResult find_goe_pattern(const CellularAutomaton& tau, const SearchBudget& budget) {
  require(tau.group().is_zd(), ErrorCode::unsupported_operation, "window search needs G = Z^d");
  GoeSearchResult r;
  for (const auto& sides : window_schedule(tau.group().dimension(), budget.max_cells)) {
    FiniteSubset omega = window_box(sides);
    FiniteSubset input = set_product(omega, tau.memory());
    if (!bounded_power(tau.input().size(), input.size(), budget.max_candidates)) {
      ++r.windows_skipped;
      continue;
    }
    ImagePatternSet img = image_pattern_set(tau, omega, budget.max_candidates);
    ++r.windows_examined;
    r.largest_cells_examined = std::max(r.largest_cells_examined, omega.size());
    if (auto miss = img.first_missing()) {
      r.witness = img.pattern(*miss);
      r.window = sides;
      return r;
    }
  }
  return r;
}

// Is p the restriction of no image tau(x)? Checked by enumerating A^{omega S}.
inline bool is_goe_pattern(const CellularAutomaton& tau, const Pattern& p,
                           std::uint64_t max_candidates = std::uint64_t{1} << 28) {
  return !image_pattern_set(tau, p.support(), max_candidates).contains(p);
}

struct MECheckResult {
  bool erasable = false;
  std::uint64_t extensions_checked = 0;
};

// Full-shift ME test: all common extensions to (Delta S^-1) S must give equal outputs on
// Delta S^-1, where Delta is the set of cells on which the patterns differ.
inline MECheckResult me_check(const CellularAutomaton& tau, const Pattern& p1, const Pattern& p2,
                              std::uint64_t max_extensions = std::uint64_t{1} << 26) {
  require(p1.support() == p2.support(), ErrorCode::validation, "ME patterns need a common support");
  require_input_values(tau, p1);
  require_input_values(tau, p2);
  const FiniteSubset& omega = p1.support();
  std::vector<GroupElement> diff;
  for (std::size_t i = 0; i < omega.size(); ++i)
    if (p1.values()[i] != p2.values()[i]) diff.push_back(omega[i]);
  MECheckResult res;
  if (diff.empty() || tau.memory().empty()) {
    res.erasable = true;
    return res;
  }
  FiniteSubset delta(omega.group(), std::move(diff));
  FiniteSubset targets = set_product(delta, set_inverse(tau.memory()));
  FiniteSubset needed = set_product(targets, tau.memory());
  FiniteSubset free_cells = set_difference(needed, omega);
  const std::size_t a = tau.input().size();
  auto total = bounded_power(a, free_cells.size(), max_extensions);
  require(total.has_value(), ErrorCode::budget, "ME check extension enumeration exceeds the budget");
  WindowPlan plan = make_plan(targets, needed, tau.memory());
  std::vector<Symbol> z1(needed.size()), z2(needed.size()), o1(targets.size()), o2(targets.size());
  std::vector<std::size_t> free_pos, fixed_pos, fixed_idx;
  for (std::size_t i = 0; i < needed.size(); ++i) {
    std::size_t oi = omega.index_of(needed[i]);
    if (oi == omega.size()) {
      free_pos.push_back(i);
    } else {
      z1[i] = p1.values()[oi];
      z2[i] = p2.values()[oi];
    }
  }
  std::vector<Symbol> digits(free_pos.size(), 0);
  for (std::uint64_t k = 0; k < *total; ++k) {
    for (std::size_t j = 0; j < free_pos.size(); ++j) z1[free_pos[j]] = z2[free_pos[j]] = digits[j];
    apply_plan(tau, plan, z1.data(), o1.data());
    apply_plan(tau, plan, z2.data(), o2.data());
    ++res.extensions_checked;
    if (o1 != o2) return res;
    next_digits(digits, a);
  }
  res.erasable = true;
  return res;
}

struct MEPairResult {
  std::optional<std::pair<Pattern, Pattern>> pair;
  std::vector<int> window;
  std::size_t windows_examined = 0;
  std::size_t windows_skipped = 0;
  std::size_t largest_cells_examined = 0;
  bool found() const { return pair.has_value(); }
};

namespace detail {
inline std::pair<std::uint64_t, std::uint64_t> mix(std::pair<std::uint64_t, std::uint64_t> h, std::uint64_t v) {
  h.first = (h.first ^ v) * 1099511628211ull;
  h.second = (h.second + v + 0x9e3779b97f4a7c15ull) * 0xbf58476d1ce4e5b9ull;
  h.second ^= h.second >> 31;
  return h;
}
}  // namespace detail

enum class WindowStatus { none, found, skipped };

// Least index pair (i, j), i < j, of distinct ME patterns on one window. Patterns are grouped by
// the outputs they produce on omega S^-1 over every extension to omega S^-1 S; candidate pairs
// inside a group are confirmed with me_check.
inline WindowStatus me_pair_on_window(const CellularAutomaton& tau, const std::vector<int>& sides,
                                      const SearchBudget& budget, std::optional<std::pair<Pattern, Pattern>>& out) {
  if (tau.memory().empty()) return WindowStatus::none;
  const std::size_t a = tau.input().size();
  FiniteSubset omega = window_box(sides);
  FiniteSubset targets = set_product(omega, set_inverse(tau.memory()));
  FiniteSubset needed = set_product(targets, tau.memory());
  FiniteSubset free_cells = set_difference(needed, omega);
  auto inner = bounded_power(a, free_cells.size(), budget.max_candidates);
  auto outer = bounded_power(a, omega.size(), budget.max_candidates);
  if (!inner || !outer || *inner > budget.max_candidates / *outer) return WindowStatus::skipped;
  WindowPlan plan = make_plan(targets, needed, tau.memory());
  std::vector<std::size_t> omega_pos, free_pos;
  for (std::size_t i = 0; i < needed.size(); ++i) (omega.contains(needed[i]) ? omega_pos : free_pos).push_back(i);
  PatternEnumerator en(omega, a);
  auto sigs = parallel::map_indexed(static_cast<std::size_t>(*outer), [&](std::size_t pi) {
    std::vector<Symbol> pd(omega.size()), z(needed.size()), o(targets.size()), fd(free_pos.size(), 0);
    en.decode(pi, pd.data());
    for (std::size_t j = 0; j < omega_pos.size(); ++j) z[omega_pos[j]] = pd[j];
    std::pair<std::uint64_t, std::uint64_t> h{1469598103934665603ull, 0};
    for (std::uint64_t k = 0; k < *inner; ++k) {
      for (std::size_t j = 0; j < free_pos.size(); ++j) z[free_pos[j]] = fd[j];
      apply_plan(tau, plan, z.data(), o.data());
      for (Symbol s : o) h = detail::mix(h, s);
      next_digits(fd, a);
    }
    return h;
  });
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < sigs.size(); ++i) classes[sigs[i]].push_back(i);
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (const auto& [sig, members] : classes) {
    for (std::size_t x = 0; x + 1 < members.size(); ++x) {
      if (best && members[x] > best->first) break;
      Pattern px = en.pattern_at(members[x]);
      bool hit = false;
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        if (best && std::make_pair(members[x], members[y]) >= *best) break;
        if (me_check(tau, px, en.pattern_at(members[y]), budget.max_candidates).erasable) {
          best = std::make_pair(members[x], members[y]);
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
  }
  if (!best) return WindowStatus::none;
  out = std::make_pair(en.pattern_at(best->first), en.pattern_at(best->second));
  return WindowStatus::found;
}

inline MEPairResult find_me_pair(const CellularAutomaton& tau, const SearchBudget& budget) {
  require(tau.group().is_zd(), ErrorCode::unsupported_operation, "window search needs G = Z^d");
  MEPairResult r;
  for (const auto& sides : window_schedule(tau.group().dimension(), budget.max_cells)) {
    WindowStatus st = me_pair_on_window(tau, sides, budget, r.pair);
    if (st == WindowStatus::skipped) {
      ++r.windows_skipped;
      continue;
    }
    ++r.windows_examined;
    std::size_t cells = 1;
    for (int s : sides) cells *= static_cast<std::size_t>(s);
    r.largest_cells_examined = std::max(r.largest_cells_examined, cells);
    if (st == WindowStatus::found) {
      r.window = sides;
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Counting bound.

struct N0Result {
  std::uint64_t n0 = 0;
  bool exact_verified = false;    // big-integer check at n0 and n0 - 1 completed within budget
  bool holds_at_n0 = false;
  bool fails_below = false;
  bool monotone_checked = false;  // numeric check on [n0, n0 + 32]
  std::uint64_t estimated_bits = 0;
};

using HighFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

namespace detail {

// (k - 2r/n)^d > log_a(a^{k^d} - 1), evaluated in high precision; false when nk <= 2r.
inline bool n0_predicate_numeric(std::uint64_t a, std::uint64_t k, std::uint64_t d, std::uint64_t r,
                                 std::uint64_t n) {
  if (n * k <= 2 * r) return false;
  HighFloat kd = pow(HighFloat(k), HighFloat(d));
  HighFloat rhs = log(pow(HighFloat(a), kd) - 1) / log(HighFloat(a));
  HighFloat lhs = pow(HighFloat(k) - HighFloat(2 * r) / HighFloat(n), HighFloat(d));
  return lhs > rhs;
}

inline std::uint64_t upow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    require(b == 0 || r <= UINT64_MAX / b, ErrorCode::budget, "exponent overflows 64 bits");
    r *= b;
  }
  return r;
}

// (a^{k^d} - 1)^{n^d} < a^{(nk - 2r)^d} in exact integers.
inline bool n0_predicate_exact(std::uint64_t a, std::uint64_t k, std::uint64_t d, std::uint64_t r, std::uint64_t n) {
  if (n * k <= 2 * r) return false;
  BigInt base = boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(upow(k, d))) - 1;
  BigInt lhs = boost::multiprecision::pow(base, static_cast<unsigned>(upow(n, d)));
  BigInt rhs = boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(upow(n * k - 2 * r, d)));
  return lhs < rhs;
}

}  // namespace detail

inline std::uint64_t& n0_exact_bit_budget() {
  static std::uint64_t budget = std::uint64_t{1} << 24;
  return budget;
}

// Least n with (a^{k^d} - 1)^{n^d} < a^{(nk - 2r)^d}. The predicate is monotone in n since
// (k - 2r/n)^d increases; the candidate comes from a high-precision solve and is confirmed exactly
// when the integers fit the bit budget.
inline N0Result n0_bound(std::uint64_t a, std::uint64_t k, std::uint64_t d, std::uint64_t r) {
  require(a >= 2 && k >= 1 && d >= 1 && r >= 1, ErrorCode::validation, "n0 needs a >= 2, k, d, r >= 1");
  require(d <= 8 && k <= 64, ErrorCode::budget, "n0 parameters beyond supported range");
  HighFloat kd = pow(HighFloat(k), HighFloat(d));
  HighFloat c = log(pow(HighFloat(a), kd) - 1) / log(HighFloat(a));
  HighFloat root = pow(c, HighFloat(1) / HighFloat(d));
  HighFloat gap = HighFloat(k) - root;
  require(gap > 0, ErrorCode::domain, "no n satisfies the inequality");
  HighFloat est = HighFloat(2 * r) / gap;
  require(est < HighFloat(1e15), ErrorCode::budget, "n0 exceeds the supported range");
  std::uint64_t n = static_cast<std::uint64_t>(floor(est)) + 1;
  while (n > 1 && detail::n0_predicate_numeric(a, k, d, r, n - 1)) --n;
  while (!detail::n0_predicate_numeric(a, k, d, r, n)) ++n;
  N0Result res;
  res.n0 = n;
  res.monotone_checked = true;
  for (std::uint64_t t = n; t <= n + 32; ++t)
    if (!detail::n0_predicate_numeric(a, k, d, r, t)) res.monotone_checked = false;
  double bits = std::pow(static_cast<double>(n), static_cast<double>(d)) *
                std::pow(static_cast<double>(k), static_cast<double>(d)) * std::log2(static_cast<double>(a));
  res.estimated_bits = static_cast<std::uint64_t>(bits);
  if (bits <= static_cast<double>(n0_exact_bit_budget())) {
    res.holds_at_n0 = detail::n0_predicate_exact(a, k, d, r, n);
    res.fails_below = !detail::n0_predicate_exact(a, k, d, r, n - 1);
    res.exact_verified = true;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Tilings.

struct Tiling {
  FiniteSubset centers;
  FiniteSubset cover_shape;  // E E^-1
};

// Scans the window in canonical order, adding t whenever tE misses every tile chosen so far.
inline Tiling greedy_tiling(const FiniteSubset& e, const FiniteSubset& window) {
  require(!e.empty(), ErrorCode::validation, "tile shape must be nonempty");
  require_same_group(e, window);
  std::vector<GroupElement> centers;
  std::unordered_map<GroupElement, char> used;
  for (const auto& t : window) {
    FiniteSubset tile = translate(t, e);
    bool free = std::none_of(tile.begin(), tile.end(), [&](const GroupElement& x) { return used.count(x) != 0; });
    if (!free) continue;
    centers.push_back(t);
    for (const auto& x : tile) used.emplace(x, 1);
  }
  return {FiniteSubset(window.group(), std::move(centers)), set_product(e, set_inverse(e))};
}

struct TilingCheck {
  bool disjoint = false;
  bool maximal = false;
  bool covers = false;
  bool ok() const { return disjoint && maximal && covers; }
};

inline TilingCheck verify_tiling(const FiniteSubset& e, const FiniteSubset& window, const Tiling& t) {
  TilingCheck c;
  std::unordered_map<GroupElement, int> hits;
  for (const auto& x : t.centers)
    for (const auto& y : translate(x, e)) ++hits[y];
  c.disjoint = std::all_of(hits.begin(), hits.end(), [](const auto& kv) { return kv.second == 1; });
  c.maximal = true;
  for (const auto& w : window) {
    if (t.centers.contains(w)) continue;
    FiniteSubset tile = translate(w, e);
    if (std::none_of(tile.begin(), tile.end(), [&](const GroupElement& x) { return hits.count(x) != 0; }))
      c.maximal = false;
  }
  c.covers = true;
  for (const auto& w : window) {
    bool in = false;
    for (const auto& x : t.centers)
      if (translate(x, t.cover_shape).contains(w)) {
        in = true;
        break;
      }
    if (!in) c.covers = false;
  }
  c.disjoint = c.disjoint && t.centers.subset_of(window);
  return c;
}

// ---------------------------------------------------------------------------
// Semi-decision over Z^d.

enum class SemiVerdictKind { not_surjective, not_preinjective, unknown };

inline const char* to_string(SemiVerdictKind k) {
  switch (k) {
    case SemiVerdictKind::not_surjective: return "not_surjective";
    case SemiVerdictKind::not_preinjective: return "not_preinjective";
    case SemiVerdictKind::unknown: return "unknown";
  }
  return "unknown";
}

struct SemiVerdict {
  SemiVerdictKind kind = SemiVerdictKind::unknown;
  std::optional<Pattern> goe;
  std::optional<std::pair<Pattern, Pattern>> me_pair;
  std::vector<int> window;
  std::size_t windows_examined = 0;
  std::size_t windows_skipped = 0;
  SearchBudget budget;
};

// Dovetails the GOE and ME searches window by window and stops at the first witness.
inline SemiVerdict semi_decide(const CellularAutomaton& tau, const SearchBudget& budget) {
  require(tau.group().is_zd(), ErrorCode::unsupported_operation, "window search needs G = Z^d");
  SemiVerdict v;
  v.budget = budget;
  for (const auto& sides : window_schedule(tau.group().dimension(), budget.max_cells)) {
    FiniteSubset omega = window_box(sides);
    FiniteSubset input = set_product(omega, tau.memory());
    bool examined = false;
    if (bounded_power(tau.input().size(), input.size(), budget.max_candidates)) {
      examined = true;
      ImagePatternSet img = image_pattern_set(tau, omega, budget.max_candidates);
      if (auto miss = img.first_missing()) {
        ++v.windows_examined;
        v.kind = SemiVerdictKind::not_surjective;
        v.goe = img.pattern(*miss);
        v.window = sides;
        return v;
      }
    }
    WindowStatus st = me_pair_on_window(tau, sides, budget, v.me_pair);
    if (st != WindowStatus::skipped) examined = true;
    if (examined) ++v.windows_examined; else ++v.windows_skipped;
    if (st == WindowStatus::found) {
      v.kind = SemiVerdictKind::not_preinjective;
      v.window = sides;
      return v;
    }
  }
  return v;
}

}  // namespace goelab
