#pragma once

// Alphabets, patterns on finite supports, almost-constant and periodic
// configurations, and mixed-radix pattern enumeration.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goelab/error.hpp"
#include "goelab/group.hpp"

namespace goelab {

using Symbol = std::uint16_t;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    require(!names_.empty(), ErrorCode::validation, "alphabet must be nonempty");
    require(names_.size() <= 4096, ErrorCode::validation, "alphabet too large");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      require(!names_[i].empty(), ErrorCode::validation, "empty symbol name");
      for (std::size_t j = 0; j < i; ++j)
        require(names_[i] != names_[j], ErrorCode::validation, "duplicate symbol " + names_[i]);
    }
  }

  // Symbols "0", "1", ..., "n-1".
  static Alphabet digits(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(std::to_string(i));
    return Alphabet(std::move(v));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Symbol s) const { return names_.at(s); }

  Symbol index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<Symbol>(i);
    fail(ErrorCode::validation, "unknown symbol '" + std::string(name) + "'");
  }

  bool single_char() const noexcept {
    return std::all_of(names_.begin(), names_.end(), [](const std::string& s) { return s.size() == 1; });
  }

  // Words are written one character per symbol.
  std::vector<Symbol> parse_word(std::string_view w) const {
    require(single_char(), ErrorCode::unsupported_operation, "word syntax needs single-character symbols");
    std::vector<Symbol> out;
    out.reserve(w.size());
    for (char c : w) out.push_back(index_of(std::string_view(&c, 1)));
    return out;
  }

  std::string format_word(const std::vector<Symbol>& w) const {
    std::string s;
    for (Symbol x : w) s += name(x);
    return s;
  }

  bool operator==(const Alphabet& o) const = default;

 private:
  std::vector<std::string> names_;
};

class Pattern {
 public:
  explicit Pattern(GroupDescriptor g) : support_(std::move(g)) {}

  // Values are aligned with the canonical order of the support.
  Pattern(FiniteSubset support, std::vector<Symbol> values) : support_(std::move(support)), values_(std::move(values)) {
    require(values_.size() == support_.size(), ErrorCode::validation, "pattern value count differs from support size");
  }

  // Builds from unsorted (element, value) pairs.
  static Pattern from_cells(const GroupDescriptor& g, std::vector<std::pair<GroupElement, Symbol>> cells) {
    std::sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 1; i < cells.size(); ++i)
      require(!(cells[i].first == cells[i - 1].first), ErrorCode::validation, "duplicate pattern cell");
    std::vector<GroupElement> pts;
    std::vector<Symbol> vals;
    for (auto& [e, v] : cells) {
      pts.push_back(e);
      vals.push_back(v);
    }
    return Pattern(FiniteSubset(g, std::move(pts)), std::move(vals));
  }

  const FiniteSubset& support() const noexcept { return support_; }
  const GroupDescriptor& group() const noexcept { return support_.group(); }
  const std::vector<Symbol>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  std::optional<Symbol> at(const GroupElement& g) const {
    std::size_t i = support_.index_of(g);
    if (i == support_.size()) return std::nullopt;
    return values_[i];
  }

  Symbol at_or(const GroupElement& g, Symbol fallback) const { return at(g).value_or(fallback); }

  Pattern restrict(const FiniteSubset& omega) const {
    std::vector<GroupElement> pts;
    std::vector<Symbol> vals;
    for (const auto& e : omega) {
      std::size_t i = support_.index_of(e);
      require(i != support_.size(), ErrorCode::domain, "restriction target is not inside the support");
      pts.push_back(e);
      vals.push_back(values_[i]);
    }
    return Pattern(FiniteSubset(group(), std::move(pts)), std::move(vals));
  }

  Symbol max_value() const {
    Symbol m = 0;
    for (Symbol v : values_) m = std::max(m, v);
    return m;
  }

  bool operator==(const Pattern& o) const { return support_ == o.support_ && values_ == o.values_; }

 private:
  FiniteSubset support_;
  std::vector<Symbol> values_;
};

// (gp)(gh) = p(h); supp(gp) = g supp(p).
inline Pattern translate_pattern(const GroupElement& g, const Pattern& p) {
  require_member(p.group(), g);
  std::vector<std::pair<GroupElement, Symbol>> cells;
  cells.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) cells.emplace_back(mul(g, p.support()[i]), p.values()[i]);
  return Pattern::from_cells(p.group(), std::move(cells));
}

inline Pattern word_to_pattern(const std::vector<Symbol>& word, int offset = 0) {
  std::vector<GroupElement> pts;
  for (std::size_t i = 0; i < word.size(); ++i) pts.push_back(GroupElement::integer(offset + static_cast<int>(i)));
  return Pattern(FiniteSubset(GroupDescriptor::zd(1), std::move(pts)), word);
}

struct PlacedWord {
  std::vector<Symbol> word;
  int offset = 0;
  bool operator==(const PlacedWord&) const = default;
};

inline PlacedWord pattern_to_word(const Pattern& p) {
  require(p.group().is_zd() && p.group().dimension() == 1, ErrorCode::unsupported_operation,
          "words exist only over Z");
  PlacedWord out;
  if (p.empty()) return out;
  out.offset = p.support()[0].coord(0);
  for (std::size_t i = 0; i < p.size(); ++i)
    require(p.support()[i].coord(0) == out.offset + static_cast<int>(i), ErrorCode::validation,
            "pattern support is not an interval");
  out.word = p.values();
  return out;
}

// Configuration equal to a constant outside a finite set.
class FiniteConfig {
 public:
  FiniteConfig(Symbol background, Pattern deviation) : background_(background), deviation_(std::move(deviation)) {
    normalize();
  }

  static FiniteConfig constant(const GroupDescriptor& g, Symbol background) {
    return FiniteConfig(background, Pattern(g));
  }

  Symbol background() const noexcept { return background_; }
  const Pattern& deviation() const noexcept { return deviation_; }
  const GroupDescriptor& group() const noexcept { return deviation_.group(); }
  Symbol at(const GroupElement& g) const { return deviation_.at_or(g, background_); }

  bool operator==(const FiniteConfig& o) const {
    return background_ == o.background_ && deviation_ == o.deviation_;
  }

 private:
  void normalize() {
    std::vector<GroupElement> pts;
    std::vector<Symbol> vals;
    for (std::size_t i = 0; i < deviation_.size(); ++i) {
      if (deviation_.values()[i] == background_) continue;
      pts.push_back(deviation_.support()[i]);
      vals.push_back(deviation_.values()[i]);
    }
    if (pts.size() != deviation_.size())
      deviation_ = Pattern(FiniteSubset(deviation_.group(), std::move(pts)), std::move(vals));
  }

  Symbol background_;
  Pattern deviation_;
};

inline FiniteConfig translate_config(const GroupElement& g, const FiniteConfig& x) {
  return FiniteConfig(x.background(), translate_pattern(g, x.deviation()));
}

// Z^d configuration periodic under L_i e_i; stored as a dense torus in
// lexicographic order of (c_1 mod L_1, ..., c_d mod L_d).
class PeriodicConfig {
 public:
  PeriodicConfig(std::vector<int> periods, std::vector<Symbol> cells)
      : periods_(std::move(periods)), cells_(std::move(cells)) {
    require(!periods_.empty(), ErrorCode::validation, "periodic configuration needs d >= 1");
    std::size_t n = 1;
    for (int l : periods_) {
      require(l >= 1, ErrorCode::validation, "periods must be positive");
      n *= static_cast<std::size_t>(l);
    }
    require(cells_.size() == n, ErrorCode::validation, "torus array size differs from product of periods");
  }

  int dimension() const noexcept { return static_cast<int>(periods_.size()); }
  const std::vector<int>& periods() const noexcept { return periods_; }
  const std::vector<Symbol>& cells() const noexcept { return cells_; }

  std::size_t offset(const GroupElement& g) const {
    require(g.kind() == GroupKind::zd && g.dim() == dimension(), ErrorCode::descriptor_mismatch,
            "element dimension differs from torus dimension");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < periods_.size(); ++i) {
      int l = periods_[i];
      int c = ((g.raw()[i] % l) + l) % l;
      idx = idx * static_cast<std::size_t>(l) + static_cast<std::size_t>(c);
    }
    return idx;
  }

  Symbol at(const GroupElement& g) const { return cells_[offset(g)]; }

  // Element with coordinates in [0, L_i) at a torus offset.
  GroupElement element(std::size_t offset) const {
    std::vector<int> c(periods_.size());
    for (std::size_t i = periods_.size(); i-- > 0;) {
      c[i] = static_cast<int>(offset % static_cast<std::size_t>(periods_[i]));
      offset /= static_cast<std::size_t>(periods_[i]);
    }
    return GroupElement::vec(std::move(c));
  }

  bool operator==(const PeriodicConfig& o) const = default;

 private:
  std::vector<int> periods_;
  std::vector<Symbol> cells_;
};

inline PeriodicConfig translate_periodic(const GroupElement& g, const PeriodicConfig& x) {
  std::vector<Symbol> out(x.cells().size());
  GroupElement ginv = inverse(g);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.at(mul(ginv, x.element(i)));
  return PeriodicConfig(x.periods(), std::move(out));
}

namespace detail {
inline std::uint64_t& enumeration_cap_slot() {
  static std::uint64_t cap = 1ull << 32;
  return cap;
}
}  // namespace detail

inline std::uint64_t enumeration_cap() { return detail::enumeration_cap_slot(); }
inline void set_enumeration_cap(std::uint64_t cap) { detail::enumeration_cap_slot() = cap; }

// a^n, or nullopt when it does not fit below `limit`.
inline std::optional<std::uint64_t> bounded_power(std::uint64_t a, std::size_t n, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (a != 0 && r > limit / a) return std::nullopt;
    r *= a;
  }
  if (r > limit) return std::nullopt;
  return r;
}

// Mixed-radix bijection between patterns on a support and [0, a^|support|).
// The most significant digit sits at the first support point.
class PatternEnumerator {
 public:
  PatternEnumerator(FiniteSubset support, std::size_t alphabet_size, std::uint64_t cap = enumeration_cap())
      : support_(std::move(support)), a_(alphabet_size) {
    require(a_ >= 1, ErrorCode::validation, "alphabet must be nonempty");
    auto n = bounded_power(a_, support_.size(), cap);
    require(n.has_value(), ErrorCode::budget,
            "enumeration of " + std::to_string(a_) + "^" + std::to_string(support_.size()) +
                " patterns exceeds the cap");
    count_ = *n;
  }

  std::uint64_t count() const noexcept { return count_; }
  const FiniteSubset& support() const noexcept { return support_; }
  std::size_t alphabet_size() const noexcept { return a_; }

  void decode(std::uint64_t index, Symbol* digits) const {
    for (std::size_t i = support_.size(); i-- > 0;) {
      digits[i] = static_cast<Symbol>(index % a_);
      index /= a_;
    }
  }

  Pattern pattern_at(std::uint64_t index) const {
    require(index < count_, ErrorCode::out_of_range, "pattern index out of range");
    std::vector<Symbol> v(support_.size());
    decode(index, v.data());
    return Pattern(support_, std::move(v));
  }

  std::uint64_t index_of(const Pattern& p) const {
    require(p.support() == support_, ErrorCode::validation, "pattern support differs from enumeration support");
    std::uint64_t idx = 0;
    for (Symbol v : p.values()) {
      require(v < a_, ErrorCode::alphabet_mismatch, "pattern value outside alphabet");
      idx = idx * a_ + v;
    }
    return idx;
  }

  // Calls fn(pattern) for every pattern in index order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t i = 0; i < count_; ++i) fn(pattern_at(i));
  }

 private:
  FiniteSubset support_;
  std::size_t a_;
  std::uint64_t count_ = 0;
};

inline std::vector<Pattern> enumerate_patterns(const FiniteSubset& omega, const Alphabet& a) {
  PatternEnumerator en(omega, a.size());
  std::vector<Pattern> out;
  out.reserve(static_cast<std::size_t>(en.count()));
  en.for_each([&](Pattern p) { out.push_back(std::move(p)); });
  return out;
}

// Odometer over digit vectors in mixed-radix order; returns false after the last one.
inline bool next_digits(std::vector<Symbol>& digits, std::size_t a) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (static_cast<std::size_t>(digits[i]) + 1 < a) {
      ++digits[i];
      return true;
    }
    digits[i] = 0;
  }
  return false;
}

}  // namespace goelab
