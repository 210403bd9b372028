#pragma once

// Acting groups: Z^d (integer vectors) and free groups F_k (reduced words), the
// algebra of their finite subsets, Folner cubes, word-metric balls and growth.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "goelab/error.hpp"

namespace goelab {

enum class GroupKind { zd, free };

class GroupDescriptor {
 public:
  static GroupDescriptor zd(int d) {
    require(d >= 1, ErrorCode::validation, "Z^d needs d >= 1");
    GroupDescriptor g;
    g.kind_ = GroupKind::zd;
    g.dim_ = d;
    return g;
  }

  static GroupDescriptor free_group(int rank, std::vector<std::string> names = {}) {
    require(rank >= 2, ErrorCode::validation, "free group needs rank >= 2");
    if (names.empty()) {
      for (int i = 0; i < rank; ++i) names.emplace_back(1, static_cast<char>('a' + i));
    }
    require(static_cast<int>(names.size()) == rank, ErrorCode::validation,
            "generator name count differs from rank");
    for (std::size_t i = 0; i < names.size(); ++i) {
      require(names[i].size() == 1 && names[i] != "1", ErrorCode::validation,
              "generator names must be single characters other than '1'");
      for (std::size_t j = 0; j < i; ++j)
        require(names[i] != names[j], ErrorCode::validation, "duplicate generator name " + names[i]);
    }
    GroupDescriptor g;
    g.kind_ = GroupKind::free;
    g.dim_ = rank;
    g.names_ = std::move(names);
    return g;
  }

  GroupKind kind() const noexcept { return kind_; }
  bool is_zd() const noexcept { return kind_ == GroupKind::zd; }
  bool is_free() const noexcept { return kind_ == GroupKind::free; }
  // d for Z^d, rank for F_k.
  int dimension() const noexcept { return dim_; }
  const std::vector<std::string>& generator_names() const noexcept { return names_; }

  bool same_group(const GroupDescriptor& o) const noexcept { return kind_ == o.kind_ && dim_ == o.dim_; }
  bool operator==(const GroupDescriptor& o) const = default;

  std::string to_string() const {
    return is_zd() ? "Z^" + std::to_string(dim_) : "F_" + std::to_string(dim_);
  }

 private:
  GroupDescriptor() = default;
  GroupKind kind_ = GroupKind::zd;
  int dim_ = 1;
  std::vector<std::string> names_;
};

// A group element. For Z^d the data are coordinates; for F_k the data are letters
// +(i+1) for generator i and -(i+1) for its inverse, always freely reduced.
class GroupElement {
 public:
  static GroupElement identity(const GroupDescriptor& g) {
    GroupElement e(g.kind(), g.dimension());
    if (g.is_zd()) e.data_.assign(static_cast<std::size_t>(g.dimension()), 0);
    return e;
  }

  static GroupElement vec(std::vector<int> coords) {
    require(!coords.empty(), ErrorCode::validation, "Z^d element needs d >= 1 coordinates");
    GroupElement e(GroupKind::zd, static_cast<int>(coords.size()));
    e.data_ = std::move(coords);
    return e;
  }

  static GroupElement integer(int n) { return vec({n}); }

  static GroupElement word(int rank, const std::vector<int>& letters) {
    GroupElement e(GroupKind::free, rank);
    for (int l : letters) {
      require(l != 0 && std::abs(l) <= rank, ErrorCode::validation, "letter outside the generating set");
      e.push_letter(l);
    }
    return e;
  }

  GroupKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  std::span<const int> data() const noexcept { return data_; }
  const std::vector<int>& raw() const noexcept { return data_; }

  int coord(std::size_t i) const { return data_.at(i); }

  bool is_identity() const noexcept {
    if (kind_ == GroupKind::free) return data_.empty();
    return std::all_of(data_.begin(), data_.end(), [](int v) { return v == 0; });
  }

  // Word length for F_k (distance to 1 in the Cayley graph); 1-norm for Z^d.
  long length() const noexcept {
    if (kind_ == GroupKind::free) return static_cast<long>(data_.size());
    long s = 0;
    for (int v : data_) s += std::labs(v);
    return s;
  }

  long sup_norm() const noexcept {
    long s = 0;
    for (int v : data_) s = std::max(s, std::labs(v));
    return s;
  }

  bool compatible(const GroupElement& o) const noexcept { return kind_ == o.kind_ && dim_ == o.dim_; }

  bool operator==(const GroupElement& o) const noexcept {
    return kind_ == o.kind_ && dim_ == o.dim_ && data_ == o.data_;
  }

  // Canonical total order: lexicographic coordinates for Z^d, shortlex words for F_k
  // with letters ordered a < a^-1 < b < b^-1 < ...
  bool operator<(const GroupElement& o) const noexcept {
    if (kind_ != o.kind_) return kind_ < o.kind_;
    if (dim_ != o.dim_) return dim_ < o.dim_;
    if (kind_ == GroupKind::zd) return data_ < o.data_;
    if (data_.size() != o.data_.size()) return data_.size() < o.data_.size();
    for (std::size_t i = 0; i < data_.size(); ++i) {
      int a = letter_key(data_[i]), b = letter_key(o.data_[i]);
      if (a != b) return a < b;
    }
    return false;
  }
  bool operator!=(const GroupElement& o) const noexcept { return !(*this == o); }
  bool operator>(const GroupElement& o) const noexcept { return o < *this; }
  bool operator<=(const GroupElement& o) const noexcept { return !(o < *this); }
  bool operator>=(const GroupElement& o) const noexcept { return !(*this < o); }

  static int letter_key(int letter) noexcept { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

  std::size_t hash() const noexcept {
    std::size_t h = static_cast<std::size_t>(dim_) * 1315423911u + (kind_ == GroupKind::free ? 7 : 3);
    for (int v : data_) h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }

 private:
  friend GroupElement mul(const GroupElement&, const GroupElement&);
  friend GroupElement inverse(const GroupElement&);

  GroupElement(GroupKind k, int d) : kind_(k), dim_(d) {}

  void push_letter(int l) {
    if (!data_.empty() && data_.back() == -l)
      data_.pop_back();
    else
      data_.push_back(l);
  }

  GroupKind kind_;
  int dim_;
  std::vector<int> data_;
};

inline void require_same_group(const GroupElement& a, const GroupElement& b) {
  require(a.compatible(b), ErrorCode::descriptor_mismatch, "operands belong to different groups");
}

inline void require_member(const GroupDescriptor& g, const GroupElement& e) {
  require(g.kind() == e.kind() && g.dimension() == e.dim(), ErrorCode::descriptor_mismatch,
          "element does not belong to " + g.to_string());
}

inline GroupElement mul(const GroupElement& g, const GroupElement& h) {
  require_same_group(g, h);
  GroupElement out = g;
  if (g.kind() == GroupKind::zd) {
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += h.data_[i];
  } else {
    for (int l : h.data_) out.push_letter(l);
  }
  return out;
}

inline GroupElement inverse(const GroupElement& g) {
  GroupElement out = g;
  if (g.kind() == GroupKind::zd) {
    for (int& v : out.data_) v = -v;
  } else {
    std::reverse(out.data_.begin(), out.data_.end());
    for (int& l : out.data_) l = -l;
  }
  return out;
}

inline GroupElement operator*(const GroupElement& g, const GroupElement& h) { return mul(g, h); }

// Standard symmetric generating set in canonical order.
inline std::vector<GroupElement> symmetric_generators(const GroupDescriptor& g) {
  std::vector<GroupElement> out;
  if (g.is_zd()) {
    for (int i = 0; i < g.dimension(); ++i) {
      for (int sign : {-1, 1}) {
        std::vector<int> v(static_cast<std::size_t>(g.dimension()), 0);
        v[static_cast<std::size_t>(i)] = sign;
        out.push_back(GroupElement::vec(std::move(v)));
      }
    }
  } else {
    for (int i = 1; i <= g.dimension(); ++i) {
      out.push_back(GroupElement::word(g.dimension(), {i}));
      out.push_back(GroupElement::word(g.dimension(), {-i}));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline GroupElement unit_vector(int d, int axis, int scale = 1) {
  std::vector<int> v(static_cast<std::size_t>(d), 0);
  v.at(static_cast<std::size_t>(axis)) = scale;
  return GroupElement::vec(std::move(v));
}

inline std::string to_string(const GroupDescriptor& g, const GroupElement& e) {
  require_member(g, e);
  std::string s;
  if (g.is_zd()) {
    s = "(";
    for (std::size_t i = 0; i < e.raw().size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e.raw()[i]);
    }
    return s + ")";
  }
  if (e.raw().empty()) return "1";
  for (int l : e.raw()) {
    s += g.generator_names()[static_cast<std::size_t>(std::abs(l) - 1)];
    if (l < 0) s += "^-1";
  }
  return s;
}

// Parses "1", "" or a concatenation of generator names each optionally followed by "^-1".
inline GroupElement parse_free_element(const GroupDescriptor& g, std::string_view text) {
  require(g.is_free(), ErrorCode::unsupported_operation, "word syntax is only defined for free groups");
  std::vector<int> letters;
  if (text == "1") return GroupElement::identity(g);
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    int found = 0;
    for (std::size_t k = 0; k < g.generator_names().size(); ++k)
      if (g.generator_names()[k][0] == text[i]) found = static_cast<int>(k) + 1;
    require(found != 0, ErrorCode::parse, "unknown generator '" + std::string(1, text[i]) + "'");
    ++i;
    if (text.substr(i, 3) == "^-1") {
      found = -found;
      i += 3;
    }
    letters.push_back(found);
  }
  return GroupElement::word(g.dimension(), letters);
}

// Canonically ordered duplicate-free finite subset of a group.
class FiniteSubset {
 public:
  explicit FiniteSubset(GroupDescriptor g) : group_(std::move(g)) {}

  FiniteSubset(GroupDescriptor g, std::vector<GroupElement> elems) : group_(std::move(g)), elems_(std::move(elems)) {
    for (const auto& e : elems_) require_member(group_, e);
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  static FiniteSubset interval(int lo, int hi) {
    std::vector<GroupElement> v;
    for (int i = lo; i <= hi; ++i) v.push_back(GroupElement::integer(i));
    return FiniteSubset(GroupDescriptor::zd(1), std::move(v));
  }

  // Box {lo_1..hi_1} x ... x {lo_d..hi_d} in Z^d.
  static FiniteSubset box(const std::vector<int>& lo, const std::vector<int>& hi) {
    require(lo.size() == hi.size() && !lo.empty(), ErrorCode::validation, "box bounds must have equal length");
    std::vector<GroupElement> v;
    std::vector<int> cur = lo;
    const bool empty = [&] {
      for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) return true;
      return false;
    }();
    while (!empty) {
      v.push_back(GroupElement::vec(cur));
      std::size_t i = cur.size();
      while (i > 0) {
        --i;
        if (cur[i] < hi[i]) {
          ++cur[i];
          break;
        }
        cur[i] = lo[i];
        if (i == 0) goto done;
      }
    }
  done:
    return FiniteSubset(GroupDescriptor::zd(static_cast<int>(lo.size())), std::move(v));
  }

  const GroupDescriptor& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  const GroupElement& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<GroupElement>& elements() const noexcept { return elems_; }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }

  bool contains(const GroupElement& e) const { return std::binary_search(elems_.begin(), elems_.end(), e); }

  // Position in canonical order, or size() when absent.
  std::size_t index_of(const GroupElement& e) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    if (it == elems_.end() || !(*it == e)) return elems_.size();
    return static_cast<std::size_t>(it - elems_.begin());
  }

  bool subset_of(const FiniteSubset& o) const {
    return std::includes(o.elems_.begin(), o.elems_.end(), elems_.begin(), elems_.end());
  }

  bool operator==(const FiniteSubset& o) const { return group_.same_group(o.group_) && elems_ == o.elems_; }

 private:
  GroupDescriptor group_;
  std::vector<GroupElement> elems_;
};

inline void require_same_group(const FiniteSubset& a, const FiniteSubset& b) {
  require(a.group().same_group(b.group()), ErrorCode::descriptor_mismatch, "subsets belong to different groups");
}

// AB = {ab : a in A, b in B}.
inline FiniteSubset set_product(const FiniteSubset& a, const FiniteSubset& b) {
  require_same_group(a, b);
  std::vector<GroupElement> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(mul(x, y));
  return FiniteSubset(a.group(), std::move(out));
}

inline FiniteSubset set_inverse(const FiniteSubset& a) {
  std::vector<GroupElement> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(inverse(x));
  return FiniteSubset(a.group(), std::move(out));
}

// gA.
inline FiniteSubset translate(const GroupElement& g, const FiniteSubset& a) {
  require_member(a.group(), g);
  std::vector<GroupElement> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(mul(g, x));
  return FiniteSubset(a.group(), std::move(out));
}

// Ag.
inline FiniteSubset right_translate(const FiniteSubset& a, const GroupElement& g) {
  require_member(a.group(), g);
  std::vector<GroupElement> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(mul(x, g));
  return FiniteSubset(a.group(), std::move(out));
}

inline FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b) {
  require_same_group(a, b);
  std::vector<GroupElement> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSubset(a.group(), std::move(out));
}

inline FiniteSubset set_difference(const FiniteSubset& a, const FiniteSubset& b) {
  require_same_group(a, b);
  std::vector<GroupElement> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSubset(a.group(), std::move(out));
}

inline FiniteSubset set_intersection(const FiniteSubset& a, const FiniteSubset& b) {
  require_same_group(a, b);
  std::vector<GroupElement> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSubset(a.group(), std::move(out));
}

inline FiniteSubset singleton(const GroupDescriptor& g, const GroupElement& e) { return FiniteSubset(g, {e}); }

// F_n = {x : |x|_inf <= n}.
inline FiniteSubset folner_set(const GroupDescriptor& g, int n) {
  require(g.is_zd(), ErrorCode::unsupported_operation, "Folner cubes are only defined for Z^d");
  require(n >= 0, ErrorCode::validation, "n must be nonnegative");
  return FiniteSubset::box(std::vector<int>(static_cast<std::size_t>(g.dimension()), -n),
                           std::vector<int>(static_cast<std::size_t>(g.dimension()), n));
}

// Word-metric ball for the standard symmetric generators (1-norm ball in Z^d).
inline FiniteSubset ball(const GroupDescriptor& g, int n) {
  require(n >= 0, ErrorCode::validation, "radius must be nonnegative");
  std::vector<GroupElement> out;
  if (g.is_zd()) {
    FiniteSubset cube = folner_set(g, n);
    for (const auto& e : cube)
      if (e.length() <= n) out.push_back(e);
    return FiniteSubset(g, std::move(out));
  }
  std::vector<std::vector<int>> layer{{}};
  out.push_back(GroupElement::identity(g));
  const int k = g.dimension();
  for (int len = 1; len <= n; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer) {
      for (int i = 1; i <= k; ++i) {
        for (int l : {i, -i}) {
          if (!w.empty() && w.back() == -l) continue;
          auto nw = w;
          nw.push_back(l);
          next.push_back(std::move(nw));
        }
      }
    }
    for (const auto& w : next) out.push_back(GroupElement::word(k, w));
    layer = std::move(next);
  }
  return FiniteSubset(g, std::move(out));
}

namespace detail {
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  require(b == 0 || a <= std::numeric_limits<std::uint64_t>::max() / b, ErrorCode::budget,
          "count exceeds 64-bit range");
  return a * b;
}
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  require(a <= std::numeric_limits<std::uint64_t>::max() - b, ErrorCode::budget, "count exceeds 64-bit range");
  return a + b;
}
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}
}  // namespace detail

// Number of elements at word distance exactly n, by counting formula:
// 2k(2k-1)^(n-1) in F_k, sum_j 2^j C(d,j) C(n-1,j-1) in Z^d.
inline std::uint64_t sphere_size(const GroupDescriptor& g, int n) {
  require(n >= 0, ErrorCode::validation, "radius must be nonnegative");
  if (n == 0) return 1;
  if (g.is_free()) {
    std::uint64_t k2 = 2ull * static_cast<std::uint64_t>(g.dimension());
    std::uint64_t r = k2;
    for (int i = 1; i < n; ++i) r = detail::checked_mul(r, k2 - 1);
    return r;
  }
  std::uint64_t total = 0;
  const auto d = static_cast<std::uint64_t>(g.dimension());
  for (std::uint64_t j = 1; j <= d; ++j) {
    std::uint64_t term = detail::checked_mul(detail::checked_mul(1ull << j, detail::binomial(d, j)),
                                             detail::binomial(static_cast<std::uint64_t>(n - 1), j - 1));
    total = detail::checked_add(total, term);
  }
  return total;
}

inline std::uint64_t ball_size(const GroupDescriptor& g, int n) {
  std::uint64_t s = 0;
  for (int i = 0; i <= n; ++i) s = detail::checked_add(s, sphere_size(g, i));
  return s;
}

using Rational = boost::rational<std::int64_t>;

// |F \ Fg| / |F|.
inline Rational folner_defect(const FiniteSubset& f, const GroupElement& g) {
  require(!f.empty(), ErrorCode::domain, "Folner defect of the empty set");
  FiniteSubset shifted = right_translate(f, g);
  auto outside = static_cast<std::int64_t>(set_difference(f, shifted).size());
  return Rational(outside, static_cast<std::int64_t>(f.size()));
}

struct GrowthRow {
  int n;
  std::uint64_t ball;    // |B_n|
  double ball_root;      // |B_n|^(1/n)
  std::uint64_t sphere;  // |B_n| - |B_{n-1}|
  double sphere_root;    // sphere^(1/n)
};

inline std::vector<GrowthRow> growth_rate_estimate(const GroupDescriptor& g, int n_max) {
  require(n_max >= 1, ErrorCode::validation, "n_max must be >= 1");
  std::vector<GrowthRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    GrowthRow r{n, ball_size(g, n), 0.0, sphere_size(g, n), 0.0};
    r.ball_root = std::pow(static_cast<double>(r.ball), 1.0 / n);
    r.sphere_root = std::pow(static_cast<double>(r.sphere), 1.0 / n);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace goelab

template <>
struct std::hash<goelab::GroupElement> {
  std::size_t operator()(const goelab::GroupElement& e) const noexcept { return e.hash(); }
};
