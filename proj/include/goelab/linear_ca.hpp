#pragma once

// Linear cellular automata with alphabet F_p^d: elements of F_p[G], matrices over F_p[G],
// their realization as automata, the adjoint and finite-support kernels.
//
// Realization: tau_M(x)(g) = sum_s M_s x(gs), where M_s is the d x d matrix of s-coefficients.
// With this convention tau_{MN} = tau_M o tau_N, and the adjoint M* (transpose plus g -> g^-1
// on every entry) satisfies <tau_M(x), y> = <x, tau_{M*}(y)>.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "goelab/automaton.hpp"
#include "goelab/decide1d.hpp"
#include "goelab/error.hpp"
#include "goelab/group.hpp"
#include "goelab/pattern.hpp"

namespace goelab {

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

class GroupRingElement {
 public:
  GroupRingElement(GroupDescriptor group, std::uint32_t p) : group_(std::move(group)), p_(p) {
    require(is_prime(p_), ErrorCode::validation, "coefficient field needs a prime p");
  }
  GroupRingElement(GroupDescriptor group, std::uint32_t p, const std::vector<std::pair<GroupElement, std::int64_t>>& terms)
      : GroupRingElement(std::move(group), p) {
    for (const auto& [g, c] : terms) add(g, c);
  }

  static GroupRingElement delta(const GroupDescriptor& group, std::uint32_t p, const GroupElement& g,
                                std::int64_t c = 1) {
    return GroupRingElement(group, p, {{g, c}});
  }

  const GroupDescriptor& group() const noexcept { return group_; }
  std::uint32_t prime() const noexcept { return p_; }
  const std::map<GroupElement, std::uint32_t>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  std::uint32_t at(const GroupElement& g) const {
    auto it = coeffs_.find(g);
    return it == coeffs_.end() ? 0 : it->second;
  }

  void add(const GroupElement& g, std::int64_t c) {
    require_member(group_, g);
    std::int64_t m = ((c % static_cast<std::int64_t>(p_)) + p_) % p_;
    if (m == 0) return;
    std::uint32_t v = (at(g) + static_cast<std::uint32_t>(m)) % p_;
    if (v == 0)
      coeffs_.erase(g);
    else
      coeffs_[g] = v;
  }

  FiniteSubset support() const {
    std::vector<GroupElement> s;
    for (const auto& kv : coeffs_) s.push_back(kv.first);
    return FiniteSubset(group_, std::move(s));
  }

  bool operator==(const GroupRingElement& o) const {
    return group_ == o.group_ && p_ == o.p_ && coeffs_ == o.coeffs_;
  }

 private:
  GroupDescriptor group_;
  std::uint32_t p_;
  std::map<GroupElement, std::uint32_t> coeffs_;
};

inline void require_compatible(const GroupRingElement& r, const GroupRingElement& s) {
  require(r.group().same_group(s.group()), ErrorCode::descriptor_mismatch, "group ring elements over different groups");
  require(r.prime() == s.prime(), ErrorCode::validation, "group ring elements over different fields");
}

inline GroupRingElement operator+(const GroupRingElement& r, const GroupRingElement& s) {
  require_compatible(r, s);
  GroupRingElement out = r;
  for (const auto& [g, c] : s.coeffs()) out.add(g, c);
  return out;
}

// (rs)(g) = sum over g1 g2 = g of r(g1) s(g2).
inline GroupRingElement convolution(const GroupRingElement& r, const GroupRingElement& s) {
  require_compatible(r, s);
  GroupRingElement out(r.group(), r.prime());
  for (const auto& [g1, c1] : r.coeffs())
    for (const auto& [g2, c2] : s.coeffs()) out.add(mul(g1, g2), static_cast<std::int64_t>(c1) * c2);
  return out;
}

inline GroupRingElement operator*(const GroupRingElement& r, const GroupRingElement& s) { return convolution(r, s); }

// r*(g) = r(g^-1).
inline GroupRingElement involution(const GroupRingElement& r) {
  GroupRingElement out(r.group(), r.prime());
  for (const auto& [g, c] : r.coeffs()) out.add(inverse(g), c);
  return out;
}

inline std::string to_string(const GroupRingElement& r) {
  if (r.is_zero()) return "0";
  std::string s;
  for (const auto& [g, c] : r.coeffs()) {
    if (!s.empty()) s += " + ";
    if (c != 1) s += std::to_string(c) + "*";
    s += to_string(r.group(), g);
  }
  return s;
}

class MatrixCA {
 public:
  MatrixCA(std::uint32_t p, std::size_t d, std::vector<std::vector<GroupRingElement>> entries)
      : p_(p), d_(d), entries_(std::move(entries)) {
    require(d_ >= 1, ErrorCode::validation, "matrix dimension must be positive");
    require(entries_.size() == d_, ErrorCode::validation, "matrix needs d rows");
    for (const auto& row : entries_) {
      require(row.size() == d_, ErrorCode::validation, "matrix needs d columns");
      for (const auto& e : row) {
        require(e.prime() == p_, ErrorCode::validation, "matrix entries over different fields");
        require(e.group().same_group(entries_[0][0].group()), ErrorCode::descriptor_mismatch,
                "matrix entries over different groups");
      }
    }
  }

  static MatrixCA zero(const GroupDescriptor& g, std::uint32_t p, std::size_t d) {
    return MatrixCA(p, d, std::vector<std::vector<GroupRingElement>>(d, std::vector<GroupRingElement>(d, GroupRingElement(g, p))));
  }

  static MatrixCA identity(const GroupDescriptor& g, std::uint32_t p, std::size_t d) {
    MatrixCA m = zero(g, p, d);
    for (std::size_t i = 0; i < d; ++i) m.entries_[i][i] = GroupRingElement::delta(g, p, GroupElement::identity(g));
    return m;
  }

  std::uint32_t prime() const noexcept { return p_; }
  std::size_t dim() const noexcept { return d_; }
  const GroupDescriptor& group() const { return entries_[0][0].group(); }
  const GroupRingElement& at(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  GroupRingElement& at(std::size_t i, std::size_t j) { return entries_[i][j]; }
  const std::vector<std::vector<GroupRingElement>>& entries() const noexcept { return entries_; }

  // Union of entry supports; {1} for the zero matrix.
  FiniteSubset memory() const {
    FiniteSubset s(group(), {});
    for (const auto& row : entries_)
      for (const auto& e : row) s = set_union(s, e.support());
    if (s.empty()) s = singleton(group(), GroupElement::identity(group()));
    return s;
  }

  bool operator==(const MatrixCA& o) const { return p_ == o.p_ && d_ == o.d_ && entries_ == o.entries_; }

 private:
  std::uint32_t p_;
  std::size_t d_;
  std::vector<std::vector<GroupRingElement>> entries_;
};

inline MatrixCA operator*(const MatrixCA& m, const MatrixCA& n) {
  require(m.prime() == n.prime() && m.dim() == n.dim(), ErrorCode::validation, "matrix shapes differ");
  MatrixCA out = MatrixCA::zero(m.group(), m.prime(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      for (std::size_t k = 0; k < m.dim(); ++k) out.at(i, j) = out.at(i, j) + convolution(m.at(i, k), n.at(k, j));
  return out;
}

// (M*)_{ij} = (M_{ji})*.
inline MatrixCA adjoint(const MatrixCA& m) {
  MatrixCA out = MatrixCA::zero(m.group(), m.prime(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out.at(i, j) = involution(m.at(j, i));
  return out;
}

// Vectors of F_p^d as symbols, coordinate 0 most significant.
inline Symbol encode_vector(const std::vector<std::uint32_t>& v, std::uint32_t p) {
  std::uint32_t s = 0;
  for (auto c : v) s = s * p + c;
  return static_cast<Symbol>(s);
}

inline std::vector<std::uint32_t> decode_vector(Symbol s, std::uint32_t p, std::size_t d) {
  std::vector<std::uint32_t> v(d);
  for (std::size_t i = d; i-- > 0;) {
    v[i] = s % p;
    s = static_cast<Symbol>(s / p);
  }
  return v;
}

inline Alphabet vector_alphabet(std::uint32_t p, std::size_t d) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < d; ++i) n *= p;
  require(n <= 4096, ErrorCode::budget, "vector alphabet too large");
  if (d == 1) return Alphabet::digits(n);
  std::vector<std::string> names;
  for (std::size_t s = 0; s < n; ++s) {
    std::string name = "(";
    auto v = decode_vector(static_cast<Symbol>(s), p, d);
    for (std::size_t i = 0; i < d; ++i) name += (i ? "," : "") + std::to_string(v[i]);
    names.push_back(name + ")");
  }
  return Alphabet(std::move(names));
}

inline CellularAutomaton to_cellular_automaton(const MatrixCA& m) {
  FiniteSubset s = m.memory();
  const std::uint32_t p = m.prime();
  const std::size_t d = m.dim();
  Alphabet a = vector_alphabet(p, d);
  require(bounded_power(a.size(), s.size(), std::uint64_t{1} << 24).has_value(), ErrorCode::budget,
          "linear automaton table exceeds the budget");
  // coeff[k][i][j] = (M_{s_k})_{ij}
  std::vector<std::vector<std::vector<std::uint32_t>>> coeff(s.size(),
                                                             std::vector<std::vector<std::uint32_t>>(d, std::vector<std::uint32_t>(d)));
  for (std::size_t k = 0; k < s.size(); ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) coeff[k][i][j] = m.at(i, j).at(s[k]);
  return CellularAutomaton::from_rule(m.group(), a, a, s, [&](const std::vector<Symbol>& w) {
    std::vector<std::uint32_t> y(d, 0);
    for (std::size_t k = 0; k < s.size(); ++k) {
      auto x = decode_vector(w[k], p, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) y[i] = (y[i] + coeff[k][i][j] * x[j]) % p;
    }
    return encode_vector(y, p);
  });
}

// Componentwise sum of two symbols of F_p^d.
inline Symbol add_symbols(Symbol x, Symbol y, std::uint32_t p, std::size_t d) {
  auto u = decode_vector(x, p, d), v = decode_vector(y, p, d);
  for (std::size_t i = 0; i < d; ++i) u[i] = (u[i] + v[i]) % p;
  return encode_vector(u, p);
}

// rule(w + w') = rule(w) + rule(w') for up to max_pairs window pairs (all pairs when fewer).
inline bool additive_table(const CellularAutomaton& tau, std::uint32_t p, std::size_t d,
                           std::uint64_t max_pairs = std::uint64_t{1} << 20, std::uint64_t seed = 0) {
  const std::size_t n = tau.table().size();
  const std::size_t k = tau.memory().size();
  const std::size_t a = tau.input().size();
  PatternEnumerator en(tau.memory(), a);
  auto check = [&](std::uint64_t i, std::uint64_t j) {
    std::vector<Symbol> wi(k), wj(k), ws(k);
    en.decode(i, wi.data());
    en.decode(j, wj.data());
    for (std::size_t t = 0; t < k; ++t) ws[t] = add_symbols(wi[t], wj[t], p, d);
    return tau.eval(ws.data()) == add_symbols(tau.rule(i), tau.rule(j), p, d);
  };
  if (static_cast<double>(n) * static_cast<double>(n) <= static_cast<double>(max_pairs)) {
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j)
        if (!check(i, j)) return false;
    return true;
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < max_pairs; ++t)
    if (!check(rng() % n, rng() % n)) return false;
  return true;
}

// Finite pairing sum over F_p^d: sum_g <x(g), y(g)> with x finitely supported.
inline std::uint32_t pairing(const Pattern& x, const std::function<Symbol(const GroupElement&)>& y, std::uint32_t p,
                             std::size_t d) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto u = decode_vector(x.values()[i], p, d), v = decode_vector(y(x.support()[i]), p, d);
    for (std::size_t t = 0; t < d; ++t) s = (s + static_cast<std::uint64_t>(u[t]) * v[t]) % p;
  }
  return static_cast<std::uint32_t>(s);
}

struct PairingCheck {
  std::size_t trials = 0;
  std::size_t failures = 0;
  bool ok() const { return failures == 0; }
};

// <tau(x), y> = <x, tau*(y)> for random x supported in B_rx and random y supported in B_ry.
inline PairingCheck pairing_identity_check(const MatrixCA& m, std::size_t trials, std::uint64_t seed, int rx = 3,
                                           int ry = 5) {
  CellularAutomaton tau = to_cellular_automaton(m);
  CellularAutomaton tstar = to_cellular_automaton(adjoint(m));
  const std::uint32_t p = m.prime();
  const std::size_t d = m.dim();
  const std::size_t a = tau.input().size();
  std::mt19937_64 rng(seed);
  FiniteSubset bx = ball(m.group(), rx), by = ball(m.group(), ry);
  PairingCheck res;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Symbol> xv(bx.size()), yv(by.size());
    for (auto& v : xv) v = static_cast<Symbol>(rng() % a);
    for (auto& v : yv) v = static_cast<Symbol>(rng() % a);
    Pattern px(bx, xv), py(by, yv);
    FiniteConfig x(0, px), y(0, py);
    FiniteConfig tx = apply_to_finite_config(tau, x);
    FiniteConfig ty = apply_to_finite_config(tstar, y);
    auto yf = [&](const GroupElement& g) { return y.at(g); };
    auto tyf = [&](const GroupElement& g) { return ty.at(g); };
    std::uint32_t lhs = pairing(tx.deviation(), yf, p, d);
    std::uint32_t rhs = pairing(x.deviation(), tyf, p, d);
    ++res.trials;
    if (lhs != rhs) ++res.failures;
  }
  return res;
}

struct DualityReport {
  bool preinjective = false;
  bool surjective = false;
  bool adjoint_preinjective = false;
  bool adjoint_surjective = false;
  bool ok() const { return preinjective == adjoint_surjective && surjective == adjoint_preinjective; }
};

inline DualityReport duality_check(const MatrixCA& m) {
  require_1d(m.group());
  CellularAutomaton tau = to_cellular_automaton(m);
  CellularAutomaton tstar = to_cellular_automaton(adjoint(m));
  DualityReport r;
  r.preinjective = decide_preinjective(tau).holds;
  r.surjective = decide_surjective(tau).surjective;
  r.adjoint_preinjective = decide_preinjective(tstar).holds;
  r.adjoint_surjective = decide_surjective(tstar).surjective;
  return r;
}

// Random d x d matrix with entries supported in `support` and uniform F_p coefficients.
inline MatrixCA random_matrix(std::mt19937_64& rng, const GroupDescriptor& g, std::uint32_t p, std::size_t d,
                              const FiniteSubset& support) {
  MatrixCA m = MatrixCA::zero(g, p, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& s : support) m.at(i, j).add(s, static_cast<std::int64_t>(rng() % p));
  return m;
}

// Row reduction over F_p; returns a basis of the null space of the rows x cols matrix.
inline std::vector<std::vector<std::uint32_t>> null_space_mod_p(std::vector<std::vector<std::uint32_t>> a,
                                                                std::size_t cols, std::uint32_t p) {
  auto inv = [&](std::uint32_t x) {
    std::uint64_t r = 1, b = x, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  };
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t r = row;
    while (r < a.size() && a[r][c] == 0) ++r;
    if (r == a.size()) continue;
    std::swap(a[r], a[row]);
    std::uint32_t f = inv(a[row][c]);
    for (auto& v : a[row]) v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * f % p);
    for (std::size_t r2 = 0; r2 < a.size(); ++r2) {
      if (r2 == row || a[r2][c] == 0) continue;
      std::uint64_t g = a[r2][c];
      for (std::size_t k = 0; k < cols; ++k)
        a[r2][k] = static_cast<std::uint32_t>((a[r2][k] + (p - g) * a[row][k]) % p);
    }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = (p - a[r][f]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

struct KernelResult {
  int radius = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::vector<Pattern> basis;  // kernel elements on B_R
  bool trivial() const { return basis.empty(); }
};

inline std::size_t& kernel_unknown_budget() {
  static std::size_t budget = 8192;
  return budget;
}

// Kernel of tau restricted to configurations supported in B_R. Such a configuration has zero
// image iff the image vanishes on B_R S^-1, so the map into (F_p^d)^{B_R S^-1} is exact.
inline KernelResult kernel_finite_support(const MatrixCA& m, int radius) {
  require(radius >= 0, ErrorCode::validation, "radius must be nonnegative");
  const std::uint32_t p = m.prime();
  const std::size_t d = m.dim();
  FiniteSubset b = ball(m.group(), radius);
  FiniteSubset s = m.memory();
  FiniteSubset targets = set_product(b, set_inverse(s));
  KernelResult res;
  res.radius = radius;
  res.unknowns = b.size() * d;
  res.equations = targets.size() * d;
  require(res.unknowns <= kernel_unknown_budget(), ErrorCode::budget, "kernel solve exceeds the dimension budget");
  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& h : targets) {
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<std::uint32_t> row(res.unknowns, 0);
      for (const auto& sk : s) {
        std::size_t bi = b.index_of(mul(h, sk));
        if (bi == b.size()) continue;
        for (std::size_t j = 0; j < d; ++j)
          row[bi * d + j] = static_cast<std::uint32_t>((row[bi * d + j] + m.at(i, j).at(sk)) % p);
      }
      rows.push_back(std::move(row));
    }
  }
  for (auto& v : null_space_mod_p(std::move(rows), res.unknowns, p)) {
    std::vector<Symbol> vals(b.size());
    for (std::size_t c = 0; c < b.size(); ++c)
      vals[c] = encode_vector(std::vector<std::uint32_t>(v.begin() + static_cast<std::ptrdiff_t>(c * d),
                                                         v.begin() + static_cast<std::ptrdiff_t>((c + 1) * d)),
                              p);
    res.basis.emplace_back(b, std::move(vals));
  }
  return res;
}

}  // namespace goelab
