#pragma once

// Topological entropy: pattern-count estimates on boxes, Perron values of right-resolving
// presentations, and finite-scale checks of the image and tiling inequalities.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "goelab/automaton.hpp"
#include "goelab/bigint.hpp"
#include "goelab/decide1d.hpp"
#include "goelab/error.hpp"
#include "goelab/goe_search.hpp"
#include "goelab/group.hpp"
#include "goelab/parallel.hpp"
#include "goelab/pattern.hpp"
#include "goelab/sofic.hpp"
#include "goelab/subshift.hpp"

namespace goelab {

enum class EntropyMethod { count, perron };

inline const char* to_string(EntropyMethod m) { return m == EntropyMethod::count ? "count" : "perron"; }

// Natural log of a positive big integer without overflow.
inline double log_big(const BigInt& x) {
  require(x > 0, ErrorCode::domain, "log of a nonpositive count");
  std::size_t bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log(x.convert_to<double>());
  std::size_t shift = bits - 60;
  BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

struct EntropyRow {
  int n = 0;
  std::size_t cells = 0;
  BigInt count;
  double estimate = 0;  // log(count) / cells, nats
};

struct PerronValue {
  double value = 0;     // log of the spectral radius, nats
  double lower = 0;
  double upper = 0;
  std::size_t iterations = 0;
  double error() const { return (upper - lower) / 2; }
};

struct EntropyEstimate {
  EntropyMethod method = EntropyMethod::count;
  std::vector<EntropyRow> rows;
  std::optional<PerronValue> perron;
  double tail_max() const {
    double m = -INFINITY;
    for (const auto& r : rows) m = std::max(m, r.estimate);
    return m;
  }
};

// F_n = {0..n}^d.
inline FiniteSubset entropy_box(int d, int n) {
  return FiniteSubset::box(std::vector<int>(static_cast<std::size_t>(d), 0), std::vector<int>(static_cast<std::size_t>(d), n));
}

// Counts |X_{F_n}| for n in [n_lo, n_hi]. One-dimensional shifts use the subset automaton;
// Z^d SFTs use exact locally admissible counts.
inline EntropyEstimate pattern_count_entropy(const Subshift& x, int n_lo, int n_hi) {
  require(n_lo >= 0 && n_lo <= n_hi, ErrorCode::validation, "bad n range");
  EntropyEstimate est;
  est.method = EntropyMethod::count;
  if (x.is_1d()) {
    Dfa d = determinize_dfa(as_sofic(x));
    auto counts = language_counts(d, static_cast<std::size_t>(n_hi) + 1);
    for (int n = n_lo; n <= n_hi; ++n) {
      EntropyRow r{n, static_cast<std::size_t>(n + 1), counts[static_cast<std::size_t>(n + 1)], 0};
      require(r.count > 0, ErrorCode::domain, "empty shift has no entropy");
      r.estimate = log_big(r.count) / static_cast<double>(r.cells);
      est.rows.push_back(std::move(r));
    }
    return est;
  }
  require(x.is_sft() && x.group().is_zd(), ErrorCode::unsupported_operation, "count entropy needs a Z^d SFT");
  const int d = x.group().dimension();
  std::vector<int> ns;
  for (int n = n_lo; n <= n_hi; ++n) ns.push_back(n);
  auto rows = parallel::map_indexed(ns.size(), [&](std::size_t i) {
    FiniteSubset box = entropy_box(d, ns[i]);
    EntropyRow r{ns[i], box.size(), locally_admissible_count(x.sft(), box), 0};
    require(r.count > 0, ErrorCode::domain, "window admits no pattern");
    r.estimate = log_big(r.count) / static_cast<double>(r.cells);
    return r;
  });
  est.rows = std::move(rows);
  return est;
}

namespace detail {

// Perron root of one strongly connected multigraph by power iteration on A + I with
// Collatz-Wielandt brackets min/max (Mv)_i / v_i.
inline PerronValue perron_component(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                    double tol, std::size_t max_iter) {
  std::vector<long double> v(n, 1.0L), w(n);
  PerronValue pv;
  long double lo = 0, hi = 0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) w[i] = v[i];
    for (const auto& [s, t] : edges) w[s] += v[t];
    lo = INFINITY;
    hi = 0;
    long double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long double r = w[i] / v[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      norm = std::max(norm, w[i]);
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    pv.iterations = it;
    if (lo > 1 && std::log(hi - 1) - std::log(lo - 1) < 2 * tol) break;
  }
  pv.lower = lo > 1 ? static_cast<double>(std::log(lo - 1)) : -INFINITY;
  pv.upper = static_cast<double>(std::log(hi - 1));
  pv.value = static_cast<double>((std::log(hi - 1) + (lo > 1 ? std::log(lo - 1) : std::log(hi - 1))) / 2);
  return pv;
}

}  // namespace detail

// Log spectral radius of the essential right-resolving presentation. For reducible graphs the
// strongly connected component with the largest root wins.
inline PerronValue perron_entropy(const SoficPresentation1D& x, double tol = 1e-12, std::size_t max_iter = 1000000) {
  SoficPresentation1D g = determinize(x);
  require(g.vertices() > 0, ErrorCode::domain, "empty shift has no entropy");
  auto [comp, ncomp] = strongly_connected_components(g.vertices(), vertex_successors(g));
  std::optional<PerronValue> best;
  for (std::size_t c = 0; c < ncomp; ++c) {
    std::vector<std::uint32_t> local(g.vertices(), UINT32_MAX);
    std::uint32_t k = 0;
    for (std::uint32_t v = 0; v < g.vertices(); ++v)
      if (comp[v] == c) local[v] = k++;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& e : g.edges())
      if (comp[e.from] == c && comp[e.to] == c) edges.emplace_back(local[e.from], local[e.to]);
    if (edges.empty()) continue;
    PerronValue pv = detail::perron_component(k, edges, tol, max_iter);
    if (!best || pv.value > best->value) best = pv;
  }
  require(best.has_value(), ErrorCode::domain, "presentation has no cycle");
  return *best;
}

inline PerronValue perron_entropy(const Subshift& x, double tol = 1e-12) {
  require_1d(x.group());
  return perron_entropy(as_sofic(x), tol);
}

// |X_Omega| for an arbitrary finite Omega in Z: symbols are chosen on Omega and existentially
// quantified on the gaps, tracking the reachable vertex set of the trimmed presentation.
inline BigInt pattern_count_on(const SoficPresentation1D& x, const FiniteSubset& omega) {
  require_1d(omega.group());
  if (omega.empty()) return presents_empty_shift(x) ? BigInt(0) : BigInt(1);
  SoficPresentation1D g = trim(x);
  const std::size_t n = g.vertices();
  if (n == 0) return 0;
  auto adj = g.out_edges();
  const std::size_t a = g.alphabet().size();
  std::map<std::vector<char>, BigInt> cur;
  cur[std::vector<char>(n, 1)] = 1;
  const int lo = omega[0].coord(0), hi = omega[omega.size() - 1].coord(0);
  for (int t = lo; t <= hi; ++t) {
    const bool chosen = omega.contains(GroupElement::integer(t));
    std::map<std::vector<char>, BigInt> nxt;
    for (const auto& [set, count] : cur) {
      std::vector<std::vector<char>> by_label(a, std::vector<char>(n, 0));
      for (std::uint32_t v = 0; v < n; ++v)
        if (set[v])
          for (auto ei : adj[v]) by_label[g.edges()[ei].label][g.edges()[ei].to] = 1;
      if (chosen) {
        for (std::size_t c = 0; c < a; ++c)
          if (std::find(by_label[c].begin(), by_label[c].end(), 1) != by_label[c].end()) nxt[by_label[c]] += count;
      } else {
        std::vector<char> u(n, 0);
        for (std::size_t c = 0; c < a; ++c)
          for (std::size_t v = 0; v < n; ++v) u[v] |= by_label[c][v];
        nxt[u] += count;
      }
    }
    cur = std::move(nxt);
  }
  BigInt total = 0;
  for (const auto& [set, count] : cur) total += count;
  return total;
}

struct ImageEntropyRow {
  int n = 0;
  BigInt image_count;   // |tau(X)_{F_n}|
  BigInt domain_count;  // |X_{F_n S}|
  bool ok() const { return image_count <= domain_count; }
};

struct ImageEntropyReport {
  std::vector<ImageEntropyRow> rows;
  std::optional<PerronValue> image_perron;
  std::optional<PerronValue> domain_perron;
  bool locally_admissible = false;  // Z^d counts are of locally admissible patterns
  std::size_t violations() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.ok(); }));
  }
  bool ok() const {
    if (violations() != 0) return false;
    if (image_perron && domain_perron) return image_perron->value <= domain_perron->value + image_perron->error() + domain_perron->error() + 1e-9;
    return true;
  }
};

// |tau(X)_{F_n}| <= |X_{F_n S}| on F_n = {0..n}^d, and for Z the Perron values of image and domain.
inline ImageEntropyReport image_entropy_check(const CellularAutomaton& tau, const Subshift& x, int n_lo, int n_hi) {
  require(tau.input() == x.alphabet(), ErrorCode::alphabet_mismatch, "automaton input differs from the shift alphabet");
  require(tau.group().same_group(x.group()), ErrorCode::descriptor_mismatch, "automaton and shift over different groups");
  ImageEntropyReport rep;
  if (x.is_1d()) {
    SoficPresentation1D dom = as_sofic(x);
    SoficPresentation1D img = image_presentation(tau, dom);
    auto counts = language_counts(determinize_dfa(img), static_cast<std::size_t>(n_hi) + 1);
    for (int n = n_lo; n <= n_hi; ++n) {
      FiniteSubset fs = set_product(FiniteSubset::interval(0, n), tau.memory());
      rep.rows.push_back({n, counts[static_cast<std::size_t>(n + 1)], pattern_count_on(dom, fs)});
    }
    if (!presents_empty_shift(img)) rep.image_perron = perron_entropy(img);
    rep.domain_perron = perron_entropy(dom);
    return rep;
  }
  require(x.is_sft(), ErrorCode::unsupported_operation, "image entropy check needs an SFT over Z^d");
  rep.locally_admissible = true;
  const int d = x.group().dimension();
  for (int n = n_lo; n <= n_hi; ++n) {
    FiniteSubset fn = entropy_box(d, n);
    FiniteSubset fs = set_product(fn, tau.memory());
    WindowPlan plan = make_plan(fn, fs, tau.memory());
    std::set<std::vector<Symbol>> images;
    std::vector<Symbol> out(fn.size());
    bool done = detail::enumerate_admissible(x.sft(), fs, admissible_node_budget(), [&](const std::vector<Symbol>& v) {
      apply_plan(tau, plan, v.data(), out.data());
      images.insert(out);
    });
    require(done, ErrorCode::budget, "image entropy check exceeds the node budget");
    rep.rows.push_back({n, BigInt(images.size()), locally_admissible_count(x.sft(), fs)});
  }
  return rep;
}

// Uniform random automaton over Z with memory {lo..lo+m-1}.
inline CellularAutomaton random_ca_1d(std::mt19937_64& rng, std::size_t a, std::size_t b, int lo, int m) {
  FiniteSubset s = FiniteSubset::interval(lo, lo + m - 1);
  std::uint64_t n = *bounded_power(a, static_cast<std::size_t>(m), std::uint64_t{1} << 24);
  std::vector<Symbol> table(static_cast<std::size_t>(n));
  std::uniform_int_distribution<std::size_t> pick(0, b - 1);
  for (auto& t : table) t = static_cast<Symbol>(pick(rng));
  return CellularAutomaton(GroupDescriptor::zd(1), Alphabet::digits(a), Alphabet::digits(b), s, std::move(table));
}

struct NoSurjectionTrial {
  CellularAutomaton ca;
  bool surjective = false;
  std::optional<std::vector<Symbol>> goe_word;
  bool witness_verified = false;  // the GOE word has no preimage
};

struct NoSurjectionReport {
  std::size_t a = 0, b = 0;
  std::vector<NoSurjectionTrial> trials;
  std::size_t counterexamples() const {
    return static_cast<std::size_t>(
        std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.surjective || !t.witness_verified; }));
  }
  bool ok() const { return counterexamples() == 0; }
};

// Random automata A^Z -> B^Z with |A| < |B|, memory size at most 3; none may be surjective.
inline NoSurjectionReport no_surjection_bigger_alphabet_check(std::size_t a, std::size_t b, std::size_t trials,
                                                              std::uint64_t seed) {
  require(a >= 1 && a < b, ErrorCode::validation, "need |A| < |B|");
  std::mt19937_64 rng(seed);
  std::vector<CellularAutomaton> cas;
  for (std::size_t t = 0; t < trials; ++t) {
    int m = static_cast<int>(1 + rng() % 3);
    int lo = -static_cast<int>(rng() % static_cast<std::uint64_t>(m));
    cas.push_back(random_ca_1d(rng, a, b, lo, m));
  }
  NoSurjectionReport rep;
  rep.a = a;
  rep.b = b;
  rep.trials = parallel::map_indexed(cas.size(), [&](std::size_t i) {
    SurjectivityVerdict v = decide_surjective(cas[i]);
    NoSurjectionTrial t{cas[i], v.surjective, v.goe_word, false};
    if (v.goe_word) t.witness_verified = !has_preimage(cas[i], SoficPresentation1D::full_shift(cas[i].input()), *v.goe_word);
    return t;
  });
  return rep;
}

struct TilingEntropyRow {
  int n = 0;
  std::size_t centers = 0;
  std::size_t uncovered = 0;        // |F_n^*|: cells of F_n outside the tiles
  double lhs = 0;                   // log |X_{F_n}|
  double rhs = 0;                   // |F_n^*| log a + sum log |X_{tE}|
  bool ok() const { return lhs <= rhs + 1e-9; }
  double slack() const { return rhs - lhs; }
};

struct TilingEntropyReport {
  bool applicable = true;
  std::string reason;
  std::vector<TilingEntropyRow> rows;
  bool ok() const {
    return !applicable || std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.ok(); });
  }
};

namespace detail {
inline BigInt window_count(const Subshift& x, const FiniteSubset& w) {
  if (x.is_1d()) return pattern_count_on(as_sofic(x), w);
  return locally_admissible_count(x.sft(), w);
}
}  // namespace detail

// log |X_{F_n}| <= |F_n^*| log a + sum_{t in T} log |X_{tE}| with T a greedy E-tiling of F_n
// restricted to tiles inside F_n.
inline TilingEntropyReport tiling_entropy_bound_check(const Subshift& x, const FiniteSubset& e, int n_lo, int n_hi) {
  require(x.group().is_zd(), ErrorCode::unsupported_operation, "tiling check needs Z^d");
  TilingEntropyReport rep;
  const double la = std::log(static_cast<double>(x.alphabet().size()));
  BigInt full = 1;
  for (std::size_t i = 0; i < e.size(); ++i) full *= static_cast<unsigned long>(x.alphabet().size());
  BigInt xe = detail::window_count(x, e);
  if (xe == full) {
    rep.applicable = false;
    rep.reason = "X_E equals A^E";
    return rep;
  }
  const int d = x.group().dimension();
  for (int n = n_lo; n <= n_hi; ++n) {
    FiniteSubset fn = entropy_box(d, n);
    std::vector<GroupElement> inside;
    for (const auto& t : fn)
      if (translate(t, e).subset_of(fn)) inside.push_back(t);
    Tiling tl = greedy_tiling(e, FiniteSubset(fn.group(), inside));
    TilingEntropyRow row;
    row.n = n;
    row.centers = tl.centers.size();
    row.uncovered = fn.size() - tl.centers.size() * e.size();
    row.lhs = log_big(detail::window_count(x, fn));
    row.rhs = static_cast<double>(row.uncovered) * la;
    for (const auto& t : tl.centers) row.rhs += log_big(detail::window_count(x, translate(t, e)));
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace goelab
