#pragma once

// Exact decisions for cellular automata over Z between sofic shifts: image
// presentations, surjectivity, pre-injectivity, injectivity and their witnesses.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "goelab/automaton.hpp"
#include "goelab/bigint.hpp"
#include "goelab/error.hpp"
#include "goelab/pattern.hpp"
#include "goelab/sofic.hpp"
#include "goelab/subshift.hpp"

namespace goelab {

// The automaton rewritten with an interval memory set {lo, ..., lo + m - 1}.
struct IntervalForm {
  CellularAutomaton ca;
  int lo;
  int m;
};

inline IntervalForm normalize_interval(const CellularAutomaton& tau) {
  require_1d(tau.group());
  if (tau.memory().empty()) {
    FiniteSubset s = FiniteSubset::interval(0, 0);
    return {with_memory_set(tau, s), 0, 1};
  }
  int lo = tau.memory()[0].coord(0);
  int hi = tau.memory()[tau.memory().size() - 1].coord(0);
  return {with_memory_set(tau, FiniteSubset::interval(lo, hi)), lo, hi - lo + 1};
}

struct LiftEdge {
  std::uint32_t from;
  std::uint32_t to;
  Symbol in;
  Symbol out;
};

// States are (vertex v, last m-1 input symbols on a path ending at v); an edge reading c
// emits mu of the m-window. Only states on bi-infinite paths are kept.
struct DeBruijnLift {
  std::size_t states = 0;
  std::vector<LiftEdge> edges;
  std::vector<std::vector<std::uint32_t>> out;  // edge ids by source
  std::vector<std::vector<std::uint32_t>> in;   // edge ids by target
  int lo = 0;
  int m = 1;
};

namespace detail {

// Vertices on bi-infinite paths of a directed multigraph.
inline std::vector<char> essential_mask(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& e) {
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  std::vector<std::vector<std::uint32_t>> succ(n), pred(n);
  for (const auto& [u, v] : e) {
    ++outdeg[u];
    ++indeg[v];
    succ[u].push_back(v);
    pred[v].push_back(u);
  }
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < n; ++v)
    if (!indeg[v] || !outdeg[v]) stack.push_back(v);
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (auto w : succ[v])
      if (alive[w] && --indeg[w] == 0) stack.push_back(w);
    for (auto u : pred[v])
      if (alive[u] && --outdeg[u] == 0) stack.push_back(u);
  }
  return alive;
}

inline std::uint64_t ipow(std::uint64_t a, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= a;
  return r;
}

}  // namespace detail

inline std::size_t& lift_state_budget() {
  static std::size_t budget = 1u << 20;
  return budget;
}

inline DeBruijnLift debruijn_lift(const CellularAutomaton& tau, const SoficPresentation1D& domain) {
  require(tau.input() == domain.alphabet(), ErrorCode::alphabet_mismatch,
          "domain alphabet differs from the automaton input alphabet");
  IntervalForm f = normalize_interval(tau);
  SoficPresentation1D g = trim(domain);
  const std::size_t a = g.alphabet().size();
  const int k = f.m - 1;
  const std::uint64_t span = detail::ipow(a, k);
  auto adj = g.out_edges();
  // Words of length k ending at each vertex.
  std::vector<std::vector<std::uint64_t>> words(g.vertices(), std::vector<std::uint64_t>{0});
  for (int step = 0; step < k; ++step) {
    std::vector<std::vector<std::uint64_t>> next(g.vertices());
    for (std::uint32_t v = 0; v < g.vertices(); ++v)
      for (std::uint32_t ei : adj[v]) {
        const auto& e = g.edges()[ei];
        for (auto w : words[v]) next[e.to].push_back(w * a + e.label);
      }
    for (auto& s : next) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    words = std::move(next);
  }
  std::unordered_map<std::uint64_t, std::uint32_t> id;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> key;
  for (std::uint32_t v = 0; v < g.vertices(); ++v)
    for (auto w : words[v]) {
      id.emplace(static_cast<std::uint64_t>(v) * span + w, static_cast<std::uint32_t>(key.size()));
      key.emplace_back(v, w);
    }
  require(key.size() <= lift_state_budget(), ErrorCode::budget, "de Bruijn lift exceeds the state budget");
  std::vector<LiftEdge> edges;
  for (std::uint32_t s = 0; s < key.size(); ++s) {
    auto [v, w] = key[s];
    for (std::uint32_t ei : adj[v]) {
      const auto& e = g.edges()[ei];
      std::uint64_t window = w * a + e.label;
      std::uint64_t nw = span == 0 ? 0 : window % span;
      auto it = id.find(static_cast<std::uint64_t>(e.to) * span + nw);
      if (it == id.end()) continue;
      edges.push_back({s, it->second, e.label, f.ca.rule(window)});
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> plain;
  for (const auto& e : edges) plain.emplace_back(e.from, e.to);
  auto alive = detail::essential_mask(key.size(), plain);
  std::vector<std::uint32_t> remap(key.size(), UINT32_MAX);
  DeBruijnLift lift;
  lift.lo = f.lo;
  lift.m = f.m;
  for (std::uint32_t s = 0; s < key.size(); ++s)
    if (alive[s]) remap[s] = static_cast<std::uint32_t>(lift.states++);
  for (const auto& e : edges)
    if (alive[e.from] && alive[e.to]) lift.edges.push_back({remap[e.from], remap[e.to], e.in, e.out});
  lift.out.resize(lift.states);
  lift.in.resize(lift.states);
  for (std::uint32_t i = 0; i < lift.edges.size(); ++i) {
    lift.out[lift.edges[i].from].push_back(i);
    lift.in[lift.edges[i].to].push_back(i);
  }
  return lift;
}

inline SoficPresentation1D image_presentation(const CellularAutomaton& tau, const SoficPresentation1D& domain) {
  DeBruijnLift lift = debruijn_lift(tau, domain);
  std::vector<LabeledEdge> e;
  for (const auto& le : lift.edges) e.push_back({le.from, le.to, le.out});
  return trim(SoficPresentation1D(tau.output(), lift.states, std::move(e)));
}

// Does some word of L(domain) map onto w? Simulated on the lift without determinization.
inline bool has_preimage(const CellularAutomaton& tau, const SoficPresentation1D& domain, const std::vector<Symbol>& w) {
  DeBruijnLift lift = debruijn_lift(tau, domain);
  std::vector<char> cur(lift.states, 1), nxt(lift.states);
  for (Symbol c : w) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (std::uint32_t s = 0; s < lift.states; ++s)
      if (cur[s])
        for (auto ei : lift.out[s])
          if (lift.edges[ei].out == c) nxt[lift.edges[ei].to] = 1;
    std::swap(cur, nxt);
  }
  return std::find(cur.begin(), cur.end(), 1) != cur.end();
}

// x_i = ...u_i u_i . w_i v_i v_i ... with w_i starting at position 0; |u_1| = |u_2|, |w_1| = |w_2|, |v_1| = |v_2|.
struct EventuallyPeriodicPair {
  std::vector<Symbol> u1, u2, w1, w2, v1, v2;

  bool almost_equal() const { return u1 == u2 && v1 == v2; }
  bool operator==(const EventuallyPeriodicPair&) const = default;
};

struct SurjectivityVerdict {
  bool surjective = false;
  bool image_within_codomain = true;
  std::optional<std::vector<Symbol>> goe_word;      // in L(Y) but not in L(tau(X))
  std::optional<std::vector<Symbol>> foreign_word;  // in L(tau(X)) but not in L(Y)
};

inline SurjectivityVerdict decide_surjective(const CellularAutomaton& tau, const SoficPresentation1D& domain,
                                             const SoficPresentation1D& codomain) {
  require(tau.output() == codomain.alphabet(), ErrorCode::alphabet_mismatch,
          "codomain alphabet differs from the automaton output alphabet");
  SoficPresentation1D img = image_presentation(tau, domain);
  SurjectivityVerdict v;
  v.goe_word = word_missing_from(img, codomain);
  v.foreign_word = word_missing_from(codomain, img);
  v.image_within_codomain = !v.foreign_word.has_value();
  v.surjective = !v.goe_word.has_value() && v.image_within_codomain;
  return v;
}

inline SurjectivityVerdict decide_surjective(const CellularAutomaton& tau) {
  return decide_surjective(tau, SoficPresentation1D::full_shift(tau.input()),
                           SoficPresentation1D::full_shift(tau.output()));
}

struct PairVerdict {
  bool holds = true;  // pre-injective or injective
  std::optional<EventuallyPeriodicPair> witness;
  std::optional<std::pair<FiniteConfig, FiniteConfig>> diamond;  // when both tails are one constant
};

namespace detail {

// Pair graph of a lift: states (i, j), edges (e1, e2) with equal outputs.
struct PairGraph {
  std::size_t n = 0;  // lift states
  struct Edge {
    std::uint32_t from, to;
    std::uint32_t e1, e2;
    bool same;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::uint32_t>> out, in;
};

inline PairGraph pair_graph(const DeBruijnLift& lift) {
  PairGraph p;
  p.n = lift.states;
  const std::size_t ns = lift.states * lift.states;
  require(ns <= (std::size_t{1} << 26), ErrorCode::budget, "pair graph exceeds the state budget");
  for (std::uint32_t i = 0; i < lift.states; ++i)
    for (std::uint32_t j = 0; j < lift.states; ++j)
      for (auto e1 : lift.out[i])
        for (auto e2 : lift.out[j]) {
          const auto& a = lift.edges[e1];
          const auto& b = lift.edges[e2];
          if (a.out != b.out) continue;
          p.edges.push_back({static_cast<std::uint32_t>(i * lift.states + j),
                             static_cast<std::uint32_t>(a.to * lift.states + b.to), e1, e2, a.in == b.in});
        }
  p.out.resize(ns);
  p.in.resize(ns);
  for (std::uint32_t k = 0; k < p.edges.size(); ++k) {
    p.out[p.edges[k].from].push_back(k);
    p.in[p.edges[k].to].push_back(k);
  }
  return p;
}

// Greatest set of states having an infinite path backward (forward=false) or forward
// through allowed edges staying inside the set.
template <typename Allowed>
std::vector<char> infinite_path_states(const PairGraph& p, bool forward, Allowed&& allowed) {
  const std::size_t ns = p.out.size();
  std::vector<char> alive(ns, 1);
  std::vector<std::size_t> deg(ns, 0);
  for (std::uint32_t k = 0; k < p.edges.size(); ++k)
    if (allowed(k)) ++deg[forward ? p.edges[k].from : p.edges[k].to];
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < ns; ++s)
    if (!deg[s]) stack.push_back(s);
  while (!stack.empty()) {
    std::uint32_t s = stack.back();
    stack.pop_back();
    if (!alive[s]) continue;
    alive[s] = 0;
    const auto& lst = forward ? p.in[s] : p.out[s];
    for (auto k : lst) {
      if (!allowed(k)) continue;
      std::uint32_t t = forward ? p.edges[k].from : p.edges[k].to;
      if (alive[t] && --deg[t] == 0) stack.push_back(t);
    }
  }
  return alive;
}

// Walks from s along allowed edges inside `inside` until a state repeats. Returns (transient, cycle)
// as edge sequences in forward time order. Backward walks end at s; forward walks start at s.
template <typename Allowed>
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> walk_to_cycle(const PairGraph& p, std::uint32_t s,
                                                                               bool forward,
                                                                               const std::vector<char>& inside,
                                                                               Allowed&& allowed) {
  std::vector<std::uint32_t> states{s}, path;
  std::unordered_map<std::uint32_t, std::size_t> seen{{s, 0}};
  while (true) {
    std::uint32_t cur = states.back();
    const auto& lst = forward ? p.out[cur] : p.in[cur];
    std::uint32_t pick = UINT32_MAX;
    for (auto k : lst) {
      std::uint32_t t = forward ? p.edges[k].to : p.edges[k].from;
      if (allowed(k) && inside[t]) {
        pick = k;
        break;
      }
    }
    require(pick != UINT32_MAX, ErrorCode::validation, "internal: walk left its invariant set");
    std::uint32_t t = forward ? p.edges[pick].to : p.edges[pick].from;
    path.push_back(pick);
    auto it = seen.find(t);
    if (it != seen.end()) {
      std::size_t i = it->second;
      std::vector<std::uint32_t> transient(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i));
      std::vector<std::uint32_t> cycle(path.begin() + static_cast<std::ptrdiff_t>(i), path.end());
      if (!forward) {
        std::reverse(transient.begin(), transient.end());
        std::reverse(cycle.begin(), cycle.end());
      }
      return {transient, cycle};
    }
    seen.emplace(t, states.size());
    states.push_back(t);
  }
}

inline void append_labels(const DeBruijnLift& lift, const PairGraph& p, const std::vector<std::uint32_t>& ks,
                          std::vector<Symbol>& a, std::vector<Symbol>& b) {
  for (auto k : ks) {
    a.push_back(lift.edges[p.edges[k].e1].in);
    b.push_back(lift.edges[p.edges[k].e2].in);
  }
}

inline EventuallyPeriodicPair assemble(const DeBruijnLift& lift, const PairGraph& p,
                                       const std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>& left,
                                       const std::vector<std::uint32_t>& middle,
                                       const std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>& right) {
  EventuallyPeriodicPair w;
  append_labels(lift, p, left.second, w.u1, w.u2);
  append_labels(lift, p, left.first, w.w1, w.w2);
  append_labels(lift, p, middle, w.w1, w.w2);
  append_labels(lift, p, right.first, w.w1, w.w2);
  append_labels(lift, p, right.second, w.v1, w.v2);
  return w;
}

inline bool constant_word(const std::vector<Symbol>& w, Symbol c) {
  return std::all_of(w.begin(), w.end(), [c](Symbol x) { return x == c; });
}

}  // namespace detail

// Both configurations as almost-constant ones when all four tails are one constant symbol.
inline std::optional<std::pair<FiniteConfig, FiniteConfig>> as_finite_configs(const EventuallyPeriodicPair& w) {
  if (w.u1.empty() || !w.almost_equal()) return std::nullopt;
  Symbol c = w.u1[0];
  if (!detail::constant_word(w.u1, c) || !detail::constant_word(w.v1, c)) return std::nullopt;
  return std::make_pair(FiniteConfig(c, word_to_pattern(w.w1)), FiniteConfig(c, word_to_pattern(w.w2)));
}

inline PairVerdict decide_preinjective(const CellularAutomaton& tau, const SoficPresentation1D& domain) {
  DeBruijnLift lift = debruijn_lift(tau, domain);
  detail::PairGraph p = detail::pair_graph(lift);
  auto same = [&](std::uint32_t k) { return p.edges[k].same; };
  std::vector<char> left = detail::infinite_path_states(p, false, same);
  std::vector<char> right = detail::infinite_path_states(p, true, same);
  const std::size_t ns = p.out.size();
  // BFS over (state, left the diagonal yet).
  std::vector<std::int64_t> parent(2 * ns, -2);
  std::vector<std::uint32_t> via(2 * ns, UINT32_MAX);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < ns; ++s)
    if (left[s]) {
      parent[2 * s] = -1;
      queue.push_back(2 * s);
    }
  std::int64_t goal = -1;
  for (std::size_t h = 0; h < queue.size() && goal < 0; ++h) {
    std::uint32_t node = queue[h];
    std::uint32_t s = node / 2, flag = node % 2;
    for (auto k : p.out[s]) {
      std::uint32_t t = p.edges[k].to;
      std::uint32_t nf = flag | (p.edges[k].same ? 0u : 1u);
      std::uint32_t nn = 2 * t + nf;
      if (parent[nn] != -2) continue;
      parent[nn] = node;
      via[nn] = k;
      queue.push_back(nn);
      if (nf == 1 && right[t]) {
        goal = nn;
        break;
      }
    }
  }
  PairVerdict v;
  if (goal < 0) return v;
  v.holds = false;
  std::vector<std::uint32_t> middle;
  std::int64_t cur = goal;
  while (parent[static_cast<std::size_t>(cur)] != -1) {
    middle.push_back(via[static_cast<std::size_t>(cur)]);
    cur = parent[static_cast<std::size_t>(cur)];
  }
  std::reverse(middle.begin(), middle.end());
  std::uint32_t start = static_cast<std::uint32_t>(cur / 2);
  std::uint32_t end = static_cast<std::uint32_t>(goal / 2);
  auto lt = detail::walk_to_cycle(p, start, false, left, same);
  auto rt = detail::walk_to_cycle(p, end, true, right, same);
  v.witness = detail::assemble(lift, p, lt, middle, rt);
  v.diamond = as_finite_configs(*v.witness);
  return v;
}

inline PairVerdict decide_injective(const CellularAutomaton& tau, const SoficPresentation1D& domain) {
  DeBruijnLift lift = debruijn_lift(tau, domain);
  detail::PairGraph p = detail::pair_graph(lift);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> plain;
  for (const auto& e : p.edges) plain.emplace_back(e.from, e.to);
  std::vector<char> alive = detail::essential_mask(p.out.size(), plain);
  PairVerdict v;
  for (std::uint32_t k = 0; k < p.edges.size(); ++k) {
    const auto& e = p.edges[k];
    if (e.same || !alive[e.from] || !alive[e.to]) continue;
    auto all = [&](std::uint32_t) { return true; };
    v.holds = false;
    auto lt = detail::walk_to_cycle(p, e.from, false, alive, all);
    auto rt = detail::walk_to_cycle(p, e.to, true, alive, all);
    v.witness = detail::assemble(lift, p, lt, {k}, rt);
    v.diamond = as_finite_configs(*v.witness);
    return v;
  }
  return v;
}

inline PairVerdict decide_preinjective(const CellularAutomaton& tau) {
  return decide_preinjective(tau, SoficPresentation1D::full_shift(tau.input()));
}
inline PairVerdict decide_injective(const CellularAutomaton& tau) {
  return decide_injective(tau, SoficPresentation1D::full_shift(tau.input()));
}

// Sliding evaluation of the interval-normalized rule: output j is mu(z[j..j+m-1]).
inline std::vector<Symbol> slide(const IntervalForm& f, const std::vector<Symbol>& z) {
  std::vector<Symbol> out;
  if (z.size() < static_cast<std::size_t>(f.m)) return out;
  for (std::size_t j = 0; j + static_cast<std::size_t>(f.m) <= z.size(); ++j)
    out.push_back(f.ca.eval(z.data() + j));
  return out;
}

namespace detail {

inline std::vector<char> read_word(const SoficPresentation1D& g, const std::vector<std::vector<std::uint32_t>>& adj,
                                   std::vector<char> from, const std::vector<Symbol>& w) {
  for (Symbol c : w) {
    std::vector<char> nxt(g.vertices(), 0);
    for (std::uint32_t v = 0; v < g.vertices(); ++v)
      if (from[v])
        for (auto ei : adj[v])
          if (g.edges()[ei].label == c) nxt[g.edges()[ei].to] = 1;
    from = std::move(nxt);
  }
  return from;
}

}  // namespace detail

// Is u^inf w v^inf a point of the shift presented by g?
inline bool eventually_periodic_member(const SoficPresentation1D& input, const std::vector<Symbol>& u,
                                       const std::vector<Symbol>& w, const std::vector<Symbol>& v) {
  require(!u.empty() && !v.empty(), ErrorCode::validation, "periodic tails must be nonempty");
  SoficPresentation1D g = trim(input);
  const std::size_t n = g.vertices();
  if (n == 0) return false;
  auto adj = g.out_edges();
  // Ends of left-infinite paths labeled ...uuu: greatest fixed point of S -> S.u.
  std::vector<char> s(n, 1);
  while (true) {
    auto t = detail::read_word(g, adj, s, u);
    if (t == s) break;
    s = std::move(t);
  }
  s = detail::read_word(g, adj, s, w);
  // Starts of right-infinite paths labeled vvv...: greatest fixed point of R -> {x : x.v meets R}.
  std::vector<char> r(n, 1);
  while (true) {
    std::vector<char> t(n, 0);
    for (std::uint32_t x = 0; x < n; ++x) {
      std::vector<char> one(n, 0);
      one[x] = 1;
      auto y = detail::read_word(g, adj, one, v);
      for (std::uint32_t z = 0; z < n; ++z)
        if (y[z] && r[z]) {
          t[x] = 1;
          break;
        }
    }
    if (t == r) break;
    r = std::move(t);
  }
  for (std::uint32_t x = 0; x < n; ++x)
    if (s[x] && r[x]) return true;
  return false;
}

struct PairCheck {
  bool distinct = false;
  bool first_in_domain = false;
  bool second_in_domain = false;
  bool equal_images = false;
  bool almost_equal = false;
  bool ok(bool need_almost_equal) const {
    return distinct && first_in_domain && second_in_domain && equal_images && (almost_equal || !need_almost_equal);
  }
};

// Re-verifies an eventually periodic pair by membership tests and direct sliding evaluation.
inline PairCheck verify_pair(const CellularAutomaton& tau, const SoficPresentation1D& domain,
                             const EventuallyPeriodicPair& w) {
  PairCheck c;
  if (w.u1.size() != w.u2.size() || w.v1.size() != w.v2.size() || w.w1.size() != w.w2.size() || w.u1.empty() ||
      w.v1.empty())
    return c;
  IntervalForm f = normalize_interval(tau);
  const std::size_t ku = static_cast<std::size_t>(f.m) / w.u1.size() + 2;
  const std::size_t kv = static_cast<std::size_t>(f.m) / w.v1.size() + 2;
  auto build = [&](const std::vector<Symbol>& u, const std::vector<Symbol>& mid, const std::vector<Symbol>& v) {
    std::vector<Symbol> z;
    for (std::size_t i = 0; i < ku; ++i) z.insert(z.end(), u.begin(), u.end());
    z.insert(z.end(), mid.begin(), mid.end());
    for (std::size_t i = 0; i < kv; ++i) z.insert(z.end(), v.begin(), v.end());
    return z;
  };
  std::vector<Symbol> z1 = build(w.u1, w.w1, w.v1), z2 = build(w.u2, w.w2, w.v2);
  c.distinct = z1 != z2;
  c.almost_equal = w.almost_equal();
  c.first_in_domain = eventually_periodic_member(domain, w.u1, w.w1, w.v1);
  c.second_in_domain = eventually_periodic_member(domain, w.u2, w.w2, w.v2);
  c.equal_images = slide(f, z1) == slide(f, z2);
  return c;
}

// Number of words of length |w| + m - 1 over the full input alphabet mapping onto w, with m the
// length of the hull of the minimal memory set.
inline BigInt count_preimages(const CellularAutomaton& tau, const std::vector<Symbol>& w) {
  IntervalForm f = normalize_interval(minimal_memory_set(tau));
  const std::size_t a = tau.input().size();
  const std::uint64_t span = detail::ipow(a, f.m - 1);
  require(span <= (std::uint64_t{1} << 24), ErrorCode::budget, "preimage count state space too large");
  std::vector<BigInt> cur(static_cast<std::size_t>(span), BigInt(1)), nxt(static_cast<std::size_t>(span));
  for (Symbol c : w) {
    for (auto& x : nxt) x = 0;
    for (std::uint64_t s = 0; s < span; ++s) {
      if (cur[s] == 0) continue;
      for (std::size_t b = 0; b < a; ++b) {
        std::uint64_t window = s * a + b;
        if (f.ca.rule(window) == c) nxt[span == 1 ? 0 : window % span] += cur[s];
      }
    }
    std::swap(cur, nxt);
  }
  BigInt total = 0;
  for (const auto& x : cur) total += x;
  return total;
}

// Mutual erasability of two patterns on a common support over a sofic domain.
struct MECheck {
  bool erasable = false;
  bool jointly_extendable = false;  // some pair of extensions agreeing off the support exists
  std::uint64_t extensions_checked = 0;
};

inline MECheck me_check_1d(const CellularAutomaton& tau, const SoficPresentation1D& domain, const Pattern& p1,
                           const Pattern& p2, std::uint64_t max_extensions = std::uint64_t{1} << 24) {
  require_1d(tau.group());
  require(p1.support() == p2.support(), ErrorCode::validation, "ME patterns need a common support");
  require(tau.input() == domain.alphabet(), ErrorCode::alphabet_mismatch, "domain alphabet differs");
  IntervalForm f = normalize_interval(tau);
  const FiniteSubset& omega = p1.support();
  MECheck res;
  if (omega.empty()) {
    res.jointly_extendable = res.erasable = !presents_empty_shift(domain);
    return res;
  }
  std::vector<int> delta;
  for (std::size_t i = 0; i < omega.size(); ++i)
    if (p1.values()[i] != p2.values()[i]) delta.push_back(omega[i].coord(0));
  int hlo = omega[0].coord(0), hhi = omega[omega.size() - 1].coord(0);
  if (!delta.empty()) {
    // Outputs at g read x on [g + lo, g + lo + m - 1]; those that can differ need x on
    // [min(delta) - m + 1, max(delta) + m - 1].
    hlo = std::min(hlo, delta.front() - f.m + 1);
    hhi = std::max(hhi, delta.back() + f.m - 1);
  }
  std::vector<int> free_pos;
  for (int t = hlo; t <= hhi; ++t)
    if (!omega.contains(GroupElement::integer(t))) free_pos.push_back(t);
  const std::size_t a = domain.alphabet().size();
  auto total = bounded_power(a, free_pos.size(), max_extensions);
  require(total.has_value(), ErrorCode::budget, "ME check extension enumeration exceeds the budget");

  SoficPresentation1D g = trim(domain);
  const std::size_t n = g.vertices();
  auto adj = g.out_edges();
  // Equal-label pair graph of the domain presentation.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pe(n * n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      for (auto e1 : adj[x])
        for (auto e2 : adj[y])
          if (g.edges()[e1].label == g.edges()[e2].label)
            pe[x * n + y].emplace_back(g.edges()[e1].to * static_cast<std::uint32_t>(n) + g.edges()[e2].to,
                                       g.edges()[e1].label);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> plain;
  for (std::uint32_t s = 0; s < n * n; ++s)
    for (auto [t, lbl] : pe[s]) plain.emplace_back(s, t);
  // Left-infinite and right-infinite pair states (greatest fixed points).
  auto gfp = [&](bool forward) {
    std::vector<char> alive(n * n, 1);
    while (true) {
      std::vector<char> nxt(n * n, 0);
      for (const auto& [s, t] : plain) {
        if (forward && alive[t]) nxt[s] = 1;
        if (!forward && alive[s]) nxt[t] = 1;
      }
      for (std::size_t i = 0; i < n * n; ++i) nxt[i] = nxt[i] && alive[i];
      if (nxt == alive) return alive;
      alive = std::move(nxt);
    }
  };
  std::vector<char> left = gfp(false), right = gfp(true);
  const std::size_t len = static_cast<std::size_t>(hhi - hlo + 1);
  std::vector<Symbol> z1(len), z2(len), digits(free_pos.size(), 0);
  auto fill = [&]() {
    std::size_t fi = 0;
    for (int t = hlo; t <= hhi; ++t) {
      std::size_t i = static_cast<std::size_t>(t - hlo);
      std::size_t oi = omega.index_of(GroupElement::integer(t));
      if (oi == omega.size()) {
        z1[i] = z2[i] = digits[fi++];
      } else {
        z1[i] = p1.values()[oi];
        z2[i] = p2.values()[oi];
      }
    }
  };
  auto extendable = [&]() {
    std::vector<char> cur = left;
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<char> nxt(n * n, 0);
      for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y = 0; y < n; ++y) {
          if (!cur[x * n + y]) continue;
          for (auto e1 : adj[x]) {
            if (g.edges()[e1].label != z1[i]) continue;
            for (auto e2 : adj[y])
              if (g.edges()[e2].label == z2[i]) nxt[g.edges()[e1].to * n + g.edges()[e2].to] = 1;
          }
        }
      cur = std::move(nxt);
    }
    for (std::size_t s = 0; s < n * n; ++s)
      if (cur[s] && right[s]) return true;
    return false;
  };
  for (std::uint64_t k = 0; k < *total; ++k) {
    fill();
    ++res.extensions_checked;
    if (extendable()) {
      res.jointly_extendable = true;
      if (slide(f, z1) != slide(f, z2)) return res;
    }
    next_digits(digits, a);
  }
  res.erasable = res.jointly_extendable;
  return res;
}

}  // namespace goelab
