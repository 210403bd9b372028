#pragma once

// Edge-labeled graph presentations of one-dimensional sofic shifts, subset
// construction, and language comparison.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "goelab/bigint.hpp"
#include "goelab/error.hpp"
#include "goelab/pattern.hpp"

namespace goelab {

struct LabeledEdge {
  std::uint32_t from;
  std::uint32_t to;
  Symbol label;
  bool operator==(const LabeledEdge&) const = default;
  bool operator<(const LabeledEdge& o) const {
    if (from != o.from) return from < o.from;
    if (label != o.label) return label < o.label;
    return to < o.to;
  }
};

class SoficPresentation1D {
 public:
  SoficPresentation1D(Alphabet alphabet, std::size_t vertices, std::vector<LabeledEdge> edges)
      : alphabet_(std::move(alphabet)), vertices_(vertices), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
      require(e.from < vertices_ && e.to < vertices_, ErrorCode::validation, "edge endpoint out of range");
      require(e.label < alphabet_.size(), ErrorCode::validation, "edge label outside the alphabet");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  static SoficPresentation1D full_shift(const Alphabet& a) {
    std::vector<LabeledEdge> e;
    for (std::size_t s = 0; s < a.size(); ++s) e.push_back({0, 0, static_cast<Symbol>(s)});
    return SoficPresentation1D(a, 1, std::move(e));
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t vertices() const noexcept { return vertices_; }
  const std::vector<LabeledEdge>& edges() const noexcept { return edges_; }

  // Right-resolving: no vertex has two out-edges with the same label.
  bool is_deterministic() const {
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i].from == edges_[i - 1].from && edges_[i].label == edges_[i - 1].label) return false;
    return true;
  }

  // Every vertex has an incoming and an outgoing edge.
  bool is_essential() const {
    std::vector<char> in(vertices_, 0), out(vertices_, 0);
    for (const auto& e : edges_) {
      out[e.from] = 1;
      in[e.to] = 1;
    }
    for (std::size_t v = 0; v < vertices_; ++v)
      if (!in[v] || !out[v]) return false;
    return true;
  }

  std::vector<std::vector<std::uint32_t>> out_edges() const {
    std::vector<std::vector<std::uint32_t>> adj(vertices_);
    for (std::uint32_t i = 0; i < edges_.size(); ++i) adj[edges_[i].from].push_back(i);
    return adj;
  }

 private:
  Alphabet alphabet_;
  std::size_t vertices_;
  std::vector<LabeledEdge> edges_;
};

// Keeps the vertices lying on bi-infinite paths and renumbers them in order.
inline SoficPresentation1D trim(const SoficPresentation1D& g) {
  const std::size_t n = g.vertices();
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  for (const auto& e : g.edges()) {
    ++outdeg[e.from];
    ++indeg[e.to];
  }
  std::vector<std::vector<std::uint32_t>> in_adj(n), out_adj(n);
  for (std::uint32_t i = 0; i < g.edges().size(); ++i) {
    out_adj[g.edges()[i].from].push_back(i);
    in_adj[g.edges()[i].to].push_back(i);
  }
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < n; ++v)
    if (indeg[v] == 0 || outdeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (std::uint32_t ei : out_adj[v]) {
      std::uint32_t w = g.edges()[ei].to;
      if (alive[w] && --indeg[w] == 0) stack.push_back(w);
    }
    for (std::uint32_t ei : in_adj[v]) {
      std::uint32_t u = g.edges()[ei].from;
      if (alive[u] && --outdeg[u] == 0) stack.push_back(u);
    }
  }
  std::vector<std::uint32_t> remap(n, UINT32_MAX);
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < n; ++v)
    if (alive[v]) remap[v] = next++;
  std::vector<LabeledEdge> edges;
  for (const auto& e : g.edges())
    if (alive[e.from] && alive[e.to]) edges.push_back({remap[e.from], remap[e.to], e.label});
  return SoficPresentation1D(g.alphabet(), next, std::move(edges));
}

// Tarjan's algorithm, iterative. Returns component ids (reverse topological order) and their count.
inline std::pair<std::vector<std::uint32_t>, std::size_t> strongly_connected_components(
    std::size_t n, const std::vector<std::vector<std::uint32_t>>& succ) {
  constexpr std::uint32_t unvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::uint32_t counter = 0;
  std::size_t ncomp = 0;
  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  std::vector<Frame> call;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < succ[f.v].size()) {
        std::uint32_t w = succ[f.v][f.next++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::uint32_t v = f.v;
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = static_cast<std::uint32_t>(ncomp);
        } while (w != v);
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return {comp, ncomp};
}

inline std::vector<std::vector<std::uint32_t>> vertex_successors(const SoficPresentation1D& g) {
  std::vector<std::vector<std::uint32_t>> succ(g.vertices());
  for (const auto& e : g.edges()) succ[e.from].push_back(e.to);
  return succ;
}

// Subgraph on the vertices with keep[v] != 0, renumbered in order.
inline SoficPresentation1D induced_subgraph(const SoficPresentation1D& g, const std::vector<char>& keep) {
  std::vector<std::uint32_t> remap(g.vertices(), UINT32_MAX);
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < g.vertices(); ++v)
    if (keep[v]) remap[v] = next++;
  std::vector<LabeledEdge> edges;
  for (const auto& e : g.edges())
    if (keep[e.from] && keep[e.to]) edges.push_back({remap[e.from], remap[e.to], e.label});
  return SoficPresentation1D(g.alphabet(), next, std::move(edges));
}

// Nontrivial strongly connected components (those containing an edge), each as an induced subgraph.
inline std::vector<SoficPresentation1D> irreducible_components(const SoficPresentation1D& g) {
  auto [comp, ncomp] = strongly_connected_components(g.vertices(), vertex_successors(g));
  std::vector<char> nontrivial(ncomp, 0);
  for (const auto& e : g.edges())
    if (comp[e.from] == comp[e.to]) nontrivial[comp[e.from]] = 1;
  std::vector<SoficPresentation1D> out;
  for (std::size_t c = 0; c < ncomp; ++c) {
    if (!nontrivial[c]) continue;
    std::vector<char> keep(g.vertices(), 0);
    for (std::uint32_t v = 0; v < g.vertices(); ++v) keep[v] = comp[v] == c;
    out.push_back(induced_subgraph(g, keep));
  }
  return out;
}

// Deterministic automaton whose initial state 0 accepts exactly the words labeling paths of
// the presentation; every state accepts and missing transitions are -1.
struct Dfa {
  std::size_t alphabet = 0;
  std::size_t states = 0;
  std::vector<std::int32_t> delta;  // states * alphabet
  std::vector<std::vector<std::uint32_t>> subsets;

  std::int32_t step(std::int32_t q, Symbol c) const {
    if (q < 0) return -1;
    return delta[static_cast<std::size_t>(q) * alphabet + c];
  }
  std::int32_t initial() const { return states == 0 ? -1 : 0; }
};

inline std::size_t& determinize_budget() {
  static std::size_t budget = 1u << 20;
  return budget;
}

namespace detail {
struct SubsetHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};
}  // namespace detail

// Subset construction from the set of all vertices of the trimmed presentation.
inline Dfa determinize_dfa(const SoficPresentation1D& input, std::size_t max_states = determinize_budget()) {
  SoficPresentation1D g = trim(input);
  const std::size_t a = g.alphabet().size();
  auto adj = g.out_edges();
  Dfa d;
  d.alphabet = a;
  if (g.vertices() == 0) return d;
  std::unordered_map<std::vector<std::uint32_t>, std::int32_t, detail::SubsetHash> ids;
  std::vector<std::uint32_t> all(g.vertices());
  for (std::uint32_t v = 0; v < g.vertices(); ++v) all[v] = v;
  ids.emplace(all, 0);
  d.subsets.push_back(all);
  for (std::size_t q = 0; q < d.subsets.size(); ++q) {
    std::vector<std::vector<std::uint32_t>> next(a);
    for (std::uint32_t v : d.subsets[q])
      for (std::uint32_t ei : adj[v]) next[g.edges()[ei].label].push_back(g.edges()[ei].to);
    for (std::size_t c = 0; c < a; ++c) {
      auto& s = next[c];
      if (s.empty()) {
        d.delta.push_back(-1);
        continue;
      }
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      auto it = ids.find(s);
      if (it == ids.end()) {
        require(d.subsets.size() < max_states, ErrorCode::budget, "subset construction exceeds the state budget");
        it = ids.emplace(s, static_cast<std::int32_t>(d.subsets.size())).first;
        d.subsets.push_back(s);
      }
      d.delta.push_back(it->second);
    }
  }
  d.states = d.subsets.size();
  return d;
}

inline SoficPresentation1D dfa_graph(const Dfa& d, const Alphabet& a) {
  std::vector<LabeledEdge> edges;
  for (std::size_t q = 0; q < d.states; ++q)
    for (std::size_t c = 0; c < d.alphabet; ++c)
      if (d.delta[q * d.alphabet + c] >= 0)
        edges.push_back({static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(d.delta[q * d.alphabet + c]),
                         static_cast<Symbol>(c)});
  return SoficPresentation1D(a, d.states, std::move(edges));
}

// Right-resolving presentation of the same shift: the essential part of the subset automaton.
inline SoficPresentation1D determinize(const SoficPresentation1D& g) {
  return trim(dfa_graph(determinize_dfa(g), g.alphabet()));
}

inline void require_same_alphabet(const SoficPresentation1D& x, const SoficPresentation1D& y) {
  require(x.alphabet() == y.alphabet(), ErrorCode::alphabet_mismatch, "presentations use different alphabets");
}

enum class DifferenceMode { symmetric, left_only };

// Least word in shortlex order accepted by exactly one automaton (symmetric) or by x but not y (left_only).
inline std::optional<std::vector<Symbol>> shortest_difference(const Dfa& x, const Dfa& y, DifferenceMode mode) {
  const std::size_t a = x.alphabet;
  struct Node {
    std::int32_t p, q;
    std::int64_t parent;
    Symbol sym;
  };
  auto goal = [&](std::int32_t p, std::int32_t q) {
    if (mode == DifferenceMode::left_only) return p >= 0 && q < 0;
    return (p >= 0) != (q >= 0);
  };
  auto word_of = [](const std::vector<Node>& nodes, std::int64_t i) {
    std::vector<Symbol> w;
    while (nodes[static_cast<std::size_t>(i)].parent >= 0) {
      w.push_back(nodes[static_cast<std::size_t>(i)].sym);
      i = nodes[static_cast<std::size_t>(i)].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  std::vector<Node> nodes{{x.initial(), y.initial(), -1, 0}};
  if (goal(x.initial(), y.initial())) return std::vector<Symbol>{};
  if (x.initial() < 0) return std::nullopt;
  std::unordered_map<std::uint64_t, char> seen;
  auto key = [](std::int32_t p, std::int32_t q) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p + 1)) << 32) | static_cast<std::uint32_t>(q + 1);
  };
  seen[key(x.initial(), y.initial())] = 1;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    Node cur = nodes[head];
    for (std::size_t c = 0; c < a; ++c) {
      std::int32_t p = x.step(cur.p, static_cast<Symbol>(c));
      std::int32_t q = y.step(cur.q, static_cast<Symbol>(c));
      if (p < 0 && q < 0) continue;
      if (mode == DifferenceMode::left_only && p < 0) continue;
      if (!seen.emplace(key(p, q), 1).second) continue;
      nodes.push_back({p, q, static_cast<std::int64_t>(head), static_cast<Symbol>(c)});
      if (goal(p, q)) return word_of(nodes, static_cast<std::int64_t>(nodes.size() - 1));
    }
  }
  return std::nullopt;
}

struct SoficComparison {
  bool equal = true;
  std::optional<std::vector<Symbol>> witness;  // shortlex-least word in exactly one language
};

inline SoficComparison sofic_equal(const SoficPresentation1D& x, const SoficPresentation1D& y) {
  require_same_alphabet(x, y);
  auto w = shortest_difference(determinize_dfa(x), determinize_dfa(y), DifferenceMode::symmetric);
  return {!w.has_value(), w};
}

// Shortlex-least word of L(y) missing from L(x), if any.
inline std::optional<std::vector<Symbol>> word_missing_from(const SoficPresentation1D& x,
                                                            const SoficPresentation1D& y) {
  require_same_alphabet(x, y);
  return shortest_difference(determinize_dfa(y), determinize_dfa(x), DifferenceMode::left_only);
}

inline bool dfa_accepts(const Dfa& d, const std::vector<Symbol>& w) {
  std::int32_t q = d.initial();
  for (Symbol c : w) {
    if (c >= d.alphabet) return false;
    q = d.step(q, c);
  }
  return q >= 0;
}

inline bool word_appears(const SoficPresentation1D& x, const std::vector<Symbol>& w) {
  return dfa_accepts(determinize_dfa(x), w);
}

// Number of words of each length 0..n_max.
inline std::vector<BigInt> language_counts(const Dfa& d, std::size_t n_max) {
  std::vector<BigInt> out;
  if (d.states == 0) {
    out.assign(n_max + 1, BigInt(0));
    return out;
  }
  std::vector<BigInt> cur(d.states, BigInt(0)), nxt(d.states);
  cur[0] = 1;
  out.push_back(1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (auto& v : nxt) v = 0;
    for (std::size_t q = 0; q < d.states; ++q) {
      if (cur[q] == 0) continue;
      for (std::size_t c = 0; c < d.alphabet; ++c) {
        std::int32_t t = d.delta[q * d.alphabet + c];
        if (t >= 0) nxt[static_cast<std::size_t>(t)] += cur[q];
      }
    }
    std::swap(cur, nxt);
    BigInt total = 0;
    for (const auto& v : cur) total += v;
    out.push_back(total);
  }
  return out;
}

inline BigInt language_count(const SoficPresentation1D& x, std::size_t n) {
  return language_counts(determinize_dfa(x), n).back();
}

inline bool presents_empty_shift(const SoficPresentation1D& x) { return trim(x).vertices() == 0; }

// Disjoint union of two presentations over the same alphabet.
inline SoficPresentation1D disjoint_union(const SoficPresentation1D& x, const SoficPresentation1D& y) {
  require_same_alphabet(x, y);
  std::vector<LabeledEdge> e = x.edges();
  const auto off = static_cast<std::uint32_t>(x.vertices());
  for (const auto& f : y.edges()) e.push_back({f.from + off, f.to + off, f.label});
  return SoficPresentation1D(x.alphabet(), x.vertices() + y.vertices(), std::move(e));
}

}  // namespace goelab
