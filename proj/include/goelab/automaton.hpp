#pragma once

// Cellular automata given by a memory set S and a dense local rule table A^S -> B,
// tau(x)(g) = mu(s -> x(gs)).

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "goelab/error.hpp"
#include "goelab/group.hpp"
#include "goelab/parallel.hpp"
#include "goelab/pattern.hpp"

namespace goelab {

class CellularAutomaton {
 public:
  CellularAutomaton(GroupDescriptor group, Alphabet input, Alphabet output, FiniteSubset memory,
                    std::vector<Symbol> table)
      : group_(std::move(group)),
        input_(std::move(input)),
        output_(std::move(output)),
        memory_(std::move(memory)),
        table_(std::move(table)) {
    require(memory_.group().same_group(group_), ErrorCode::descriptor_mismatch, "memory set in a different group");
    auto n = bounded_power(input_.size(), memory_.size(), enumeration_cap());
    require(n.has_value(), ErrorCode::budget, "rule table exceeds the enumeration cap");
    require(table_.size() == *n, ErrorCode::validation,
            "rule table has " + std::to_string(table_.size()) + " entries, expected " + std::to_string(*n));
    for (std::size_t i = 0; i < table_.size(); ++i)
      require(table_[i] < output_.size(), ErrorCode::validation,
              "rule table entry " + std::to_string(i) + " outside the output alphabet");
    weights_.assign(memory_.size(), 1);
    for (std::size_t j = memory_.size(); j-- > 1;) weights_[j - 1] = weights_[j] * input_.size();
  }

  // Tabulates fn(window) where window[j] is the value at the j-th memory point.
  template <typename Fn>
  static CellularAutomaton from_rule(GroupDescriptor group, Alphabet input, Alphabet output, FiniteSubset memory,
                                     Fn&& fn) {
    PatternEnumerator en(memory, input.size());
    std::vector<Symbol> table(static_cast<std::size_t>(en.count()));
    std::vector<Symbol> w(memory.size(), 0);
    for (std::uint64_t i = 0; i < en.count(); ++i) {
      table[i] = static_cast<Symbol>(fn(static_cast<const std::vector<Symbol>&>(w)));
      next_digits(w, input.size());
    }
    return CellularAutomaton(std::move(group), std::move(input), std::move(output), std::move(memory),
                             std::move(table));
  }

  const GroupDescriptor& group() const noexcept { return group_; }
  const Alphabet& input() const noexcept { return input_; }
  const Alphabet& output() const noexcept { return output_; }
  const FiniteSubset& memory() const noexcept { return memory_; }
  const std::vector<Symbol>& table() const noexcept { return table_; }
  std::size_t window_size() const noexcept { return memory_.size(); }
  std::uint64_t weight(std::size_t j) const { return weights_[j]; }

  Symbol rule(std::uint64_t index) const { return table_[index]; }

  std::uint64_t window_index(const Symbol* window) const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < memory_.size(); ++j) idx = idx * input_.size() + window[j];
    return idx;
  }

  Symbol eval(const Symbol* window) const { return table_[window_index(window)]; }

  // Value of tau(x) at g for any x given as a callable GroupElement -> Symbol.
  template <typename Config>
  Symbol eval_at(const GroupElement& g, Config&& x) const {
    std::uint64_t idx = 0;
    for (const auto& s : memory_) idx = idx * input_.size() + x(mul(g, s));
    return table_[idx];
  }

  bool operator==(const CellularAutomaton& o) const {
    return group_ == o.group_ && input_ == o.input_ && output_ == o.output_ && memory_ == o.memory_ &&
           table_ == o.table_;
  }

 private:
  GroupDescriptor group_;
  Alphabet input_;
  Alphabet output_;
  FiniteSubset memory_;
  std::vector<Symbol> table_;
  std::vector<std::uint64_t> weights_;
};

inline CellularAutomaton identity_ca(const GroupDescriptor& g, const Alphabet& a) {
  std::vector<Symbol> table(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) table[i] = static_cast<Symbol>(i);
  return CellularAutomaton(g, a, a, singleton(g, GroupElement::identity(g)), std::move(table));
}

// For each target cell g, the positions of gS inside an input support.
struct WindowPlan {
  FiniteSubset targets;
  std::size_t width = 0;
  std::vector<std::uint32_t> taps;  // targets.size() * width
};

inline WindowPlan make_plan(const FiniteSubset& targets, const FiniteSubset& input, const FiniteSubset& memory) {
  WindowPlan plan{targets, memory.size(), {}};
  plan.taps.reserve(targets.size() * memory.size());
  for (const auto& g : targets) {
    for (const auto& s : memory) {
      std::size_t i = input.index_of(mul(g, s));
      require(i != input.size(), ErrorCode::domain, "window leaves the input support");
      plan.taps.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return plan;
}

// {g : gS is contained in omega}.
inline FiniteSubset interior(const FiniteSubset& omega, const FiniteSubset& memory) {
  require_same_group(omega, memory);
  if (memory.empty()) return omega;
  std::vector<GroupElement> out;
  GroupElement s0inv = inverse(memory[0]);
  for (const auto& w : omega) {
    GroupElement g = mul(w, s0inv);
    bool inside = true;
    for (const auto& s : memory) {
      if (!omega.contains(mul(g, s))) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(g);
  }
  return FiniteSubset(omega.group(), std::move(out));
}

// Evaluates the rule at every target of a plan given input values aligned with the plan's input support.
inline void apply_plan(const CellularAutomaton& tau, const WindowPlan& plan, const Symbol* in, Symbol* out) {
  const std::size_t a = tau.input().size();
  const std::size_t n = plan.targets.size();
  for (std::size_t t = 0; t < n; ++t) {
    const std::uint32_t* tap = plan.taps.data() + t * plan.width;
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < plan.width; ++j) idx = idx * a + in[tap[j]];
    out[t] = tau.rule(idx);
  }
}

inline void require_input_values(const CellularAutomaton& tau, const Pattern& p) {
  require(p.group().same_group(tau.group()), ErrorCode::descriptor_mismatch, "pattern and automaton groups differ");
  require(p.empty() || p.max_value() < tau.input().size(), ErrorCode::alphabet_mismatch,
          "pattern uses symbols outside the input alphabet");
}

inline Pattern apply_to_pattern(const CellularAutomaton& tau, const Pattern& p) {
  require_input_values(tau, p);
  WindowPlan plan = make_plan(interior(p.support(), tau.memory()), p.support(), tau.memory());
  std::vector<Symbol> out(plan.targets.size());
  const std::size_t n = out.size();
  if (n < 4096) {
    apply_plan(tau, plan, p.values().data(), out.data());
  } else {
    parallel::for_chunks(n, 64, [&](std::uint64_t lo, std::uint64_t hi, std::size_t) {
      const std::size_t a = tau.input().size();
      for (std::uint64_t t = lo; t < hi; ++t) {
        const std::uint32_t* tap = plan.taps.data() + t * plan.width;
        std::uint64_t idx = 0;
        for (std::size_t j = 0; j < plan.width; ++j) idx = idx * a + p.values()[tap[j]];
        out[t] = tau.rule(idx);
      }
    });
  }
  return Pattern(std::move(plan.targets), std::move(out));
}

// Output background is mu of the constant window; deviations lie in supp(x) S^-1.
inline FiniteConfig apply_to_finite_config(const CellularAutomaton& tau, const FiniteConfig& x) {
  require(x.group().same_group(tau.group()), ErrorCode::descriptor_mismatch, "configuration group differs");
  require(x.background() < tau.input().size() &&
              (x.deviation().empty() || x.deviation().max_value() < tau.input().size()),
          ErrorCode::alphabet_mismatch, "configuration uses symbols outside the input alphabet");
  std::vector<Symbol> constant(tau.window_size(), x.background());
  Symbol bg = tau.eval(constant.data());
  if (tau.memory().empty()) return FiniteConfig::constant(x.group(), bg);
  FiniteSubset cells = set_product(x.deviation().support(), set_inverse(tau.memory()));
  std::vector<std::pair<GroupElement, Symbol>> dev;
  for (const auto& g : cells) {
    Symbol v = tau.eval_at(g, [&](const GroupElement& h) { return x.at(h); });
    if (v != bg) dev.emplace_back(g, v);
  }
  return FiniteConfig(bg, Pattern::from_cells(x.group(), std::move(dev)));
}

inline PeriodicConfig apply_to_periodic(const CellularAutomaton& tau, const PeriodicConfig& x) {
  require(tau.group().is_zd() && tau.group().dimension() == x.dimension(), ErrorCode::descriptor_mismatch,
          "periodic configurations need a matching Z^d automaton");
  std::vector<Symbol> out(x.cells().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    GroupElement g = x.element(i);
    out[i] = tau.eval_at(g, [&](const GroupElement& h) { return x.at(h); });
  }
  return PeriodicConfig(x.periods(), std::move(out));
}

// Same map with a larger memory set; the extra cells are ignored.
inline CellularAutomaton with_memory_set(const CellularAutomaton& tau, const FiniteSubset& superset) {
  require(tau.memory().subset_of(superset), ErrorCode::validation, "new memory set must contain the old one");
  std::vector<std::size_t> pos;
  for (const auto& s : tau.memory()) pos.push_back(superset.index_of(s));
  return CellularAutomaton::from_rule(tau.group(), tau.input(), tau.output(), superset,
                                      [&](const std::vector<Symbol>& w) {
                                        std::uint64_t idx = 0;
                                        for (std::size_t p : pos) idx = idx * tau.input().size() + w[p];
                                        return tau.rule(idx);
                                      });
}

inline bool depends_on(const CellularAutomaton& tau, std::size_t j) {
  const std::uint64_t w = tau.weight(j);
  const std::size_t a = tau.input().size();
  for (std::uint64_t idx = 0; idx < tau.table().size(); ++idx) {
    std::uint64_t digit = (idx / w) % a;
    if (digit != 0 && tau.rule(idx) != tau.rule(idx - digit * w)) return true;
  }
  return false;
}

inline CellularAutomaton minimal_memory_set(const CellularAutomaton& tau) {
  std::vector<GroupElement> keep;
  std::vector<std::size_t> kept_pos;
  for (std::size_t j = 0; j < tau.memory().size(); ++j) {
    if (depends_on(tau, j)) {
      keep.push_back(tau.memory()[j]);
      kept_pos.push_back(j);
    }
  }
  if (kept_pos.size() == tau.memory().size()) return tau;
  FiniteSubset s(tau.group(), std::move(keep));
  return CellularAutomaton::from_rule(tau.group(), tau.input(), tau.output(), s, [&](const std::vector<Symbol>& w) {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < kept_pos.size(); ++k) idx += w[k] * tau.weight(kept_pos[k]);
    return tau.rule(idx);
  });
}

// sigma o tau with memory set S_sigma S_tau.
inline CellularAutomaton compose(const CellularAutomaton& sigma, const CellularAutomaton& tau) {
  require(sigma.group().same_group(tau.group()), ErrorCode::descriptor_mismatch, "automata act on different groups");
  require(sigma.input() == tau.output(), ErrorCode::alphabet_mismatch,
          "output alphabet of the inner automaton differs from input of the outer one");
  FiniteSubset s = set_product(sigma.memory(), tau.memory());
  WindowPlan inner = make_plan(sigma.memory(), s, tau.memory());
  std::vector<Symbol> mid(sigma.memory().size());
  return CellularAutomaton::from_rule(tau.group(), tau.input(), sigma.output(), s, [&](const std::vector<Symbol>& w) {
    apply_plan(tau, inner, w.data(), mid.data());
    return sigma.eval(mid.data());
  });
}

inline bool extensionally_equal(const CellularAutomaton& x, const CellularAutomaton& y) {
  if (!x.group().same_group(y.group()) || !(x.input() == y.input()) || !(x.output() == y.output())) return false;
  FiniteSubset u = set_union(x.memory(), y.memory());
  return with_memory_set(x, u).table() == with_memory_set(y, u).table();
}

inline FiniteSubset elementary_memory() { return FiniteSubset::interval(-1, 1); }

// table[4 x(-1) + 2 x(0) + x(1)] = bit k of n.
inline CellularAutomaton wolfram_rule(int n) {
  require(n >= 0 && n <= 255, ErrorCode::out_of_range, "Wolfram rule number must lie in 0..255");
  std::vector<Symbol> table(8);
  for (int k = 0; k < 8; ++k) table[static_cast<std::size_t>(k)] = static_cast<Symbol>((n >> k) & 1);
  Alphabet bin = Alphabet::digits(2);
  return CellularAutomaton(GroupDescriptor::zd(1), bin, bin, elementary_memory(), std::move(table));
}

inline int wolfram_number(const CellularAutomaton& tau) {
  require(tau.group().is_zd() && tau.group().dimension() == 1, ErrorCode::unsupported_operation,
          "Wolfram numbers are defined over Z only");
  require(tau.input().size() == 2 && tau.output().size() == 2, ErrorCode::unsupported_operation,
          "Wolfram numbers need binary alphabets");
  CellularAutomaton m = minimal_memory_set(tau);
  require(m.memory().subset_of(elementary_memory()), ErrorCode::unsupported_operation,
          "minimal memory set is not inside {-1,0,1}");
  CellularAutomaton e = with_memory_set(m, elementary_memory());
  int n = 0;
  for (int k = 0; k < 8; ++k) n |= static_cast<int>(e.rule(static_cast<std::uint64_t>(k))) << k;
  return n;
}

struct EquivarianceResult {
  bool ok = true;
  std::optional<FiniteConfig> config;
  std::optional<GroupElement> shift;
};

// Checks tau(gx) = g tau(x) on random almost-constant configurations and, for Z^d,
// random periodic ones. `apply` defaults to apply_to_finite_config and exists for fault injection.
inline EquivarianceResult equivariance_spot_check(
    const CellularAutomaton& tau, int trials, std::uint64_t seed = 0,
    const std::function<FiniteConfig(const CellularAutomaton&, const FiniteConfig&)>& apply = apply_to_finite_config) {
  std::mt19937_64 rng(seed);
  const GroupDescriptor& g = tau.group();
  const FiniteSubset support_pool = ball(g, 2);
  const FiniteSubset shift_pool = ball(g, 3);
  const std::size_t a = tau.input().size();
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  for (int t = 0; t < trials; ++t) {
    Symbol bg = static_cast<Symbol>(pick(a));
    std::vector<std::pair<GroupElement, Symbol>> cells;
    for (const auto& e : support_pool)
      if (pick(2) == 0) cells.emplace_back(e, static_cast<Symbol>(pick(a)));
    FiniteConfig x(bg, Pattern::from_cells(g, std::move(cells)));
    GroupElement h = shift_pool[pick(shift_pool.size())];
    FiniteConfig lhs = apply(tau, translate_config(h, x));
    FiniteConfig rhs = translate_config(h, apply(tau, x));
    if (!(lhs == rhs)) return {false, x, h};
    if (g.is_zd()) {
      std::vector<int> periods;
      std::size_t cells_n = 1;
      for (int i = 0; i < g.dimension(); ++i) {
        periods.push_back(1 + static_cast<int>(pick(4)));
        cells_n *= static_cast<std::size_t>(periods.back());
      }
      std::vector<Symbol> data(cells_n);
      for (auto& v : data) v = static_cast<Symbol>(pick(a));
      PeriodicConfig px(periods, std::move(data));
      if (!(apply_to_periodic(tau, translate_periodic(h, px)) == translate_periodic(h, apply_to_periodic(tau, px))))
        return {false, std::nullopt, h};
    }
  }
  return {};
}

}  // namespace goelab
