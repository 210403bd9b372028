#pragma once

// JSON forms of groups, patterns, rules, subshifts and matrices.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "goelab/automaton.hpp"
#include "goelab/error.hpp"
#include "goelab/group.hpp"
#include "goelab/linear_ca.hpp"
#include "goelab/pattern.hpp"
#include "goelab/sofic.hpp"
#include "goelab/subshift.hpp"

namespace goelab {

using Json = nlohmann::ordered_json;

// Parses text, reporting syntax errors with line and column.
inline Json parse_json(const std::string& text, const std::string& source = "<input>") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                               std::string(e.what()) + ")");
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json load_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

namespace detail {
inline const Json& field(const Json& j, const char* key, const std::string& what) {
  require(j.is_object() && j.contains(key), ErrorCode::validation, what + ": missing field \"" + key + "\"");
  return j.at(key);
}
inline int as_int(const Json& j, const std::string& what) {
  require(j.is_number_integer(), ErrorCode::validation, what + ": expected an integer");
  return j.get<int>();
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Groups and elements.

inline Json group_to_json(const GroupDescriptor& g) {
  if (g.is_zd()) return Json{{"type", "Zd"}, {"d", g.dimension()}};
  return Json{{"type", "Free"}, {"rank", g.dimension()}, {"generators", g.generator_names()}};
}

inline GroupDescriptor group_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "Z") return GroupDescriptor::zd(1);
    if (s.size() > 1 && s[0] == 'Z') return GroupDescriptor::zd(std::stoi(s.substr(1)));
    if (s.size() > 1 && s[0] == 'F') return GroupDescriptor::free_group(std::stoi(s.substr(1)));
    fail(ErrorCode::validation, "unknown group \"" + s + "\"");
  }
  std::string type = detail::field(j, "type", "group").get<std::string>();
  if (type == "Zd" || type == "Z") return GroupDescriptor::zd(j.contains("d") ? detail::as_int(j.at("d"), "group.d") : 1);
  if (type == "Free") {
    int rank = detail::as_int(detail::field(j, "rank", "group"), "group.rank");
    std::vector<std::string> names;
    if (j.contains("generators")) names = j.at("generators").get<std::vector<std::string>>();
    return GroupDescriptor::free_group(rank, names);
  }
  fail(ErrorCode::validation, "unknown group type \"" + type + "\"");
}

inline Json element_to_json(const GroupDescriptor& g, const GroupElement& e) {
  if (g.is_zd()) return Json(e.raw());
  return Json(to_string(g, e));
}

inline GroupElement element_from_json(const GroupDescriptor& g, const Json& j) {
  if (g.is_zd()) {
    if (j.is_number_integer() && g.dimension() == 1) return GroupElement::integer(j.get<int>());
    require(j.is_array(), ErrorCode::validation, "Z^d element must be a coordinate array");
    auto v = j.get<std::vector<int>>();
    require(static_cast<int>(v.size()) == g.dimension(), ErrorCode::validation, "element has the wrong dimension");
    return GroupElement::vec(v);
  }
  if (j.is_string()) return parse_free_element(g, j.get<std::string>());
  require(j.is_array(), ErrorCode::validation, "free group element must be a string or a letter array");
  return GroupElement::word(g.dimension(), j.get<std::vector<int>>());
}

inline Json subset_to_json(const FiniteSubset& s) {
  Json a = Json::array();
  for (const auto& e : s) a.push_back(element_to_json(s.group(), e));
  return a;
}

inline FiniteSubset subset_from_json(const GroupDescriptor& g, const Json& j) {
  require(j.is_array(), ErrorCode::validation, "finite subset must be an array");
  std::vector<GroupElement> v;
  for (const auto& e : j) v.push_back(element_from_json(g, e));
  return FiniteSubset(g, std::move(v));
}

// ---------------------------------------------------------------------------
// Alphabets and patterns.

inline Alphabet alphabet_from_json(const Json& j) {
  if (j.is_number_integer()) return Alphabet::digits(static_cast<std::size_t>(j.get<int>()));
  require(j.is_array(), ErrorCode::validation, "alphabet must be a list of symbol names or a size");
  std::vector<std::string> names;
  for (const auto& s : j) names.push_back(s.is_string() ? s.get<std::string>() : s.dump());
  return Alphabet(std::move(names));
}

inline Json alphabet_to_json(const Alphabet& a) { return Json(a.names()); }

inline Symbol symbol_from_json(const Alphabet& a, const Json& j) {
  if (j.is_string()) return a.index_of(j.get<std::string>());
  if (j.is_number_integer()) return a.index_of(std::to_string(j.get<int>()));
  fail(ErrorCode::validation, "symbol must be a string");
}

inline Json pattern_to_json(const Pattern& p, const Alphabet& a) {
  Json vals = Json::array();
  for (Symbol s : p.values()) vals.push_back(a.name(s));
  return Json{{"support", subset_to_json(p.support())}, {"values", vals}};
}

inline Json word_to_json(const std::vector<Symbol>& w, const Alphabet& a) {
  if (a.single_char()) return Json(a.format_word(w));
  Json arr = Json::array();
  for (Symbol s : w) arr.push_back(a.name(s));
  return arr;
}

inline std::vector<Symbol> word_from_json(const Json& j, const Alphabet& a) {
  if (j.is_string()) return a.parse_word(j.get<std::string>());
  require(j.is_array(), ErrorCode::validation, "word must be a string or an array of symbols");
  std::vector<Symbol> w;
  for (const auto& s : j) w.push_back(symbol_from_json(a, s));
  return w;
}

inline Pattern pattern_from_json(const GroupDescriptor& g, const Alphabet& a, const Json& j) {
  if (j.is_object() && j.contains("word")) {
    require(g.is_zd() && g.dimension() == 1, ErrorCode::validation, "word patterns are only defined over Z");
    int offset = j.contains("offset") ? detail::as_int(j.at("offset"), "pattern.offset") : 0;
    return word_to_pattern(word_from_json(j.at("word"), a), offset);
  }
  const Json& sup = detail::field(j, "support", "pattern");
  const Json& vals = detail::field(j, "values", "pattern");
  require(sup.is_array() && vals.is_array() && sup.size() == vals.size(), ErrorCode::validation,
          "pattern support and values differ in length");
  std::vector<std::pair<GroupElement, Symbol>> cells;
  for (std::size_t i = 0; i < sup.size(); ++i) cells.emplace_back(element_from_json(g, sup[i]), symbol_from_json(a, vals[i]));
  return Pattern::from_cells(g, std::move(cells));
}

// ---------------------------------------------------------------------------
// Rules.

// Table key for the window with pattern index idx: the window word in canonical support order.
inline std::string window_key(const CellularAutomaton& tau, std::uint64_t idx) {
  std::vector<Symbol> w(tau.memory().size());
  PatternEnumerator(tau.memory(), tau.input().size()).decode(idx, w.data());
  if (tau.input().single_char()) return tau.input().format_word(w);
  std::string k;
  for (std::size_t i = 0; i < w.size(); ++i) k += (i ? "," : "") + tau.input().name(w[i]);
  return k;
}

inline Json rule_to_json(const CellularAutomaton& tau) {
  Json table = Json::object();
  for (std::uint64_t i = 0; i < tau.table().size(); ++i) table[window_key(tau, i)] = tau.output().name(tau.rule(i));
  return Json{{"group", group_to_json(tau.group())},
              {"input_alphabet", alphabet_to_json(tau.input())},
              {"output_alphabet", alphabet_to_json(tau.output())},
              {"memory_set", subset_to_json(tau.memory())},
              {"table", table}};
}

inline CellularAutomaton rule_from_json(const Json& j) {
  if (j.is_object() && j.contains("wolfram")) {
    int n = detail::as_int(j.at("wolfram"), "wolfram");
    require(n >= 0 && n <= 255, ErrorCode::validation, "Wolfram rule number must be in 0..255");
    return wolfram_rule(n);
  }
  GroupDescriptor g = j.contains("group") ? group_from_json(j.at("group")) : GroupDescriptor::zd(1);
  Alphabet in = alphabet_from_json(detail::field(j, "input_alphabet", "rule"));
  Alphabet out = j.contains("output_alphabet") ? alphabet_from_json(j.at("output_alphabet")) : in;
  std::vector<GroupElement> pts;
  const Json& ms = detail::field(j, "memory_set", "rule");
  require(ms.is_array(), ErrorCode::validation, "memory_set must be an array");
  for (const auto& e : ms) pts.push_back(element_from_json(g, e));
  const std::size_t raw_size = pts.size();
  FiniteSubset s(g, std::move(pts));
  require(s.size() == raw_size, ErrorCode::validation, "memory_set contains duplicates");
  auto n = bounded_power(in.size(), s.size(), enumeration_cap());
  require(n.has_value(), ErrorCode::budget, "rule table exceeds the enumeration cap");
  const Json& tj = detail::field(j, "table", "rule");
  std::vector<Symbol> table(static_cast<std::size_t>(*n));
  if (tj.is_array()) {
    require(tj.size() == *n, ErrorCode::validation,
            "rule table has " + std::to_string(tj.size()) + " entries, expected " + std::to_string(*n) + " = " +
                std::to_string(in.size()) + "^" + std::to_string(s.size()));
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = symbol_from_json(out, tj[i]);
  } else {
    require(tj.is_object(), ErrorCode::validation, "rule table must be an object keyed by window words or an array");
    CellularAutomaton probe(g, in, out, s, std::vector<Symbol>(table.size(), 0));
    for (std::uint64_t i = 0; i < table.size(); ++i) {
      std::string key = window_key(probe, i);
      require(tj.contains(key), ErrorCode::validation, "rule table is missing window \"" + key + "\"");
      table[i] = symbol_from_json(out, tj.at(key));
    }
    require(tj.size() == table.size(), ErrorCode::validation,
            "rule table has " + std::to_string(tj.size()) + " keys, expected " + std::to_string(table.size()));
  }
  return CellularAutomaton(g, in, out, s, std::move(table));
}

// ---------------------------------------------------------------------------
// Subshifts.

inline Json sofic_to_json(const SoficPresentation1D& x) {
  Json edges = Json::array();
  for (const auto& e : x.edges()) edges.push_back(Json::array({e.from, e.to, x.alphabet().name(e.label)}));
  return Json{{"type", "sofic"}, {"alphabet", alphabet_to_json(x.alphabet())}, {"vertices", x.vertices()}, {"edges", edges}};
}

inline Json subshift_to_json(const Subshift& x) {
  if (!x.is_sft()) {
    Json j = sofic_to_json(x.sofic());
    j["name"] = x.name;
    return j;
  }
  Json forb = Json::array();
  for (const auto& p : x.sft().forbidden()) forb.push_back(pattern_to_json(p, x.alphabet()));
  return Json{{"type", "sft"},
              {"name", x.name},
              {"group", group_to_json(x.group())},
              {"alphabet", alphabet_to_json(x.alphabet())},
              {"forbidden", forb}};
}

inline Subshift subshift_from_json(const Json& j) {
  if (j.is_string() || (j.is_object() && j.contains("builtin"))) {
    std::string name = j.is_string() ? j.get<std::string>() : j.at("builtin").get<std::string>();
    auto b = builtin_by_name(name);
    require(b.has_value(), ErrorCode::validation, "unknown built-in subshift \"" + name + "\"");
    return *b;
  }
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "custom";
  Alphabet a = j.contains("alphabet") ? alphabet_from_json(j.at("alphabet")) : binary_alphabet();
  if (j.contains("edges")) {
    int n = detail::as_int(detail::field(j, "vertices", "sofic"), "sofic.vertices");
    require(n >= 0, ErrorCode::validation, "vertex count must be nonnegative");
    std::vector<LabeledEdge> edges;
    for (const auto& e : j.at("edges")) {
      require(e.is_array() && e.size() == 3, ErrorCode::validation, "sofic edges are [from, to, symbol]");
      int u = detail::as_int(e[0], "edge.from"), v = detail::as_int(e[1], "edge.to");
      require(u >= 0 && v >= 0 && u < n && v < n, ErrorCode::validation, "edge endpoint out of range");
      edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), symbol_from_json(a, e[2])});
    }
    return {name, SoficPresentation1D(a, static_cast<std::size_t>(n), std::move(edges))};
  }
  GroupDescriptor g = j.contains("group") ? group_from_json(j.at("group")) : GroupDescriptor::zd(1);
  std::vector<Pattern> forb;
  for (const auto& p : detail::field(j, "forbidden", "sft")) forb.push_back(pattern_from_json(g, a, p));
  return {name, SFTPresentation(g, a, std::move(forb))};
}

// ---------------------------------------------------------------------------
// Matrices over F_p[G].

inline Json matrix_to_json(const MatrixCA& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      Json coeffs = Json::array();
      for (const auto& [g, c] : m.at(i, j).coeffs()) coeffs.push_back(Json{{"g", element_to_json(m.group(), g)}, {"c", c}});
      row.push_back(Json{{"coeffs", coeffs}});
    }
    rows.push_back(row);
  }
  return Json{{"p", m.prime()}, {"d", m.dim()}, {"group", group_to_json(m.group())}, {"entries", rows}};
}

inline MatrixCA matrix_from_json(const Json& j) {
  int p = detail::as_int(detail::field(j, "p", "matrix"), "matrix.p");
  int d = detail::as_int(detail::field(j, "d", "matrix"), "matrix.d");
  require(p >= 2 && d >= 1, ErrorCode::validation, "matrix needs p >= 2 and d >= 1");
  GroupDescriptor g = j.contains("group") ? group_from_json(j.at("group")) : GroupDescriptor::zd(1);
  const Json& rows = detail::field(j, "entries", "matrix");
  require(rows.is_array() && rows.size() == static_cast<std::size_t>(d), ErrorCode::validation, "matrix needs d rows");
  std::vector<std::vector<GroupRingElement>> entries;
  for (const auto& row : rows) {
    require(row.is_array() && row.size() == static_cast<std::size_t>(d), ErrorCode::validation, "matrix needs d columns");
    std::vector<GroupRingElement> r;
    for (const auto& cell : row) {
      GroupRingElement e(g, static_cast<std::uint32_t>(p));
      for (const auto& t : detail::field(cell, "coeffs", "matrix entry"))
        e.add(element_from_json(g, detail::field(t, "g", "coefficient")), detail::field(t, "c", "coefficient").get<std::int64_t>());
      r.push_back(std::move(e));
    }
    entries.push_back(std::move(r));
  }
  return MatrixCA(static_cast<std::uint32_t>(p), static_cast<std::size_t>(d), std::move(entries));
}

}  // namespace goelab
