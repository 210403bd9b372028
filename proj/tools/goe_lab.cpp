// goe_lab: command-line front end for the cellular automata lab.
//
// Exit codes: 0 success, 1 input error, 2 verdict unknown within budget, 3 reproduction row failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "goelab/goelab.hpp"

using namespace goelab;

namespace {

struct Globals {
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool timings = false;
  std::size_t max_cells = SearchBudget{}.max_cells;
  std::uint64_t max_candidates = SearchBudget{}.max_candidates;
  SearchBudget budget() const { return {max_cells, max_candidates}; }
};

constexpr int kExitOk = 0, kExitInput = 1, kExitUnknown = 2, kExitFailed = 3;

std::string read_stdin() { return std::string(std::istreambuf_iterator<char>(std::cin), {}); }

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::optional<CellularAutomaton> catalog_rule(const std::string& name) {
  if (name == "golden_to_even") return golden_to_even_ca();
  if (name == "majority") return majority_ca();
  if (name == "fiorenzi_even_sigma") return fiorenzi_even_sigma();
  if (name == "fiorenzi_ternary_sigma") return fiorenzi_ternary_sigma();
  if (name == "fiorenzi_ternary_tau") return fiorenzi_ternary_tau_prime();
  if (name == "majority_von_neumann") return majority_von_neumann();
  if (name == "xor_three_z2") return xor_three_z2();
  if (name == "muller_moore") return muller_moore_ca();
  if (name == "muller_myhill") return to_cellular_automaton(muller_myhill_ca());
  return std::nullopt;
}

// A rule given as a Wolfram number, a catalog name, a JSON file, or "-" for stdin. A report
// carrying a "rule" member is unwrapped, so `wolfram 232 | goe_lab analyze` works.
CellularAutomaton load_rule(const std::string& spec) {
  if (all_digits(spec)) return wolfram_rule(std::stoi(spec));
  if (spec.rfind("wolfram:", 0) == 0) return wolfram_rule(std::stoi(spec.substr(8)));
  if (auto c = catalog_rule(spec)) return *c;
  Json j = spec.empty() || spec == "-" ? parse_json(read_stdin(), "<stdin>") : load_json_file(spec);
  if (j.is_object() && j.contains("rule")) return rule_from_json(j.at("rule"));
  return rule_from_json(j);
}

Subshift load_subshift(const std::string& spec) {
  if (spec == "fiorenzi_ternary") return fiorenzi_ternary_shift();
  if (auto b = builtin_by_name(spec)) return *b;
  Json j = spec == "-" ? parse_json(read_stdin(), "<stdin>") : load_json_file(spec);
  if (j.is_object() && j.contains("subshift")) return subshift_from_json(j.at("subshift"));
  return subshift_from_json(j);
}

MatrixCA load_matrix(const std::string& spec) {
  if (spec == "one_plus_u") {
    GroupDescriptor z = GroupDescriptor::zd(1);
    return MatrixCA(2, 1, {{GroupRingElement(z, 2, {{GroupElement::integer(0), 1}, {GroupElement::integer(1), 1}})}});
  }
  if (spec == "muller_myhill") return muller_myhill_ca();
  Json j = spec == "-" ? parse_json(read_stdin(), "<stdin>") : load_json_file(spec);
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j.at("matrix"));
  return matrix_from_json(j);
}

void emit(const Globals& g, const Json& report) {
  std::string text = report.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  require(static_cast<bool>(f), ErrorCode::validation, "cannot write " + g.out);
  f << text;
}

void table_line(const std::string& key, const std::string& value) {
  std::fprintf(stderr, "  %-28s %s\n", key.c_str(), value.c_str());
}

std::string tri(const Json& v) { return v.is_null() ? "unknown" : (v.get<bool>() ? "yes" : "no"); }

Json pair_witness(const CellularAutomaton& tau, const SoficPresentation1D& dom, const PairVerdict& v, bool need_almost) {
  if (!v.witness) return nullptr;
  const Alphabet& a = tau.input();
  const auto& w = *v.witness;
  PairCheck c = verify_pair(tau, dom, w);
  return Json{{"x1", {{"left_period", word_to_json(w.u1, a)}, {"core", word_to_json(w.w1, a)}, {"right_period", word_to_json(w.v1, a)}}},
              {"x2", {{"left_period", word_to_json(w.u2, a)}, {"core", word_to_json(w.w2, a)}, {"right_period", word_to_json(w.v2, a)}}},
              {"verified", c.ok(need_almost)}};
}

// ---------------------------------------------------------------------------
// analyze and decide1d

struct AnalyzeArgs {
  std::string rule = "-";
  std::string domain;
  std::string codomain;
  int n = 8;
};

int run_decisions(const Globals& g, const AnalyzeArgs& args, const std::string& command, const std::string& only) {
  Stopwatch total;
  CellularAutomaton tau = load_rule(args.rule);
  Json rep = report_header(command);
  rep["inputs"].push_back(input_entry("rule", rule_to_json(tau)));
  Json verdicts = Json::object(), witnesses = Json::object(), timings = Json::object();
  bool want_s = only.empty() || only == "surjective";
  bool want_p = only.empty() || only == "preinjective";
  bool want_i = only.empty() || only == "injective";
  Provenance prov = Provenance::decided;

  if (tau.group().is_zd() && tau.group().dimension() == 1) {
    Subshift dom = args.domain.empty() ? builtin_full(tau.input().size()) : load_subshift(args.domain);
    Subshift cod = args.codomain.empty() ? (args.domain.empty() ? builtin_full(tau.output().size()) : dom)
                                         : load_subshift(args.codomain);
    SoficPresentation1D x = as_sofic(dom), y = as_sofic(cod);
    rep["inputs"].push_back(input_entry("domain", subshift_to_json(dom)));
    rep["inputs"].push_back(input_entry("codomain", subshift_to_json(cod)));
    rep["domain"] = dom.name;
    rep["codomain"] = cod.name;
    if (want_s) {
      Stopwatch sw;
      SurjectivityVerdict s = decide_surjective(tau, x, y);
      verdicts["surjective"] = s.surjective;
      verdicts["image_within_codomain"] = s.image_within_codomain;
      if (s.goe_word)
        witnesses["goe_word"] = Json{{"word", word_to_json(*s.goe_word, tau.output())},
                                     {"verified", word_appears(y, *s.goe_word) && !has_preimage(tau, x, *s.goe_word)}};
      if (s.foreign_word)
        witnesses["foreign_word"] = Json{{"word", word_to_json(*s.foreign_word, tau.output())},
                                         {"verified", !word_appears(y, *s.foreign_word)}};
      timings["surjective"] = sw.seconds();
    }
    if (want_p) {
      Stopwatch sw;
      PairVerdict p = decide_preinjective(tau, x);
      verdicts["preinjective"] = p.holds;
      if (p.witness) witnesses["me_pair"] = pair_witness(tau, x, p, true);
      timings["preinjective"] = sw.seconds();
    }
    if (want_i) {
      Stopwatch sw;
      PairVerdict i = decide_injective(tau, x);
      verdicts["injective"] = i.holds;
      if (i.witness) witnesses["injectivity_pair"] = pair_witness(tau, x, i, false);
      timings["injective"] = sw.seconds();
    }
    if (command == "analyze") {
      Stopwatch sw;
      ImageEntropyReport e = image_entropy_check(tau, dom, 1, args.n);
      Json series = Json::array();
      for (const auto& r : e.rows)
        series.push_back(Json{{"n", r.n}, {"image_count", to_string(r.image_count)}, {"domain_count", to_string(r.domain_count)},
                              {"image_estimate", log_big(r.image_count) / (r.n + 1)}});
      rep["entropy"] = Json{{"series", series},
                            {"image_perron", e.image_perron ? Json(e.image_perron->value) : Json(nullptr)},
                            {"domain_perron", e.domain_perron ? Json(e.domain_perron->value) : Json(nullptr)},
                            {"inequality_holds", e.ok()}};
      timings["entropy"] = sw.seconds();
      if (tau.input().size() == 2 && tau.output().size() == 2 && tau.memory() == elementary_memory())
        rep["wolfram"] = wolfram_number(tau);
    }
  } else if (tau.group().is_zd()) {
    require(args.domain.empty() && args.codomain.empty(), ErrorCode::unsupported_operation,
            "subshift domains are supported over Z only");
    require(command == "analyze", ErrorCode::unsupported_operation, "decide1d needs G = Z");
    Stopwatch sw;
    SemiVerdict v = semi_decide(tau, g.budget());
    timings["search"] = sw.seconds();
    // A GOE pattern or an ME pair settles all three properties on the full shift.
    if (v.kind == SemiVerdictKind::unknown) {
      prov = Provenance::unknown;
      verdicts = Json{{"surjective", nullptr}, {"preinjective", nullptr}, {"injective", nullptr}};
      rep["budget"] = budget_json(g.max_cells, g.max_candidates);
      rep["budget"]["windows_examined"] = v.windows_examined;
      rep["budget"]["windows_skipped"] = v.windows_skipped;
    } else {
      verdicts = Json{{"surjective", false}, {"preinjective", false}, {"injective", false}};
      if (v.goe)
        witnesses["goe_pattern"] = Json{{"pattern", pattern_to_json(*v.goe, tau.output())}, {"verified", is_goe_pattern(tau, *v.goe)}};
      if (v.me_pair)
        witnesses["me_pair"] = Json{{"first", pattern_to_json(v.me_pair->first, tau.input())},
                                   {"second", pattern_to_json(v.me_pair->second, tau.input())},
                                   {"verified", me_check(tau, v.me_pair->first, v.me_pair->second).erasable}};
      rep["window"] = v.window;
    }
  } else {
    require(command == "analyze", ErrorCode::unsupported_operation, "decide1d needs G = Z");
    prov = Provenance::unknown;
    verdicts = Json{{"surjective", nullptr}, {"preinjective", nullptr}, {"injective", nullptr}};
    rep["budget"] = Json{{"reason", "no decision procedure over free groups; use the freegroup command"}};
  }
  rep["group"] = group_to_json(tau.group());
  rep["verdicts"] = verdicts;
  rep["witnesses"] = witnesses;
  rep["provenance"] = to_string(prov);
  if (g.timings) {
    timings["total"] = total.seconds();
    rep["timings"] = timings;
  }
  emit(g, rep);
  std::fprintf(stderr, "%s (%s)\n", command.c_str(), to_string(prov));
  for (const auto& [k, v] : verdicts.items()) table_line(k, tri(v));
  for (const auto& [k, v] : witnesses.items()) table_line("witness " + k, v.value("verified", false) ? "verified" : "NOT verified");
  return prov == Provenance::unknown ? kExitUnknown : kExitOk;
}

// ---------------------------------------------------------------------------
// goe and me

int run_goe(const Globals& g, const std::string& rule) {
  Stopwatch sw;
  CellularAutomaton tau = load_rule(rule);
  GoeSearchResult r = find_goe_pattern(tau, g.budget());
  Json rep = report_header("goe");
  rep["inputs"].push_back(input_entry("rule", rule_to_json(tau)));
  rep["found"] = r.found();
  rep["verdicts"] = Json{{"surjective", r.found() ? Json(false) : Json(nullptr)}};
  if (r.found())
    rep["witness"] = Json{{"pattern", pattern_to_json(*r.witness, tau.output())}, {"window", r.window},
                          {"verified", is_goe_pattern(tau, *r.witness)}};
  rep["windows_examined"] = r.windows_examined;
  rep["windows_skipped"] = r.windows_skipped;
  rep["provenance"] = to_string(r.found() ? Provenance::decided : Provenance::unknown);
  if (!r.found()) rep["budget"] = budget_json(g.max_cells, g.max_candidates);
  if (g.timings) rep["timings"] = Json{{"total", sw.seconds()}};
  emit(g, rep);
  std::fprintf(stderr, "goe search\n");
  table_line("GOE pattern", r.found() ? rep["witness"]["pattern"].dump() : "none within budget");
  return r.found() ? kExitOk : kExitUnknown;
}

int run_me(const Globals& g, const std::string& rule) {
  Stopwatch sw;
  CellularAutomaton tau = load_rule(rule);
  MEPairResult r = find_me_pair(tau, g.budget());
  Json rep = report_header("me");
  rep["inputs"].push_back(input_entry("rule", rule_to_json(tau)));
  rep["found"] = r.found();
  rep["verdicts"] = Json{{"preinjective", r.found() ? Json(false) : Json(nullptr)}};
  if (r.found())
    rep["witness"] = Json{{"first", pattern_to_json(r.pair->first, tau.input())},
                          {"second", pattern_to_json(r.pair->second, tau.input())},
                          {"window", r.window},
                          {"verified", me_check(tau, r.pair->first, r.pair->second).erasable}};
  rep["windows_examined"] = r.windows_examined;
  rep["windows_skipped"] = r.windows_skipped;
  rep["provenance"] = to_string(r.found() ? Provenance::decided : Provenance::unknown);
  if (!r.found()) rep["budget"] = budget_json(g.max_cells, g.max_candidates);
  if (g.timings) rep["timings"] = Json{{"total", sw.seconds()}};
  emit(g, rep);
  std::fprintf(stderr, "me search\n");
  table_line("ME pair", r.found() ? "found" : "none within budget");
  return r.found() ? kExitOk : kExitUnknown;
}

// ---------------------------------------------------------------------------
// entropy

int run_entropy(const Globals& g, const std::string& subshift, const std::string& method, int n, const std::string& rule) {
  Stopwatch sw;
  Subshift x = load_subshift(subshift);
  Json rep = report_header("entropy");
  rep["inputs"].push_back(input_entry("subshift", subshift_to_json(x)));
  rep["subshift"] = x.name;
  rep["definition"] = subshift_to_json(x);
  rep["method"] = method;
  if (method == "perron") {
    PerronValue p = perron_entropy(x);
    rep["entropy"] = Json{{"value", p.value}, {"lower", p.lower}, {"upper", p.upper}, {"iterations", p.iterations}};
    table_line("perron entropy", std::to_string(p.value));
  } else if (method == "count") {
    EntropyEstimate e = pattern_count_entropy(x, 1, n);
    Json rows = Json::array();
    for (const auto& r : e.rows)
      rows.push_back(Json{{"n", r.n}, {"cells", r.cells}, {"count", to_string(r.count)}, {"estimate", r.estimate}});
    rep["entropy"] = Json{{"series", rows}};
    for (const auto& r : e.rows) table_line("n = " + std::to_string(r.n), to_string(r.count) + "  " + std::to_string(r.estimate));
  } else {
    fail(ErrorCode::validation, "method must be count or perron");
  }
  if (!rule.empty()) {
    CellularAutomaton tau = load_rule(rule);
    rep["inputs"].push_back(input_entry("rule", rule_to_json(tau)));
    ImageEntropyReport ie = image_entropy_check(tau, x, 1, n);
    Json rows = Json::array();
    for (const auto& r : ie.rows)
      rows.push_back(Json{{"n", r.n}, {"image_count", to_string(r.image_count)}, {"domain_count", to_string(r.domain_count)}});
    rep["image"] = Json{{"series", rows},
                        {"violations", ie.violations()},
                        {"image_perron", ie.image_perron ? Json(ie.image_perron->value) : Json(nullptr)},
                        {"locally_admissible", ie.locally_admissible}};
    table_line("image count violations", std::to_string(ie.violations()));
  }
  rep["provenance"] = to_string(Provenance::decided);
  if (g.timings) rep["timings"] = Json{{"total", sw.seconds()}};
  emit(g, rep);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// n0, wolfram, linear, freegroup

int run_n0(const Globals& g, std::uint64_t a, std::uint64_t k, std::uint64_t d, std::uint64_t r) {
  Stopwatch sw;
  N0Result res = n0_bound(a, k, d, r);
  Json rep = report_header("n0");
  rep["parameters"] = Json{{"a", a}, {"k", k}, {"d", d}, {"r", r}};
  rep["n0"] = res.n0;
  rep["holds_at_n0"] = res.holds_at_n0;
  rep["fails_below"] = res.fails_below;
  rep["exact_verified"] = res.exact_verified;
  rep["estimated_bits"] = res.estimated_bits;
  rep["provenance"] = to_string(res.exact_verified ? Provenance::decided : Provenance::unknown);
  if (!res.exact_verified) rep["budget"] = Json{{"exact_bits", n0_exact_bit_budget()}};
  if (g.timings) rep["timings"] = Json{{"total", sw.seconds()}};
  emit(g, rep);
  table_line("n0", std::to_string(res.n0));
  table_line("exact check", res.exact_verified ? "done" : "over budget, numeric only");
  return res.exact_verified ? kExitOk : kExitUnknown;
}

int run_wolfram(const Globals& g, int n) {
  CellularAutomaton tau = wolfram_rule(n);
  Json rep = report_header("wolfram");
  rep["wolfram"] = n;
  rep["rule"] = rule_to_json(tau);
  rep["provenance"] = to_string(Provenance::decided);
  emit(g, rep);
  std::fprintf(stderr, "rule %d\n", n);
  for (std::uint64_t i = tau.table().size(); i-- > 0;) table_line(window_key(tau, i), tau.output().name(tau.rule(i)));
  return kExitOk;
}

int run_linear(const Globals& g, const std::string& matrix, int radius, std::size_t trials) {
  Stopwatch sw;
  MatrixCA m = load_matrix(matrix);
  Json rep = report_header("linear");
  rep["inputs"].push_back(input_entry("matrix", matrix_to_json(m)));
  rep["adjoint"] = matrix_to_json(adjoint(m));
  PairingCheck pc = pairing_identity_check(m, trials, g.seed);
  rep["pairing"] = Json{{"trials", pc.trials}, {"failures", pc.failures}};
  Provenance prov = Provenance::decided;
  if (m.group().is_zd() && m.group().dimension() == 1) {
    DualityReport d = duality_check(m);
    rep["verdicts"] = Json{{"preinjective", d.preinjective}, {"surjective", d.surjective},
                           {"adjoint_preinjective", d.adjoint_preinjective}, {"adjoint_surjective", d.adjoint_surjective}};
    rep["duality_holds"] = d.ok();
    table_line("pre-injective", d.preinjective ? "yes" : "no");
    table_line("surjective", d.surjective ? "yes" : "no");
    table_line("duality", d.ok() ? "holds" : "VIOLATED");
  } else {
    prov = Provenance::certified_to_radius;
  }
  if (radius >= 0) {
    Json ks = Json::array();
    bool trivial = true;
    for (int r = 0; r <= radius; ++r) {
      KernelResult k = kernel_finite_support(m, r);
      trivial = trivial && k.trivial();
      ks.push_back(Json{{"radius", r}, {"unknowns", k.unknowns}, {"equations", k.equations}, {"dimension", k.basis.size()}});
    }
    rep["kernel"] = Json{{"radii", ks}, {"trivial", trivial}, {"radius", radius}};
    table_line("finite-support kernel", trivial ? "trivial" : "nontrivial");
  }
  rep["provenance"] = to_string(prov);
  if (g.timings) rep["timings"] = Json{{"total", sw.seconds()}};
  emit(g, rep);
  table_line("pairing failures", std::to_string(pc.failures));
  return kExitOk;
}

int run_freegroup(const Globals& g, const std::string& which, int radius, std::size_t targets) {
  Stopwatch sw;
  Json rep = report_header("freegroup");
  rep["example"] = which;
  rep["radius"] = radius;
  bool ok = false;
  if (which == "ex1") {
    CellularAutomaton tau = muller_moore_ca();
    rep["inputs"].push_back(input_entry("rule", rule_to_json(tau)));
    DiamondReport d = verify_ex1_diamond(radius);
    std::mt19937_64 rng(g.seed);
    std::size_t failures = 0;
    for (std::size_t t = 0; t < targets; ++t)
      if (!ex1_preimage(random_ball_config(rng, radius)).ok()) ++failures;
    rep["diamond"] = Json{{"distinct", d.distinct}, {"equal_on_ball", d.equal_on_ball}, {"images_zero", d.images_zero},
                          {"equal_everywhere", d.equal_everywhere}, {"verified", d.ok()}};
    rep["preimages"] = Json{{"targets", targets}, {"failures", failures}};
    rep["verdicts"] = Json{{"surjective_on_ball", failures == 0}, {"preinjective", d.ok() ? Json(false) : Json(nullptr)}};
    ok = d.ok() && failures == 0;
    table_line("diamond", d.ok() ? "verified" : "NOT verified");
    table_line("preimage failures", std::to_string(failures));
  } else if (which == "ex2") {
    Ex2Report r = verify_ex2(radius);
    rep["inputs"].push_back(input_entry("matrix", matrix_to_json(muller_myhill_ca())));
    Json ks = Json::array();
    for (const auto& k : r.kernels) ks.push_back(Json{{"radius", k.radius}, {"dimension", k.basis.size()}});
    rep["second_coordinate_zero"] = r.second_coordinate_zero;
    rep["delta_image_in_unit_sphere"] = r.delta_image_in_sphere;
    rep["kernels"] = ks;
    rep["verdicts"] = Json{{"surjective", r.second_coordinate_zero ? Json(false) : Json(nullptr)},
                           {"preinjective_to_radius", r.kernel_trivial()}};
    ok = r.ok();
    table_line("second coordinate zero", r.second_coordinate_zero ? "yes" : "no");
    table_line("kernel trivial to radius", r.kernel_trivial() ? "yes" : "no");
  } else {
    fail(ErrorCode::validation, "freegroup example must be ex1 or ex2");
  }
  rep["provenance"] = to_string(Provenance::certified_to_radius);
  if (g.timings) rep["timings"] = Json{{"total", sw.seconds()}};
  emit(g, rep);
  return ok ? kExitOk : kExitFailed;
}

int run_suite_cmd(const Globals& g, const SuiteOptions& o) {
  SuiteResult r = run_suite(o);
  require(!r.rows.empty(), ErrorCode::validation, "filter \"" + o.filter + "\" matches no rows");
  emit(g, suite_to_json(r, o, g.timings));
  for (const auto& row : r.rows) {
    std::fprintf(stderr, "%s  %-24s %-11s", row.pass ? "PASS" : "FAIL", row.id.c_str(), row.category.c_str());
    if (g.timings) std::fprintf(stderr, " %8.3fs", row.seconds);
    std::fprintf(stderr, "\n");
    if (!row.pass) std::fprintf(stderr, "      claim: %s%s%s\n", row.claim.c_str(), row.error.empty() ? "" : "; error: ", row.error.c_str());
  }
  std::fprintf(stderr, "%zu/%zu rows pass\n", r.passed(), r.rows.size());
  return r.ok() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"goe_lab: Garden of Eden laboratory for cellular automata"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "write the JSON report to this file");
  app.add_option("--seed", g.seed, "seed for all randomness");
  app.add_option("--threads", g.threads, "worker threads (default: GOE_LAB_THREADS or all cores)");
  app.add_flag("--timings", g.timings, "include wall-clock timings in the report");
  app.add_option("--max-cells", g.max_cells, "largest window for GOE/ME searches");
  app.add_option("--max-candidates", g.max_candidates, "largest input pattern count per window");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "decide surjectivity, pre-injectivity, injectivity; entropy series");
  analyze->add_option("--rule", an.rule, "rule: Wolfram number, catalog name, JSON file, or - for stdin");
  analyze->add_option("--domain", an.domain, "domain subshift (Z only)");
  analyze->add_option("--codomain", an.codomain, "codomain subshift (Z only)");
  analyze->add_option("--n", an.n, "largest entropy window");

  AnalyzeArgs dn;
  std::string property;
  auto* decide = app.add_subcommand("decide1d", "exact decisions over Z");
  decide->add_option("property", property, "surjective | preinjective | injective")
      ->required()
      ->check(CLI::IsMember({"surjective", "preinjective", "injective"}));
  decide->add_option("--rule", dn.rule, "rule");
  decide->add_option("--domain", dn.domain, "domain subshift");
  decide->add_option("--codomain", dn.codomain, "codomain subshift");

  std::string goe_rule = "-", goe_what = "search";
  auto* goe = app.add_subcommand("goe", "GOE pattern search over Z^d");
  goe->add_option("action", goe_what, "search")->check(CLI::IsMember({"search"}));
  goe->add_option("--rule", goe_rule, "rule");

  std::string me_rule = "-", me_what = "search";
  auto* me = app.add_subcommand("me", "mutually erasable pair search over Z^d");
  me->add_option("action", me_what, "search")->check(CLI::IsMember({"search"}));
  me->add_option("--rule", me_rule, "rule");

  std::string ent_sub = "golden_mean", ent_method = "perron", ent_rule;
  int ent_n = 10;
  auto* entropy = app.add_subcommand("entropy", "entropy of a subshift, optionally of a CA image");
  entropy->add_option("--subshift", ent_sub, "built-in name or JSON file");
  entropy->add_option("--method", ent_method, "count | perron")->check(CLI::IsMember({"count", "perron"}));
  entropy->add_option("--n", ent_n, "largest window for counts");
  entropy->add_option("--rule", ent_rule, "also check image counts for this rule");

  std::uint64_t na = 2, nk = 1, nd = 1, nr = 1;
  auto* n0 = app.add_subcommand("n0", "least n with (k - 2r/n)^d > log_a(a^(k^d) - 1)");
  n0->add_option("--a", na, "alphabet size")->check(CLI::Range(2, 1 << 16));
  n0->add_option("--k", nk, "tile side")->check(CLI::Range(1, 1 << 10));
  n0->add_option("--d", nd, "dimension")->check(CLI::Range(1, 8));
  n0->add_option("--r", nr, "memory radius")->check(CLI::Range(1, 1 << 10));

  int wolfram_n = 0;
  auto* wolfram = app.add_subcommand("wolfram", "emit an elementary rule");
  wolfram->add_option("number", wolfram_n, "0..255")->required()->check(CLI::Range(0, 255));

  std::string lin_matrix = "one_plus_u";
  int lin_radius = -1;
  std::size_t lin_trials = 100;
  auto* linear = app.add_subcommand("linear", "linear CA: adjoint, duality, pairing, finite kernels");
  linear->add_option("--matrix", lin_matrix, "JSON file, one_plus_u, or muller_myhill");
  linear->add_option("--radius", lin_radius, "finite-support kernel radius");
  linear->add_option("--trials", lin_trials, "random pairs for the pairing identity");

  std::string fg_which;
  int fg_radius = 3;
  std::size_t fg_targets = 100;
  auto* fg = app.add_subcommand("freegroup", "counterexamples over F2, certified on balls");
  fg->add_option("example", fg_which, "ex1 | ex2")->required()->check(CLI::IsMember({"ex1", "ex2"}));
  fg->add_option("--radius", fg_radius, "ball radius");
  fg->add_option("--targets", fg_targets, "random preimage targets (ex1)");

  SuiteOptions so;
  auto* suite = app.add_subcommand("paper-suite", "run the reproduction suite");
  suite->alias("suite");
  suite->add_option("--filter", so.filter, "category or row id substring");
  suite->add_option("--fault", so.fault, "perturb the rule table of this row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (g.threads > 0) parallel::set_worker_count(g.threads);
  so.seed = g.seed;

  try {
    if (*analyze) return run_decisions(g, an, "analyze", "");
    if (*decide) return run_decisions(g, dn, "decide1d", property);
    if (*goe) return run_goe(g, goe_rule);
    if (*me) return run_me(g, me_rule);
    if (*entropy) return run_entropy(g, ent_sub, ent_method, ent_n, ent_rule);
    if (*n0) return run_n0(g, na, nk, nd, nr);
    if (*wolfram) return run_wolfram(g, wolfram_n);
    if (*linear) return run_linear(g, lin_matrix, lin_radius, lin_trials);
    if (*fg) return run_freegroup(g, fg_which, fg_radius, fg_targets);
    if (*suite) return run_suite_cmd(g, so);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (e.code() != ErrorCode::budget) return kExitInput;
    // Budget exhaustion is a verdict, not an input error.
    Json rep = report_header(app.get_subcommands().front()->get_name());
    rep["provenance"] = to_string(Provenance::unknown);
    rep["budget"] = budget_json(g.max_cells, g.max_candidates);
    rep["budget"]["exhausted"] = e.what();
    emit(g, rep);
    return kExitUnknown;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
