#include <gtest/gtest.h>

#include <random>

#include "goelab/catalog.hpp"
#include "goelab/freegroup_lab.hpp"
#include "goelab/json_io.hpp"
#include "goelab/report.hpp"
#include "oracles.hpp"

using namespace goelab;

namespace {
std::string data(const std::string& name) { return std::string(GOELAB_TEST_DATA) + "/" + name; }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::validation;
}
}  // namespace

TEST(Json, RuleRoundTrip) {
  std::mt19937_64 rng(103);
  std::vector<CellularAutomaton> rules{wolfram_rule(30), majority_von_neumann(), muller_moore_ca(),
                                       fiorenzi_ternary_tau_prime(), oracle::random_ca(rng, 3, 2),
                                       to_cellular_automaton(muller_myhill_ca())};
  for (const auto& r : rules) {
    Json j = rule_to_json(r);
    EXPECT_EQ(rule_from_json(j), r);
    EXPECT_EQ(rule_from_json(parse_json(j.dump())), r);
  }
}

TEST(Json, WolframShorthand) {
  EXPECT_EQ(rule_from_json(Json{{"wolfram", 110}}), wolfram_rule(110));
  EXPECT_EQ(code_of([] { rule_from_json(Json{{"wolfram", 300}}); }), ErrorCode::validation);
}

TEST(Json, RuleFileMatchesCatalog) { EXPECT_EQ(rule_from_json(load_json_file(data("rule.majority.json"))), majority_ca()); }

TEST(Json, BadTableSize) {
  try {
    rule_from_json(load_json_file(data("rule.bad_table.json")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::validation);
    EXPECT_NE(std::string(e.what()).find("expected 4 = 2^2"), std::string::npos) << e.what();
  }
}

TEST(Json, MalformedInputReportsPosition) {
  try {
    load_json_file(data("malformed.txt"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse);
    EXPECT_NE(std::string(e.what()).find(":4:"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { load_json_file(data("missing.json")); }), ErrorCode::parse);
}

TEST(Json, MissingFields) {
  EXPECT_EQ(code_of([] { rule_from_json(Json{{"input_alphabet", {"0", "1"}}}); }), ErrorCode::validation);
  EXPECT_EQ(code_of([] {
              rule_from_json(Json{{"input_alphabet", {"0", "1"}}, {"memory_set", {{0}, {0}}}, {"table", {"0", "1"}}});
            }),
            ErrorCode::validation);
}

TEST(Json, SubshiftRoundTrip) {
  for (const auto& x : {builtin_golden_mean(), builtin_even(), builtin_ledrappier(), fiorenzi_ternary_shift()}) {
    Subshift y = subshift_from_json(subshift_to_json(x));
    EXPECT_EQ(y.name, x.name);
    EXPECT_EQ(y.is_sft(), x.is_sft());
    if (x.is_1d()) EXPECT_TRUE(sofic_equal(as_sofic(x), as_sofic(y)).equal);
    else EXPECT_EQ(subshift_to_json(y), subshift_to_json(x));
  }
  Subshift g = subshift_from_json(load_json_file(data("subshift.golden.json")));
  EXPECT_TRUE(sofic_equal(as_sofic(g), as_sofic(builtin_golden_mean())).equal);
  EXPECT_EQ(code_of([] { subshift_from_json(Json("nowhere")); }), ErrorCode::validation);
}

TEST(Json, MatrixRoundTrip) {
  std::mt19937_64 rng(107);
  MatrixCA m = random_matrix(rng, f2(), 3, 2, f2_unit_ball());
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  EXPECT_EQ(matrix_from_json(matrix_to_json(muller_myhill_ca())), muller_myhill_ca());
  MatrixCA f = matrix_from_json(load_json_file(data("matrix.one_plus_u.json")));
  EXPECT_TRUE(extensionally_equal(to_cellular_automaton(f), wolfram_rule(102)));
}

TEST(Json, DigestsAreStable) {
  EXPECT_EQ(digest_of(rule_to_json(wolfram_rule(232))), digest_of(rule_to_json(majority_ca())));
  EXPECT_NE(digest_of(rule_to_json(wolfram_rule(232))), digest_of(rule_to_json(wolfram_rule(233))));
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
}
