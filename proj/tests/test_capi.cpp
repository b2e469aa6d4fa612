// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "solab/solab.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  solab_string_free(s);
  return out;
}

const char* kC4 =
    R"({"universe": 4, "signature": {"edge": 2},
        "relations": {"edge": [[0,1],[1,0],[1,2],[2,1],[2,3],[3,2],[3,0],[0,3]]}})";

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(solab_version()).size() > 0);
  solab_formula* f = nullptr;
  CHECK(solab_formula_parse("EX x R(x,x", &f) == SOLAB_ERR_INPUT);
  CHECK(f == nullptr);
  CHECK(std::string(solab_last_error()).find("expected ')'") != std::string::npos);
  CHECK(solab_formula_parse(nullptr, &f) == SOLAB_ERR_INPUT);
  CHECK(solab_formula_builtin("nonesuch", &f) == SOLAB_ERR_INPUT);
  // Null handles are tolerated by the release functions.
  solab_formula_free(nullptr);
  solab_structure_free(nullptr);
  solab_family_free(nullptr);
  solab_config_free(nullptr);
  solab_string_free(nullptr);
}

TEST_CASE("formulas") {
  solab_formula* f = nullptr;
  REQUIRE(solab_formula_parse("EX2 R:2 ALL x EX y R(x,y)", &f) == SOLAB_OK);
  char* label = nullptr;
  REQUIRE(solab_formula_classify(f, &label) == SOLAB_OK);
  CHECK(take(label) == "Sigma(1)");
  char* text = nullptr;
  REQUIRE(solab_formula_to_string(f, &text) == SOLAB_OK);
  CHECK(take(text) == "EX2 R:2 ALL x EX y R(x,y)");
  solab_formula_free(f);

  solab_formula* g = nullptr;
  REQUIRE(solab_formula_parse("EX x EX2 R:1 R(x)", &g) == SOLAB_OK);
  solab_formula* p = nullptr;
  REQUIRE(solab_formula_prenex(g, &p) == SOLAB_OK);
  REQUIRE(solab_formula_to_string(p, &text) == SOLAB_OK);
  CHECK(take(text) == "EX2 R:1 EX x R(x)");
  solab_formula_free(g);
  solab_formula_free(p);
}

TEST_CASE("evaluation") {
  solab_structure* c4 = nullptr;
  REQUIRE(solab_structure_from_json(kC4, &c4) == SOLAB_OK);
  solab_formula* ham = nullptr;
  REQUIRE(solab_formula_builtin("hamiltonian", &ham) == SOLAB_OK);
  solab_config* c = nullptr;
  REQUIRE(solab_config_new(&c) == SOLAB_OK);
  int truth = -1;
  REQUIRE(solab_eval(c4, ham, c, SOLAB_SEMANTICS_FULL, &truth) == SOLAB_OK);
  CHECK(truth == 1);
  CHECK(solab_eval(c4, ham, c, SOLAB_SEMANTICS_FO, &truth) == SOLAB_ERR_EVAL);

  solab_structure* d3 = nullptr;
  REQUIRE(solab_structure_double_cycle(3, &d3) == SOLAB_OK);
  REQUIRE(solab_eval(d3, ham, c, SOLAB_SEMANTICS_FULL, &truth) == SOLAB_OK);
  CHECK(truth == 0);

  solab_formula* big = nullptr;
  REQUIRE(solab_formula_parse("EX2 R:3 ALL x R(x,x,x)", &big) == SOLAB_OK);
  REQUIRE(solab_config_set_use_solver(c, 0) == SOLAB_OK);
  REQUIRE(solab_config_set_relation_budget(c, 1000) == SOLAB_OK);
  CHECK(solab_eval(c4, big, c, SOLAB_SEMANTICS_FULL, &truth) == SOLAB_ERR_BUDGET);
  CHECK(std::string(solab_last_error()).find("budget") != std::string::npos);

  solab_formula* unknown = nullptr;
  REQUIRE(solab_formula_parse("EX x colour(x)", &unknown) == SOLAB_OK);
  CHECK(solab_eval(c4, unknown, c, SOLAB_SEMANTICS_FULL, &truth) == SOLAB_ERR_EVAL);

  char* json = nullptr;
  REQUIRE(solab_structure_to_json(c4, &json) == SOLAB_OK);
  CHECK(take(json).find("\"universe\":4") != std::string::npos);

  CHECK(solab_structure_from_json("{\"universe\": 0}", &d3) == SOLAB_ERR_INPUT);
  CHECK(solab_structure_cycle(2, &d3) == SOLAB_ERR_INPUT);

  solab_formula_free(unknown);
  solab_formula_free(big);
  solab_formula_free(ham);
  solab_structure_free(d3);
  solab_structure_free(c4);
  solab_config_free(c);
}

TEST_CASE("fragments and type contexts") {
  const char* dup = R"j(["EX x x = x", "EX x x = x"])j";
  const char* open = R"j(["edge(x,y)"])j";
  const char* good = R"j(["EX x x = x"])j";
  const char* ctx = R"j({"arities": [1], "fragment": ["EX x X0(x)"]})j";
  const char* one_json = R"j({"universe": 1})j";
  solab_fragment* g = nullptr;
  CHECK(solab_fragment_from_json(dup, &g) == SOLAB_ERR_INPUT);
  CHECK(solab_fragment_from_json(open, &g) == SOLAB_ERR_INPUT);
  REQUIRE(solab_fragment_from_json(good, &g) == SOLAB_OK);
  solab_fragment_free(g);

  solab_type_context* t = nullptr;
  REQUIRE(solab_type_context_from_json(ctx, &t) == SOLAB_OK);
  solab_structure* one = nullptr;
  REQUIRE(solab_structure_from_json(one_json, &one) == SOLAB_OK);
  solab_config* c = nullptr;
  REQUIRE(solab_config_new(&c) == SOLAB_OK);
  REQUIRE(solab_config_set_format(c, SOLAB_FORMAT_JSON) == SOLAB_OK);
  char* out = nullptr;
  REQUIRE(solab_types(one, t, c, &out) == SOLAB_OK);
  const auto text = take(out);
  CHECK(text.find("\"0\"") != std::string::npos);
  CHECK(text.find("\"1\"") != std::string::npos);
  solab_structure_free(one);
  solab_type_context_free(t);
  solab_config_free(c);
}

TEST_CASE("demo reports are byte-identical across runs") {
  solab_config* c = nullptr;
  REQUIRE(solab_config_new(&c) == SOLAB_OK);
  REQUIRE(solab_config_set_format(c, SOLAB_FORMAT_JSON) == SOLAB_OK);
  REQUIRE(solab_config_set_trials(c, 20) == SOLAB_OK);
  int pass = 0;
  char *a = nullptr, *b = nullptr;
  REQUIRE(solab_demo("los_suite", c, &pass, &a) == SOLAB_OK);
  CHECK(pass == 1);
  REQUIRE(solab_demo("los_suite", c, &pass, &b) == SOLAB_OK);
  CHECK(take(a) == take(b));
  CHECK(solab_demo("nonesuch", c, &pass, &a) == SOLAB_ERR_INPUT);
  CHECK(solab_check("nonesuch", nullptr, nullptr, nullptr, c, &pass, &a) == SOLAB_ERR_INPUT);
  solab_config_free(c);
}
