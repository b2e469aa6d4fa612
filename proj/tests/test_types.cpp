// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "solab/error.hpp"
#include "solab/formula.hpp"
#include "solab/structure.hpp"
#include "solab/types.hpp"
#include "solab/workbench.hpp"

using namespace solab;

namespace {

TypeContext unary(std::vector<std::string> texts) {
  std::vector<Formula> f;
  for (const auto& t : texts) f.push_back(parse_formula(t));
  return TypeContext({1}, f);
}

std::vector<FiniteStructure> bare(int lo, int hi) {
  std::vector<FiniteStructure> out;
  for (int n = lo; n <= hi; ++n) out.emplace_back(Signature{}, n);
  return out;
}

std::vector<TwoType> types_of(const FiniteStructure& a, const TypeContext& ctx) {
  std::vector<TwoType> out;
  for (const auto& r : realized_types(a, ctx)) out.push_back(r.type);
  return out;
}

const char* const kTwoDistinct = "EX x EX y (x != y & X0(x) & X0(y))";

}  // namespace

TEST_CASE("type contexts") {
  CHECK(TypeContext::variable(0) == "X0");
  CHECK_THROWS_AS(TypeContext({0}, {parse_formula("EX x X0(x)")}), InputError);
  // Other relation names must come from the structure.
  CHECK_THROWS_AS(realized_types(FiniteStructure(Signature{}, 1), TypeContext({1}, {parse_formula("EX x X1(x)")})),
                  EvalError);
  CHECK_THROWS(TypeContext({1}, {parse_formula("X0(x)")}));
}

TEST_CASE("realized types: frozen values") {
  const auto ctx = unary({"EX x X0(x)"});
  const auto r = realized_types(FiniteStructure(Signature{}, 1), ctx);
  REQUIRE(r.size() == 2);
  CHECK(r[0].type.to_string() == "0");
  CHECK(r[0].witness[0].empty());
  CHECK(r[1].type.to_string() == "1");
  CHECK(r[1].witness[0].tuples() == std::vector<Tuple>{{0}});
}

TEST_CASE("realized types see the structure") {
  FiniteStructure a(Signature{{"p", 1}}, 2);
  a.add_tuple("p", {1});
  const auto ctx = unary({"ALL x (X0(x) -> p(x))", "EX x X0(x)"});
  const auto t = types_of(a, ctx);
  // X0 inside p: {} or {1}; X0 escaping p: {0} or {0,1}.
  CHECK(t.size() == 3);
  CHECK(std::count_if(t.begin(), t.end(), [](const TwoType& x) { return x.to_string() == "11"; }) == 1);
  CHECK(std::count_if(t.begin(), t.end(), [](const TwoType& x) { return x.to_string() == "10"; }) == 1);
  CHECK(std::count_if(t.begin(), t.end(), [](const TwoType& x) { return x.to_string() == "01"; }) == 1);
}

TEST_CASE("realization budget") {
  const TypeContext ctx({2}, {parse_formula("EX x X0(x,x)")});
  CHECK_THROWS_AS(realized_types(FiniteStructure(Signature{}, 5), ctx, 1000), BudgetExceeded);
}

TEST_CASE("omits") {
  const auto ctx = unary({kTwoDistinct});
  const FiniteStructure one(Signature{}, 1), two(Signature{}, 2);
  const TwoType both{{true}};
  CHECK(omits(one, both, ctx));
  CHECK_FALSE(omits(two, both, ctx));
  for (const auto& p : types_of(two, ctx)) CHECK_FALSE(omits(two, p, ctx));
}

TEST_CASE("omitted_by_all") {
  const auto ctx = unary({kTwoDistinct});
  const auto pool = bare(1, 3);
  CHECK(omitted_by_all(pool, pool, ctx).empty());
  const auto o = omitted_by_all(bare(1, 1), pool, ctx);
  REQUIRE(o.size() == 1);
  CHECK(o[0].to_string() == "1");
}

TEST_CASE("omission axiomatization") {
  const auto ctx = unary({kTwoDistinct});
  const auto pool = bare(1, 3);
  const auto k = bare(1, 1);
  const auto pi = omitted_by_all(k, pool, ctx);
  CHECK(check_omission_axiomatization(k, pi, pool, ctx).pass());

  // A banned type that K realizes.
  const auto bad = check_omission_axiomatization(k, {TwoType{{false}}}, pool, ctx);
  REQUIRE(bad.realized_in_k.size() == 1);
  CHECK(bad.realized_in_k[0].second == 0);
  CHECK_FALSE(bad.pass());

  // No banned types: every pool member outside K goes unaccounted for.
  const auto none = check_omission_axiomatization(k, {}, pool, ctx);
  CHECK(none.unrealizing == std::vector<std::size_t>{1, 2});
}

TEST_CASE("property A") {
  const auto ctx = unary({kTwoDistinct});
  const auto pool = bare(1, 3);
  CHECK(property_A_check(pool, pool, ctx).pass());

  // Closed formulas ignore X0; a size-1 structure has vector (0), larger ones (1).
  const TypeContext card({1}, {builtin("at_least:2").formula});
  CHECK(property_A_check(bare(2, 3), pool, card).pass());
  // Size 2 and size 3 realize the same vectors, so K = {size 2} misses size 3.
  const auto r = property_A_check(bare(2, 2), pool, card);
  CHECK(r.counterexamples == std::vector<std::size_t>{2});

  // Membership is up to isomorphism: a relabeled copy of a member is not a counterexample.
  const Signature sig{{"p", 1}};
  FiniteStructure a(sig, 2), b(sig, 2), c(sig, 2);
  a.add_tuple("p", {0});
  b.add_tuple("p", {1});
  const auto ctx_p = unary({"ALL x (X0(x) -> p(x))"});
  CHECK(member_up_to_iso(b, {a}));
  CHECK_FALSE(member_up_to_iso(c, {a}));
  CHECK(property_A_check({a}, {a, b}, ctx_p).pass());
  // c has no marked element but still realizes both vectors, so it is a counterexample.
  CHECK(property_A_check({a}, {a, b, c}, ctx_p).counterexamples == std::vector<std::size_t>{2});
}

TEST_CASE("property A implies the omission axiomatization on random classes") {
  Rng rng(31);
  const Signature sig{{"p", 1}, {"edge", 2}};
  std::vector<FiniteStructure> pool;
  for (int n = 1; n <= 2; ++n) {
    const auto reps = isomorphism_representatives(all_structures(sig, n));
    pool.insert(pool.end(), reps.begin(), reps.end());
  }
  const TypeContext ctx({1}, {parse_formula("EX x (X0(x) & p(x))"), parse_formula("ALL x (X0(x) -> EX y edge(x,y))"),
                              parse_formula("EX x EX y (X0(x) & X0(y) & x != y)")});
  int passed = 0;
  for (int t = 0; t < 20; ++t) {
    std::vector<FiniteStructure> k;
    for (const auto& a : pool)
      if (rng.chance(1, 3)) k.push_back(a);
    if (k.empty()) k.push_back(pool.front());
    const auto a = property_A_check(k, pool, ctx);
    const auto o = check_omission_axiomatization(k, omitted_by_all(k, pool, ctx), pool, ctx);
    CHECK(o.realized_in_k.empty());
    if (a.pass()) {
      ++passed;
      CHECK(o.pass());
    } else {
      CHECK(o.unrealizing == a.counterexamples);
    }
  }
  CHECK(passed < 20);
}
