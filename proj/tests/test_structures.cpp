// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "../src/eval/sat.hpp"
#include "solab/error.hpp"
#include "solab/formula.hpp"
#include "solab/structure.hpp"
#include "solab/workbench.hpp"

using namespace solab;

namespace {

FiniteStructure two_element_edge() {
  FiniteStructure a(graph_signature(), 2);
  a.add_tuple("edge", {0, 1});
  return a;
}

FiniteStructure relabel_cycle(int n, int shift) {
  std::vector<Element> map(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) map[static_cast<std::size_t>(i)] = (i + shift) % n;
  return permute(cycle_graph(n), map);
}

}  // namespace

TEST_CASE("relation encoding") {
  Relation r(2, 3);
  CHECK(r.capacity() == 9);
  r.insert(std::vector<Element>{2, 1});
  CHECK(r.contains(std::vector<Element>{2, 1}));
  CHECK_FALSE(r.contains(std::vector<Element>{1, 2}));
  CHECK(r.decode(r.encode(std::vector<Element>{2, 1})) == Tuple{2, 1});
  CHECK(r.count() == 1);
  CHECK(Relation::full(2, 3).count() == 9);
  CHECK(Relation::from_tuples(1, 3, {{0}, {2}}).tuples() == std::vector<Tuple>{{0}, {2}});
}

TEST_CASE("eval_fo: frozen values") {
  const auto a = two_element_edge();
  CHECK(eval_fo(a, parse_formula("EX x EX y edge(x,y)")));
  CHECK_FALSE(eval_fo(a, parse_formula("ALL x edge(x,x)")));
  const FiniteStructure one(Signature{}, 1);
  CHECK_FALSE(eval_fo(one, builtin("at_least:2").formula));
  CHECK(eval_fo(one, builtin("at_least:1").formula));
}

TEST_CASE("eval_fo: assignments and errors") {
  const auto a = two_element_edge();
  Assignment asg;
  asg.elements = {{"x", 0}, {"y", 1}};
  CHECK(eval_fo(a, parse_formula("edge(x,y)"), asg));
  asg.elements = {{"x", 1}, {"y", 0}};
  CHECK_FALSE(eval_fo(a, parse_formula("edge(x,y)"), asg));
  CHECK_THROWS_AS(eval_fo(a, parse_formula("edge(x,y)")), EvalError);
  CHECK_THROWS_AS(eval_fo(a, parse_formula("EX x colour(x)")), EvalError);
  CHECK_THROWS_AS(eval_fo(a, parse_formula("EX2 R:1 EX x R(x)")), EvalError);
  Assignment bad;
  bad.elements = {{"x", 5}};
  CHECK_THROWS(eval_fo(a, parse_formula("edge(x,x)"), bad));
}

TEST_CASE("eval_so_full: frozen values") {
  const Formula psi = builtin("infinite").formula;
  for (int n = 1; n <= 6; ++n) CHECK_FALSE(eval_so_full(FiniteStructure(Signature{}, n), psi));
  const Formula ham = builtin("hamiltonian").formula;
  CHECK(eval_so_full(cycle_graph(4), ham));
  CHECK_FALSE(eval_so_full(double_cycle(3), ham));
  CHECK(eval_so_full(cycle_graph(6), ham));
  // Free relation variables come from the assignment.
  Assignment asg;
  asg.relations.emplace("X", Relation::from_tuples(1, 2, {{1}}));
  CHECK(eval_so_full(two_element_edge(), parse_formula("EX x (X(x) & EX y edge(y,x))"), {}, asg));
}

TEST_CASE("eval_so_full: budget") {
  EvalOptions tight;
  tight.relation_budget = 1000;
  tight.use_solver = false;
  CHECK_THROWS_AS(eval_so_full(cycle_graph(4), parse_formula("EX2 R:3 ALL x R(x,x,x)"), tight), BudgetExceeded);
}

TEST_CASE("miniscoped evaluation of long quantifier blocks stays fast") {
  // 30 nested existentials on four elements: pruning settles this immediately.
  CHECK_FALSE(eval_fo(cycle_graph(4), builtin("at_least:30").formula));
  CHECK(eval_fo(cycle_graph(7), builtin("at_least:7").formula));
  CHECK_FALSE(eval_fo(cycle_graph(7), builtin("at_least:8").formula));
}

TEST_CASE("solver path agrees with enumeration") {
  Rng rng(7);
  FormulaShape shape;
  shape.signature = Signature{{"p", 1}, {"edge", 2}};
  EvalOptions solver, plain;
  plain.use_solver = false;
  int compared = 0, with_so = 0;
  for (int t = 0; t < 150; ++t) {
    const Formula f = random_sentence(rng, shape);
    with_so += has_so_quantifier(f);
    const auto a = random_structure(rng, shape.signature, rng.range(1, 3));
    bool x = false, y = false;
    try {
      x = eval_so_full(a, f, solver);
      y = eval_so_full(a, f, plain);
    } catch (const BudgetExceeded&) {
      continue;
    }
    CHECK_MESSAGE(x == y, f.to_string());
    ++compared;
  }
  CHECK(compared >= 140);
  CHECK(with_so >= 50);
  const Formula ham = builtin("hamiltonian").formula;
  // Plain enumeration of both binary relations is 2^18 candidates on C3.
  CHECK(eval_so_full(cycle_graph(3), ham, solver));
  CHECK(eval_so_full(cycle_graph(3), ham, plain));
}

TEST_CASE("isomorphism invariance of evaluation") {
  Rng rng(11);
  FormulaShape shape;
  shape.signature = Signature{{"p", 1}, {"edge", 2}};
  for (int t = 0; t < 60; ++t) {
    const Formula f = random_sentence(rng, shape);
    const int n = rng.range(1, 3);
    const auto a = random_structure(rng, shape.signature, n);
    std::vector<Element> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    const auto b = permute(a, perm);
    CHECK(find_isomorphism(a, b).has_value());
    CHECK_MESSAGE(eval_so_full(a, f) == eval_so_full(b, f), f.to_string());
  }
}

TEST_CASE("find_isomorphism") {
  const auto c4 = cycle_graph(4);
  const auto rotated = relabel_cycle(4, 1);
  const auto map = find_isomorphism(c4, rotated);
  REQUIRE(map.has_value());
  CHECK(permute(c4, *map) == rotated);
  CHECK_FALSE(find_isomorphism(cycle_graph(6), double_cycle(3)).has_value());
  CHECK_FALSE(find_isomorphism(cycle_graph(3), cycle_graph(4)).has_value());
  CHECK(find_isomorphism(c4, c4) == std::vector<Element>{0, 1, 2, 3});
}

TEST_CASE("all_structures and isomorphism representatives") {
  // 2^4 labeled digraphs on 2 vertices (loops allowed) fall into 10 classes.
  const auto all = all_structures(graph_signature(), 2);
  CHECK(all.size() == 16);
  CHECK(isomorphism_representatives(all).size() == 10);
  // 3 vertices: 2^9 = 512 labeled digraphs with loops, 104 up to isomorphism.
  const auto all3 = all_structures(graph_signature(), 3);
  CHECK(all3.size() == 512);
  CHECK(isomorphism_representatives(all3).size() == 104);
  CHECK(all_structures(Signature{{"p", 1}}, 3).size() == 8);
}

TEST_CASE("models_up_to") {
  const auto m = models_up_to(builtin("at_least:3").formula, Signature{}, 4);
  REQUIRE(m.size() == 2);
  CHECK(m[0].universe() == 3);
  CHECK(m[1].universe() == 4);

  const Formula refl = parse_formula("ALL x edge(x,x)");
  const auto r = models_up_to(refl, graph_signature(), 2);
  // One class of size 1; on two elements the off-diagonal pair gives 0, 1 or 2 edges.
  CHECK(r.size() == 4);
  for (const auto& a : r) {
    CHECK(eval_fo(a, refl));
    for (int i = 0; i < a.universe(); ++i) CHECK(a.relation("edge").contains(std::vector<Element>{i, i}));
  }
  CHECK(models_up_to(parse_formula("EX x x != x"), graph_signature(), 3).empty());
}

// SAT solver against a truth-table oracle.

namespace {

bool brute_force(int vars, const std::vector<std::vector<int>>& cnf) {
  for (std::uint32_t m = 0; m < (1u << vars); ++m) {
    bool all = true;
    for (const auto& c : cnf) {
      bool any = false;
      for (int l : c) {
        const bool v = (m >> (std::abs(l) - 1)) & 1u;
        if ((l > 0) == v) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("sat solver matches brute force on random 3-CNF") {
  Rng rng(2026);
  int sat_count = 0;
  for (int t = 0; t < 400; ++t) {
    const int vars = rng.range(3, 12);
    const int clauses = rng.range(1, 6 * vars);
    std::vector<std::vector<int>> cnf;
    sat::Solver s;
    for (int v = 0; v < vars; ++v) s.new_var();
    for (int c = 0; c < clauses; ++c) {
      std::vector<int> clause;
      const int width = rng.range(1, 3);
      for (int k = 0; k < width; ++k) {
        const int v = rng.range(1, vars);
        clause.push_back(rng.chance(1, 2) ? v : -v);
      }
      cnf.push_back(clause);
      s.add_clause(clause);
    }
    const bool expected = brute_force(vars, cnf);
    const bool got = s.solve();
    CHECK(got == expected);
    if (got) {
      ++sat_count;
      for (const auto& c : cnf)
        CHECK(std::any_of(c.begin(), c.end(), [&](int l) { return s.value(std::abs(l)) == (l > 0); }));
    }
  }
  CHECK(sat_count > 0);
  CHECK(sat_count < 400);
}

TEST_CASE("sat solver: pigeonhole 5 into 4 is unsatisfiable") {
  sat::Solver s;
  auto var = [](int p, int h) { return p * 4 + h + 1; };
  for (int i = 0; i < 20; ++i) s.new_var();
  for (int p = 0; p < 5; ++p) s.add_clause({var(p, 0), var(p, 1), var(p, 2), var(p, 3)});
  for (int h = 0; h < 4; ++h)
    for (int p = 0; p < 5; ++p)
      for (int q = p + 1; q < 5; ++q) s.add_clause({-var(p, h), -var(q, h)});
  CHECK_FALSE(s.solve());
}
