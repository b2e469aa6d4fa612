// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "solab/error.hpp"
#include "solab/formula.hpp"
#include "solab/signature.hpp"
#include "solab/structure.hpp"
#include "solab/workbench.hpp"

using namespace solab;

TEST_CASE("parse: FO quantifiers nest over the atom") {
  const Formula f = parse_formula("EX x EX y edge(x,y)");
  REQUIRE(f.kind() == FormulaKind::ExistsFO);
  CHECK(f.name() == "x");
  REQUIRE(f.sub().kind() == FormulaKind::ExistsFO);
  CHECK(f.sub().name() == "y");
  const Formula& a = f.sub().sub();
  CHECK(a.kind() == FormulaKind::Atom);
  CHECK(a.name() == "edge");
  CHECK(a.args() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("parse: relation binder carries its arity") {
  const Formula f = parse_formula("EX2 R:2 (ALL x EX y R(x,y))");
  REQUIRE(f.kind() == FormulaKind::ExistsSO);
  CHECK(f.name() == "R");
  CHECK(f.arity() == 2);
  CHECK(f.sub().kind() == FormulaKind::ForallFO);
}

TEST_CASE("parse: unbalanced parenthesis is a syntax error with a position") {
  CHECK_THROWS_AS(parse_formula("EX x R(x,x"), SyntaxError);
  try {
    parse_formula("EX x R(x,x");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 11);
  }
}

TEST_CASE("parse: precedence and associativity") {
  // & binds tighter than |, | tighter than ->, -> tighter than <->.
  const Formula f = parse_formula("p(x) | q(x) & r(x)");
  REQUIRE(f.kind() == FormulaKind::Or);
  CHECK(f.rhs().kind() == FormulaKind::And);
  const Formula g = parse_formula("p(x) -> q(x) <-> r(x)");
  REQUIRE(g.kind() == FormulaKind::Iff);
  CHECK(g.lhs().kind() == FormulaKind::Implies);
  const Formula h = parse_formula("x != y");
  REQUIRE(h.kind() == FormulaKind::Not);
  CHECK(h.sub().kind() == FormulaKind::Eq);
}

TEST_CASE("print/parse round trip") {
  for (const char* text : {"EX x EX y edge(x,y)", "EX2 R:2 ALL x EX y R(x,y)", "ALL x (p(x) -> q(x) | r(x))",
                           "~(x = y) <-> EX z (edge(x,z) & edge(z,y))", "ALL2 S:3 EX x S(x,x,x)"}) {
    const Formula f = parse_formula(text);
    CHECK(parse_formula(f.to_string()) == f);
  }
  for (const char* key : {"infinite", "at_least:3", "hamiltonian", "colorable:2"}) {
    const Formula f = builtin(key).formula;
    CHECK(parse_formula(f.to_string()) == f);
  }
}

TEST_CASE("classify: frozen labels") {
  CHECK(classify(builtin("infinite").formula) == HierarchyLabel::sigma(1));
  const Formula psi = builtin("infinite").formula;
  const Formula not_psi = Formula::forall_so(psi.name(), psi.arity(), Formula::negation(psi.sub()));
  CHECK(classify(not_psi) == HierarchyLabel::pi(1));
  CHECK(classify(dualize_so_prefix(psi)) == HierarchyLabel::pi(1));
  CHECK(classify(parse_formula("ALL2 R:1 EX2 S:1 (EX x (R(x) & S(x)))")) == HierarchyLabel::pi(2));
  CHECK(classify(parse_formula("ALL x EX y edge(x,y)")) == HierarchyLabel::delta0());
  CHECK(classify(parse_formula("EX2 R:2 ALL x EX y R(x,y)")).to_string() == "Sigma(1)");
  CHECK(classify(parse_formula("(EX2 R:1 EX x R(x)) & p(y)")) == HierarchyLabel::non_prenex());
  CHECK(classify(parse_formula("ALL x EX2 R:1 R(x)")) == HierarchyLabel::non_prenex());
}

TEST_CASE("prenex: existential relation moves to the front") {
  const Formula p = prenex_so(parse_formula("EX x EX2 R:1 R(x)"));
  CHECK(p == parse_formula("EX2 R:1 EX x R(x)"));
}

TEST_CASE("prenex: prenex input is a fixed point") {
  for (const char* text : {"EX2 R:2 ALL x EX y R(x,y)", "ALL x edge(x,x)", "ALL2 R:1 EX2 S:1 EX x (R(x) & S(x))"}) {
    const Formula f = parse_formula(text);
    CHECK(prenex_so(f) == f);
  }
}

namespace {

// Every structure of size <= 2 over a unary signature, as the equivalence oracle.
void check_equivalent(const Formula& a, const Formula& b, const Signature& sig, int nmax) {
  for (int n = 1; n <= nmax; ++n)
    for (const auto& s : all_structures(sig, n))
      CHECK_MESSAGE(eval_so_full(s, a) == eval_so_full(s, b), a.to_string(), " vs ", b.to_string());
}

}  // namespace

TEST_CASE("prenex: FO over SO raises the arity") {
  const Formula f = parse_formula("ALL x EX2 R:1 (R(x))");
  const Formula p = prenex_so(f);
  CHECK(classify(p) == HierarchyLabel::sigma(1));
  REQUIRE(p.kind() == FormulaKind::ExistsSO);
  CHECK(p.arity() == 2);
  check_equivalent(f, p, Signature{{"p", 1}}, 2);
}

TEST_CASE("prenex: equivalence on mixed formulas") {
  const Signature sig{{"p", 1}};
  for (const char* text : {"ALL x EX2 R:1 (R(x) <-> p(x))", "(EX2 R:1 EX x R(x)) & ~(ALL2 S:1 ALL x S(x))",
                           "EX y ALL x (p(x) | EX2 S:1 (S(y) & ~S(x)))",
                           "~(EX2 R:1 ALL x (R(x) -> p(x))) | ALL x p(x)"}) {
    const Formula f = parse_formula(text);
    const Formula p = prenex_so(f);
    CHECK(classify(p).is_prenex());
    check_equivalent(f, p, sig, 2);
  }
}

TEST_CASE("universal closure") {
  const Formula closed = parse_formula("ALL x edge(x,x)");
  CHECK(universal_closure(closed) == closed);
  CHECK(universal_closure(parse_formula("edge(x,y)")) == parse_formula("ALL x ALL y edge(x,y)"));
}

TEST_CASE("validate") {
  const Signature g = graph_signature();
  const auto r = validate(parse_formula("edge(x,y)"), g);
  CHECK(r.free_variables == std::vector<std::string>{"x", "y"});
  try {
    validate(parse_formula("edge(x)"), g);
    FAIL("expected an arity mismatch");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == ValidationError::Kind::ArityMismatch);
  }
  const auto s = validate(parse_formula("EX2 edge:1 edge(x)"), g);
  CHECK(s.shadowed == std::vector<std::string>{"edge"});
  try {
    validate(parse_formula("EX x colour(x)"), g);
    FAIL("expected an unknown symbol");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == ValidationError::Kind::UnknownSymbol);
  }
  ValidateOptions closed;
  closed.allow_free_variables = false;
  CHECK_THROWS_AS(validate(parse_formula("edge(x,y)"), g, closed), ValidationError);
}

TEST_CASE("formula measures") {
  const Formula f = parse_formula("EX2 R:2 ALL x ((EX y R(x,y)) & EX2 S:3 S(x,x,z))");
  CHECK(max_so_arity(f) == 3);
  CHECK(quantifier_depth(f) == 3);
  // A quantifier in operand position scopes as far right as possible.
  CHECK(quantifier_depth(parse_formula("EX y p(y) & EX z p(z)")) == 2);
  CHECK(has_so_quantifier(f));
  CHECK(free_fo_vars(f) == std::vector<std::string>{"z"});
  CHECK_FALSE(has_so_quantifier(parse_formula("ALL x edge(x,x)")));
}
