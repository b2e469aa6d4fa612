// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "solab/error.hpp"
#include "solab/formula.hpp"
#include "solab/formula_space.hpp"
#include "solab/structure.hpp"
#include "solab/workbench.hpp"

using namespace solab;

namespace {

Formula phi(int n) { return builtin("at_least:" + std::to_string(n)).formula; }

std::vector<FiniteStructure> sizes(int lo, int hi) {
  std::vector<FiniteStructure> out;
  for (int n = lo; n <= hi; ++n) out.emplace_back(Signature{}, n);
  return out;
}

TheoryVector random_vector(Rng& rng, std::size_t n) {
  std::vector<bool> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = rng.chance(1, 2);
  return TheoryVector(bits);
}

}  // namespace

TEST_CASE("fragments") {
  Fragment g({phi(2), phi(3)});
  CHECK(g.size() == 2);
  CHECK_FALSE(g.add(phi(2)));
  CHECK(g.add(phi(4)));
  CHECK(g.size() == 3);
  try {
    g.add(parse_formula("edge(x,x)"));
    FAIL("open formula accepted");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == ValidationError::Kind::NotClosed);
  }
  try {
    Fragment dup({phi(2), phi(2)});
    FAIL("duplicate accepted");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == ValidationError::Kind::Duplicate);
  }
  CHECK(Fragment::parse({"EX x x = x", "ALL x x = x"}).size() == 2);
}

TEST_CASE("theory vectors") {
  const Fragment g({phi(2), phi(3)});
  CHECK(theory_vector(FiniteStructure(Signature{}, 2), g).to_string() == "10");
  CHECK(theory_vector(FiniteStructure(Signature{}, 3), g).to_string() == "11");
  const Fragment psi({builtin("infinite").formula});
  for (int n = 1; n <= 4; ++n) CHECK(theory_vector(FiniteStructure(Signature{}, n), psi).to_string() == "0");
  CHECK(TheoryVector::from_string("0110").to_string() == "0110");
  CHECK_THROWS_AS(TheoryVector::from_string("01a"), InputError);
}

TEST_CASE("ultrametric: frozen values") {
  const auto x = TheoryVector::from_string("10110");
  CHECK(ultrametric(x, x).is_zero());
  CHECK(ultrametric(x, x).to_string() == "0");
  CHECK(ultrametric(x, TheoryVector::from_string("10100")).to_string() == "1/8");
  CHECK(ultrametric(x, TheoryVector::from_string("00110")).to_string() == "1");
  CHECK(ultrametric(x, TheoryVector::from_string("11110")).to_string() == "1/2");
  CHECK(ultrametric(x, TheoryVector::from_string("10100")).value() == doctest::Approx(0.125));
  CHECK(Distance::zero() < Distance::pow2_neg(5));
  CHECK(Distance::pow2_neg(5) < Distance::pow2_neg(1));
  CHECK(Distance::pow2_neg(1) < Distance::pow2_neg(0));
}

TEST_CASE("ultrametric axioms on random vectors") {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.range(1, 8));
    const auto x = random_vector(rng, n), y = random_vector(rng, n), z = random_vector(rng, n);
    CHECK(ultrametric(x, y) == ultrametric(y, x));
    CHECK(ultrametric(x, y).is_zero() == (x == y));
    CHECK(ultrametric(x, z) <= std::max(ultrametric(x, y), ultrametric(y, z)));
  }
}

TEST_CASE("set distance") {
  const Fragment g({phi(2), phi(3), phi(4)});
  const auto s = vector_set(sizes(1, 1), g);
  CHECK(set_distance(s, s).is_zero());
  VectorSet a, b;
  a.vectors = {TheoryVector::from_string("011")};
  b.vectors = {TheoryVector::from_string("111")};
  CHECK(set_distance(a, b).to_string() == "1");

  // Small sizes give 000 and 100, large sizes 110 and 111: they first differ at index 1.
  const auto small = vector_set(sizes(1, 2), g);
  const auto large = vector_set(sizes(3, 4), g);
  CHECK(small.vectors.size() == 2);
  CHECK(large.vectors.size() == 2);
  CHECK(set_distance(small, large).to_string() == "1/2");
  CHECK_FALSE(intersects(small, large));
  CHECK_THROWS_AS(set_distance(VectorSet{}, small), InputError);
}

TEST_CASE("vector sets record witnesses") {
  const Fragment g({phi(2)});
  const auto v = vector_set(sizes(1, 4), g);
  REQUIRE(v.vectors.size() == 2);
  CHECK(v.contains(TheoryVector::from_string("0")));
  CHECK(v.contains(TheoryVector::from_string("1")));
  std::size_t total = 0;
  for (const auto& w : v.witnesses) total += w.size();
  CHECK(total == 4);
}

TEST_CASE("separating formulas: frozen cases") {
  const Fragment g({phi(2), phi(3)});
  const auto k = sizes(3, 3), l = sizes(2, 2);
  const auto sep = find_separating_formula(k, l, g);
  REQUIRE(sep.has_value());
  for (const auto& a : k) CHECK(eval_so_full(a, *sep));
  for (const auto& a : l) CHECK_FALSE(eval_so_full(a, *sep));
  CHECK_FALSE(find_separating_formula(k, k, g).has_value());

  const Formula ham = builtin("hamiltonian").formula;
  const auto h = find_separating_formula({cycle_graph(4)}, {double_cycle(3)}, Fragment({ham}));
  REQUIRE(h.has_value());
  CHECK(*h == ham);
}

TEST_CASE("separation exactly when vector sets are disjoint") {
  Rng rng(13);
  const Signature sig{{"p", 1}, {"edge", 2}};
  const Fragment base = Fragment::parse({"EX x p(x)", "ALL x EX y edge(x,y)", "EX x edge(x,x)"});
  const Fragment closed = boolean_closure(base, 1);
  int separated = 0;
  for (int t = 0; t < 60; ++t) {
    std::vector<FiniteStructure> k, l;
    for (int i = rng.range(1, 3); i > 0; --i) k.push_back(random_structure(rng, sig, rng.range(1, 3)));
    for (int i = rng.range(1, 3); i > 0; --i) l.push_back(random_structure(rng, sig, rng.range(1, 3)));
    const auto vk = vector_set(k, closed), vl = vector_set(l, closed);
    const auto sep = find_separating_formula(k, l, closed);
    CHECK(sep.has_value() == !intersects(vk, vl));
    CHECK(sep.has_value() == !set_distance(vk, vl).is_zero());
    if (sep) {
      ++separated;
      for (const auto& a : k) CHECK(eval_so_full(a, *sep));
      for (const auto& a : l) CHECK_FALSE(eval_so_full(a, *sep));
    }
  }
  CHECK(separated > 0);
  CHECK(separated < 60);
}

TEST_CASE("boolean closure") {
  const Fragment g({phi(2)});
  const auto same = boolean_closure(g, 0);
  CHECK(same.formulas() == g.formulas());
  const auto one = boolean_closure(g, 1);
  REQUIRE(one.size() == 4);
  CHECK(one[0] == phi(2));
  CHECK(one[1] == Formula::negation(phi(2)));
  CHECK(one[2] == Formula::conj(phi(2), phi(2)));
  CHECK(one[3] == Formula::disj(phi(2), phi(2)));

  const Fragment two({phi(2), phi(3)});
  // 2 originals, 2 negations, then & and | over the 3 pairs i <= j of the originals.
  CHECK(boolean_closure(two, 1).size() == 10);
  CHECK_THROWS_AS(boolean_closure(two, 3, 100), BudgetExceeded);

  Rng rng(17);
  FormulaShape shape;
  shape.signature = Signature{{"p", 1}};
  shape.max_so_quantifiers = 0;
  for (int t = 0; t < 10; ++t) {
    Fragment f;
    for (int i = 0; i < 3; ++i) f.add(random_sentence(rng, shape));
    const auto c1 = boolean_closure(f, 1);
    CHECK(boolean_closure(f, 1).formulas() == c1.formulas());
    // The closure starts with the fragment itself.
    CHECK(std::equal(f.begin(), f.end(), c1.begin()));
  }
}
