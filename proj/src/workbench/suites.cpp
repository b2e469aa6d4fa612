// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <set>

#include "solab/error.hpp"
#include "solab/formula_space.hpp"
#include "solab/io.hpp"
#include "solab/types.hpp"
#include "solab/ultra.hpp"
#include "solab/workbench.hpp"

namespace solab {

namespace {

constexpr std::size_t kMaxFailureChecks = 10;

std::string ratio(std::size_t k, std::size_t n) { return std::to_string(k) + "/" + std::to_string(n); }

int trials_or(const SuiteParams& p, int fallback) { return p.trials > 0 ? p.trials : fallback; }

const std::vector<Signature>& small_signatures() {
  static const std::vector<Signature> sigs{
      Signature{{"p", 1}}, Signature{{"edge", 2}}, Signature{{"p", 1}, {"edge", 2}}};
  return sigs;
}

Report np_example(const SuiteParams& p) {
  Report r{"np_example", {{"n", std::to_string(p.n)}}, {}, 0};
  const Formula ham = builtin("hamiltonian").formula;
  r.add("C4 in H", true, eval_so_full(cycle_graph(4), ham, p.eval));
  for (int k = 3; k <= p.n; ++k) {
    const auto c = cycle_graph(2 * k);
    const auto d = double_cycle(k);
    const std::string ck = "C" + std::to_string(2 * k), dk = "D" + std::to_string(k);
    r.add(ck + " in H", true, eval_so_full(c, ham, p.eval));
    r.add(dk + " in H", false, eval_so_full(d, ham, p.eval));
    r.add(ck + " isomorphic to " + dk, false, find_isomorphism(c, d).has_value());
    const auto insep = principal_insep_search({c}, {d}, 1);
    r.add(ck + " vs " + dk + " principal witness", false, insep.witness.has_value());
  }
  return r;
}

Report infinity(const SuiteParams& p) {
  Report r{"infinity", {{"nmax", std::to_string(p.nmax)}, {"seed", std::to_string(p.seed)}}, {}, 0};
  Rng rng(p.seed);
  std::vector<FiniteStructure> corpus;
  std::vector<Signature> sigs{Signature{}};
  sigs.insert(sigs.end(), small_signatures().begin(), small_signatures().end());
  sigs.push_back(Signature{{"t", 3}});
  for (int n = 1; n <= p.nmax; ++n) {
    for (const auto& sig : sigs) {
      corpus.push_back(random_structure(rng, sig, n));
      corpus.push_back(random_structure(rng, sig, n, 1, 4));
    }
    if (n >= 3) corpus.push_back(cycle_graph(n));
  }
  const Formula psi = builtin("infinite").formula;
  std::size_t models = 0;
  for (const auto& a : corpus) models += eval_so_full(a, psi, p.eval) ? 1 : 0;
  r.add("psi has no finite model among " + std::to_string(corpus.size()) + " structures", "0",
        std::to_string(models));

  std::size_t agree = 0, total = 0;
  for (int n = 1; n <= 8; ++n) {
    const Formula phi = builtin("at_least:" + std::to_string(n)).formula;
    for (int size = 1; size <= 8; ++size) {
      const bool want = size >= n;
      agree += eval_so_full(FiniteStructure(Signature{}, size), phi, p.eval) == want ? 1 : 0;
      agree += eval_so_full(random_structure(rng, Signature{{"edge", 2}}, size), phi, p.eval) == want ? 1 : 0;
      total += 2;
    }
  }
  r.add("phi_n true exactly on sizes >= n (n, size <= 8)", ratio(total, total), ratio(agree, total));
  return r;
}

Ultrafilter random_filter(Rng& rng, int m) {
  if (m == 4 && rng.chance(1, 2))
    return Ultrafilter::product(Ultrafilter::principal(2, rng.range(0, 1)),
                                Ultrafilter::principal(2, rng.range(0, 1)));
  return Ultrafilter::principal(m, rng.range(0, m - 1));
}

Report los_suite(const SuiteParams& p) {
  const int trials = trials_or(p, 1000);
  Report r{"los_suite", {{"trials", std::to_string(trials)}, {"seed", std::to_string(p.seed)}}, {}, 0};
  Rng rng(p.seed);
  std::size_t agree = 0, true_side = 0, failures = 0;
  for (int t = 0; t < trials; ++t) {
    const Signature& sig = small_signatures()[rng.below(small_signatures().size())];
    const int m = rng.range(1, 4);
    const Ultrafilter u = random_filter(rng, m);
    std::vector<FiniteStructure> family;
    for (int i = 0; i < m; ++i) family.push_back(random_structure(rng, sig, rng.range(1, 3)));
    FormulaShape shape;
    shape.signature = sig;
    const Formula f = random_sentence(rng, shape);
    const LosReport los = check_los(family, u, f, p.eval);
    if (los.agree) {
      ++agree;
    } else if (failures++ < kMaxFailureChecks) {
      r.add("trial " + std::to_string(t) + ": " + f.to_string() + " under " + u.to_string(),
            los.large_set_truth, los.ultra_truth);
    }
    true_side += los.large_set_truth ? 1 : 0;
  }
  r.add("Henkin truth in the ultraproduct equals U-largeness of the truth set", ratio(trials, trials),
        ratio(agree, static_cast<std::size_t>(trials)));
  r.params.emplace_back("large_sets_true", std::to_string(true_side));
  return r;
}

Report fubini_suite(const SuiteParams& p) {
  const int trials = trials_or(p, 50);
  Report r{"fubini_suite", {{"trials", std::to_string(trials)}, {"seed", std::to_string(p.seed)}}, {}, 0};
  Rng rng(p.seed);
  std::size_t found = 0, collapse = 0, failures = 0;
  for (int t = 0; t < trials; ++t) {
    const Signature& sig = small_signatures()[rng.below(small_signatures().size())];
    const int ni = rng.range(1, 3), nj = rng.range(1, 2);
    const auto f = Ultrafilter::principal(ni, rng.range(0, ni - 1));
    const auto g = Ultrafilter::principal(nj, rng.range(0, nj - 1));
    std::vector<std::vector<FiniteStructure>> grid(static_cast<std::size_t>(ni));
    for (auto& row : grid)
      for (int j = 0; j < nj; ++j) row.push_back(random_structure(rng, sig, rng.range(1, 3)));
    const auto rep = check_fubini(grid, f, g);
    if (rep.witness) {
      ++found;
    } else if (failures++ < kMaxFailureChecks) {
      r.add("trial " + std::to_string(t) + " (" + std::to_string(ni) + "x" + std::to_string(nj) + ")",
            "isomorphism", "none");
    }
    const auto& corner = grid[static_cast<std::size_t>(f.principal_element())][static_cast<std::size_t>(g.principal_element())];
    if (find_isomorphism(rep.product_side, corner)) ++collapse;
  }
  r.add("isomorphism between product-ultrafilter and iterated quotients", ratio(trials, trials),
        ratio(found, static_cast<std::size_t>(trials)));
  r.add("both sides collapse onto the principal factor", ratio(trials, trials),
        ratio(collapse, static_cast<std::size_t>(trials)));
  return r;
}

Report separation(const SuiteParams& p) {
  const int trials = trials_or(p, 100);
  Report r{"separation", {{"trials", std::to_string(trials)}, {"seed", std::to_string(p.seed)}}, {}, 0};
  Rng rng(p.seed);
  const Signature sig{{"p", 1}, {"edge", 2}};
  FormulaShape shape;
  shape.signature = sig;
  shape.quantifier_depth = 2;
  shape.max_so_quantifiers = 1;
  shape.max_so_arity = 1;
  shape.so_tuple_cap = 3;
  std::size_t iff_ok = 0, verified = 0, distance_ok = 0, disjoint = 0, max_size = 0;
  for (int t = 0; t < trials; ++t) {
    Fragment base;
    while (base.size() < 2) base.add(random_sentence(rng, shape));
    const Fragment gamma = boolean_closure(base, 1);
    max_size = std::max(max_size, gamma.size());
    auto draw = [&] {
      std::vector<FiniteStructure> cls;
      const int count = rng.range(1, 4);
      for (int i = 0; i < count; ++i) cls.push_back(random_structure(rng, sig, rng.range(1, 3)));
      return cls;
    };
    const auto k = draw();
    const auto l = draw();
    const auto vk = vector_set(k, gamma, p.eval);
    const auto vl = vector_set(l, gamma, p.eval);
    const bool apart = !intersects(vk, vl);
    disjoint += apart ? 1 : 0;
    const auto sep = find_separating_formula(k, l, gamma, p.eval);
    iff_ok += sep.has_value() == apart ? 1 : 0;
    if (sep) {
      bool ok = true;
      for (const auto& a : k) ok = ok && eval_so_full(a, *sep, p.eval);
      for (const auto& b : l) ok = ok && !eval_so_full(b, *sep, p.eval);
      verified += ok ? 1 : 0;
    } else {
      ++verified;
    }
    distance_ok += !set_distance(vk, vl).is_zero() == apart ? 1 : 0;
  }
  const auto n = static_cast<std::size_t>(trials);
  r.add("separator returned exactly when vector sets are disjoint", ratio(n, n), ratio(iff_ok, n));
  r.add("returned separators hold on K and fail on L", ratio(n, n), ratio(verified, n));
  r.add("set distance positive exactly when vector sets are disjoint", ratio(n, n), ratio(distance_ok, n));
  r.add("fragments have at most 12 sentences", true, max_size <= 12);
  r.params.emplace_back("disjoint_pairs", std::to_string(disjoint));
  return r;
}

Report metric_suite(const SuiteParams& p) {
  const int trials = trials_or(p, 200);
  Report r{"metric_suite", {{"trials", std::to_string(trials)}, {"seed", std::to_string(p.seed)}}, {}, 0};
  Rng rng(p.seed);

  // Cardinality fragment: sizes <= 2 against sizes 3..4.
  const Fragment card({builtin("at_least:2").formula, builtin("at_least:3").formula,
                       builtin("at_least:4").formula});
  std::vector<FiniteStructure> small, large;
  for (int n = 1; n <= 4; ++n) (n <= 2 ? small : large).push_back(FiniteStructure(Signature{}, n));
  r.add("distance between size<=2 and size>=3 vectors over (at_least:2,3,4)", "1/2",
        set_distance(vector_set(small, card), vector_set(large, card)).to_string());

  const Signature sig{{"p", 1}, {"edge", 2}};
  FormulaShape shape;
  shape.signature = sig;
  shape.quantifier_depth = 2;
  shape.max_so_quantifiers = 0;
  Fragment gamma;
  while (gamma.size() < 8) gamma.add(random_sentence(rng, shape));
  std::vector<TheoryVector> pts;
  for (int i = 0; i < 24; ++i) pts.push_back(theory_vector(random_structure(rng, sig, rng.range(1, 3)), gamma));
  std::size_t triangle = 0, symmetric = 0, identity = 0;
  for (int t = 0; t < trials; ++t) {
    const auto& x = pts[rng.below(pts.size())];
    const auto& y = pts[rng.below(pts.size())];
    const auto& z = pts[rng.below(pts.size())];
    triangle += ultrametric(x, z) <= std::max(ultrametric(x, y), ultrametric(y, z)) ? 1 : 0;
    symmetric += ultrametric(x, y) == ultrametric(y, x) ? 1 : 0;
    identity += ultrametric(x, y).is_zero() == (x == y) ? 1 : 0;
  }
  const auto n = static_cast<std::size_t>(trials);
  r.add("strong triangle inequality", ratio(n, n), ratio(triangle, n));
  r.add("symmetry", ratio(n, n), ratio(symmetric, n));
  r.add("zero exactly on equal vectors", ratio(n, n), ratio(identity, n));
  return r;
}

TypeContext omission_context() {
  return TypeContext({1}, {parse_formula("EX x X0(x)"), parse_formula("ALL x (X0(x) -> p(x))"),
                           parse_formula("EX x EX y (X0(x) & X0(y) & edge(x,y))"),
                           parse_formula("EX x EX y (x != y & X0(x) & X0(y))"),
                           parse_formula("ALL x ALL y (X0(x) & edge(x,y) -> X0(y))")});
}

Report omission_suite(const SuiteParams& p) {
  const int trials = trials_or(p, 20);
  Report r{"omission_suite", {{"trials", std::to_string(trials)}, {"seed", std::to_string(p.seed)}}, {}, 0};
  r.params.emplace_back("scope", kPoolScope);
  Rng rng(p.seed);
  const auto pool = structure_pool(Signature{{"p", 1}, {"edge", 2}}, 3);
  const auto ctx = omission_context();
  r.params.emplace_back("pool", std::to_string(pool.size()));

  std::vector<std::set<TwoType>> table;
  std::set<TwoType> pool_types;
  for (const auto& a : pool) {
    std::set<TwoType> s;
    for (auto& rt : realized_types(a, ctx)) s.insert(rt.type);
    pool_types.insert(s.begin(), s.end());
    table.push_back(std::move(s));
  }
  const std::vector<TwoType> all_types(pool_types.begin(), pool_types.end());

  for (int t = 0; t < trials; ++t) {
    std::vector<FiniteStructure> k;
    if (t % 2 == 0) {
      // K axiomatized by omitting a random set of types.
      std::set<TwoType> banned;
      for (const auto& ty : all_types)
        if (rng.chance(1, 8)) banned.insert(ty);
      for (std::size_t i = 0; i < pool.size(); ++i) {
        bool omits_all = true;
        for (const auto& ty : table[i]) omits_all = omits_all && !banned.count(ty);
        if (omits_all) k.push_back(pool[i]);
      }
    } else {
      for (const auto& a : pool)
        if (rng.chance(1, 2)) k.push_back(a);
    }
    const auto pi = omitted_by_all(k, pool, ctx);
    const auto omission = check_omission_axiomatization(k, pi, pool, ctx);
    const auto prop_a = property_A_check(k, pool, ctx);
    const std::string name = "K#" + std::to_string(t) + " (|K|=" + std::to_string(k.size()) +
                             ", |Pi|=" + std::to_string(pi.size()) + ")";
    if (prop_a.pass()) {
      r.add(name + " omission axiomatization", "pass", omission.pass() ? "pass" : "fail");
    } else {
      const bool same = omission.unrealizing == prop_a.counterexamples && omission.realized_in_k.empty();
      r.add(name + " counterexample", structure_to_json(pool[prop_a.counterexamples.front()]),
            same && !omission.pass() ? structure_to_json(pool[omission.unrealizing.front()]) : "none");
    }
  }
  return r;
}

}  // namespace

std::vector<FiniteStructure> structure_pool(const Signature& sig, int nmax) {
  std::vector<FiniteStructure> all;
  for (int n = 1; n <= nmax; ++n) {
    auto reps = isomorphism_representatives(all_structures(sig, n));
    all.insert(all.end(), std::make_move_iterator(reps.begin()), std::make_move_iterator(reps.end()));
  }
  return all;
}

std::vector<std::string> demo_names() {
  return {"np_example", "infinity", "los_suite", "fubini_suite", "separation", "metric_suite", "omission_suite"};
}

Report demo(std::string_view name, const SuiteParams& params) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  if (name == "np_example") {
    r = np_example(params);
  } else if (name == "infinity") {
    r = infinity(params);
  } else if (name == "los_suite") {
    r = los_suite(params);
  } else if (name == "fubini_suite") {
    r = fubini_suite(params);
  } else if (name == "separation") {
    r = separation(params);
  } else if (name == "metric_suite") {
    r = metric_suite(params);
  } else if (name == "omission_suite") {
    r = omission_suite(params);
  } else {
    std::string known;
    for (const auto& n : demo_names()) known += (known.empty() ? "" : ", ") + n;
    throw InputError("unknown demo '" + std::string(name) + "' (known: " + known + ")");
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace solab
