// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>
#include <set>

#include "../eval/evaluator.hpp"
#include "solab/error.hpp"
#include "solab/ultra.hpp"

namespace solab {

namespace {

void check_family(const std::vector<FiniteStructure>& family, const Ultrafilter& u) {
  if (family.empty()) throw InputError("ultraproduct of an empty family");
  if (static_cast<int>(family.size()) != u.index_size())
    throw InputError("family has " + std::to_string(family.size()) +
                     " structures but the ultrafilter lives on " + std::to_string(u.index_size()) +
                     " indices");
  for (const auto& a : family)
    if (!(a.signature() == family.front().signature()))
      throw InputError("ultraproduct factors must share one signature");
}

std::vector<bool> agreement(const std::vector<Element>& s, const std::vector<Element>& t) {
  std::vector<bool> eq(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) eq[i] = s[i] == t[i];
  return eq;
}

// Odometer over the product of {0..sizes[i]-1}, last coordinate fastest.
bool next_tuple(std::vector<Element>& t, const std::vector<int>& sizes) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < sizes[i]) return true;
    t[i] = 0;
  }
  return false;
}

// Truth of a relation symbol on a tuple of classes, decided by U-largeness.
template <typename Member>
Relation induce(int arity, const UltraproductResult& up, Member member) {
  const int n = up.quotient.universe();
  Relation out(arity, n);
  const std::size_t m = up.factor_sizes.size();
  std::vector<bool> hits(m);
  Tuple coords(static_cast<std::size_t>(arity));
  for (std::size_t code = 0; code < out.capacity(); ++code) {
    const Tuple cls = out.decode(code);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t p = 0; p < cls.size(); ++p)
        coords[p] = up.representatives[static_cast<std::size_t>(cls[p])][i];
      hits[i] = member(i, coords);
    }
    if (up.filter.contains(hits)) out.set(code);
  }
  return out;
}

}  // namespace

UltraproductResult ultraproduct_explicit(const std::vector<FiniteStructure>& family,
                                         const Ultrafilter& u, const UltraproductOptions& options) {
  check_family(family, u);
  std::vector<int> sizes;
  std::uint64_t total = 1;
  for (const auto& a : family) {
    sizes.push_back(a.universe());
    total *= static_cast<std::uint64_t>(a.universe());
    if (total > options.product_budget)
      throw BudgetExceeded("full product has more than " + std::to_string(options.product_budget) +
                           " tuples");
  }
  const auto i0 = static_cast<std::size_t>(u.principal_element());

  // Lexicographic sweep: the first tuple met in a class is its least member.
  std::vector<std::vector<Element>> reps;
  std::vector<Element> t(family.size(), 0);
  do {
    bool known = false;
    for (const auto& r : reps) {
      if (u.contains(agreement(t, r))) {
        known = true;
        break;
      }
    }
    if (!known) reps.push_back(t);
  } while (next_tuple(t, sizes));
  std::stable_sort(reps.begin(), reps.end(),
                   [&](const auto& a, const auto& b) { return a[i0] < b[i0]; });

  UltraproductResult up{FiniteStructure(family.front().signature(), static_cast<int>(reps.size())),
                        std::move(reps), sizes, u, false};
  for (const auto& [name, arity] : family.front().signature()) {
    const std::string& rel = name;
    up.quotient.set_relation(rel, induce(arity, up, [&](std::size_t i, const Tuple& coords) {
                               return family[i].relation(rel).contains(coords);
                             }));
  }
  return up;
}

UltraproductResult ultraproduct(const std::vector<FiniteStructure>& family, const Ultrafilter& u,
                                const UltraproductOptions& options) {
  check_family(family, u);
  const auto i0 = static_cast<std::size_t>(u.principal_element());
  std::vector<int> sizes;
  for (const auto& a : family) sizes.push_back(a.universe());
  UltraproductResult fast{family[i0], {}, sizes, u, false};
  for (Element e = 0; e < family[i0].universe(); ++e) {
    std::vector<Element> rep(family.size(), 0);
    rep[i0] = e;
    fast.representatives.push_back(std::move(rep));
  }
  if (!options.verify) return fast;
  std::optional<UltraproductResult> slow;
  try {
    slow = ultraproduct_explicit(family, u, options);
  } catch (const BudgetExceeded&) {
    return fast;
  }
  if (!(slow->quotient == fast.quotient) || slow->representatives != fast.representatives)
    throw EvalError("explicit quotient disagrees with the principal fast path");
  fast.verified = true;
  return fast;
}

Relation recompose(const std::vector<Relation>& factors, const UltraproductResult& up) {
  if (factors.size() != up.factor_sizes.size())
    throw InputError("need one factor relation per index");
  const int arity = factors.front().arity();
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i].arity() != arity || factors[i].universe() != up.factor_sizes[i])
      throw InputError("factor relation " + std::to_string(i) + " has the wrong shape");
  return induce(arity, up, [&](std::size_t i, const Tuple& coords) { return factors[i].contains(coords); });
}

std::optional<std::vector<Relation>> decompose(const Relation& r, const UltraproductResult& up) {
  if (r.universe() != up.quotient.universe())
    throw InputError("relation does not live on the quotient");
  const auto i0 = static_cast<std::size_t>(up.filter.principal_element());
  std::vector<Relation> factors;
  for (int size : up.factor_sizes) factors.emplace_back(r.arity(), size);
  for (auto t : r.tuples()) {
    for (auto& c : t) c = up.representatives[static_cast<std::size_t>(c)][i0];
    factors[i0].insert(t);
  }
  if (!(recompose(factors, up) == r)) return std::nullopt;
  return factors;
}

// Henkin models ------------------------------------------------------------

namespace {

std::vector<Relation> all_relations(int arity, int universe, std::uint64_t budget) {
  Relation probe(arity, universe);
  if (probe.capacity() >= 63 || (std::uint64_t{1} << probe.capacity()) > budget)
    throw BudgetExceeded("admitting every relation of arity " + std::to_string(arity) + " on " +
                         std::to_string(universe) + " elements needs 2^" +
                         std::to_string(probe.capacity()) + " relations, budget is " +
                         std::to_string(budget));
  std::vector<Relation> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << probe.capacity()); ++bits)
    out.push_back(Relation::from_bits(arity, universe, bits));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

HenkinModel henkin_model(const std::vector<FiniteStructure>& family, const Ultrafilter& u,
                         const HenkinOptions& options) {
  const UltraproductResult up = ultraproduct(family, u, options.ultraproduct);
  const auto i0 = static_cast<std::size_t>(u.principal_element());
  HenkinModel m{up.quotient, {}, options.arity_bound,
                "ultraproduct of " + std::to_string(family.size()) + " structures by " + u.to_string()};
  for (int k = 1; k <= options.arity_bound; ++k) {
    std::vector<std::size_t> caps;
    std::size_t bits_total = 0;
    for (int size : up.factor_sizes) {
      caps.push_back(Relation(k, size).capacity());
      bits_total += caps.back();
    }
    std::set<Relation> found;
    std::vector<Relation> factors;
    for (int size : up.factor_sizes) factors.emplace_back(k, size);
    const bool literal = bits_total < 63 && (std::uint64_t{1} << bits_total) <= options.factor_budget;
    if (literal) {
      // Every choice of factor relations.
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << bits_total); ++c) {
        std::uint64_t bits = c;
        for (std::size_t i = 0; i < factors.size(); ++i) {
          factors[i].assign_bits(bits);
          bits >>= caps[i];
        }
        found.insert(recompose(factors, up));
      }
    } else {
      for (const auto& r : all_relations(k, up.factor_sizes[i0], options.relation_budget)) {
        factors[i0] = r;
        found.insert(recompose(factors, up));
      }
    }
    if (found.size() > options.relation_budget)
      throw BudgetExceeded("upsilon(" + std::to_string(k) + ") exceeds the relation budget");
    m.upsilon.emplace(k, std::vector<Relation>(found.begin(), found.end()));
  }
  return m;
}

HenkinModel full_henkin_model(const FiniteStructure& base, int arity_bound,
                              std::uint64_t relation_budget) {
  HenkinModel m{base, {}, arity_bound, "full relation universe"};
  for (int k = 1; k <= arity_bound; ++k)
    m.upsilon.emplace(k, all_relations(k, base.universe(), relation_budget));
  return m;
}

bool henkin_eval(const HenkinModel& m, const Formula& f) {
  Formula closed = f;
  const auto free = free_relation_names(f);
  for (auto it = free.rbegin(); it != free.rend(); ++it)
    if (!m.base.signature().contains(it->first)) closed = Formula::forall_so(it->first, it->second, closed);
  return detail::evaluate(m.base, closed, Assignment{}, EvalOptions{}, &m.upsilon);
}

LosReport check_los(const std::vector<FiniteStructure>& family, const Ultrafilter& u,
                    const Formula& f, const EvalOptions& eval, const HenkinOptions& henkin) {
  LosReport report;
  for (const auto& a : family) report.factor_truths.push_back(eval_so_full(a, f, eval));
  report.large_set_truth = u.contains(report.factor_truths);
  HenkinOptions opts = henkin;
  opts.arity_bound = std::max(opts.arity_bound, max_so_arity(f));
  report.ultra_truth = henkin_eval(henkin_model(family, u, opts), f);
  report.agree = report.ultra_truth == report.large_set_truth;
  return report;
}

FubiniReport check_fubini(const std::vector<std::vector<FiniteStructure>>& grid,
                          const Ultrafilter& f, const Ultrafilter& g,
                          const UltraproductOptions& options) {
  if (grid.empty() || grid.front().empty()) throw InputError("Fubini grid must be nonempty");
  const std::size_t ni = grid.size(), nj = grid.front().size();
  for (const auto& row : grid)
    if (row.size() != nj) throw InputError("Fubini grid rows must have equal length");
  if (static_cast<std::size_t>(f.index_size()) != ni || static_cast<std::size_t>(g.index_size()) != nj)
    throw InputError("ultrafilter sizes do not match the grid");

  std::vector<FiniteStructure> flat;
  for (const auto& row : grid) flat.insert(flat.end(), row.begin(), row.end());
  auto product_side = ultraproduct_explicit(flat, Ultrafilter::product(f, g), options).quotient;

  std::vector<FiniteStructure> inner;
  for (std::size_t j = 0; j < nj; ++j) {
    std::vector<FiniteStructure> column;
    for (std::size_t i = 0; i < ni; ++i) column.push_back(grid[i][j]);
    inner.push_back(ultraproduct_explicit(column, f, options).quotient);
  }
  auto iterated_side = ultraproduct_explicit(inner, g, options).quotient;
  auto witness = find_isomorphism(product_side, iterated_side);
  return FubiniReport{std::move(product_side), std::move(iterated_side), std::move(witness)};
}

Ultrachain build_ultrachain(const FiniteStructure& a0, const std::vector<Ultrafilter>& filters,
                            const UltraproductOptions& options) {
  Ultrachain chain;
  chain.stages.push_back(a0);
  chain.limit_embedding.resize(static_cast<std::size_t>(a0.universe()));
  std::iota(chain.limit_embedding.begin(), chain.limit_embedding.end(), 0);
  for (const auto& u : filters) {
    const FiniteStructure prev = chain.stages.back();
    std::vector<FiniteStructure> copies(static_cast<std::size_t>(u.index_size()), prev);
    auto up = ultraproduct_explicit(copies, u, options);
    std::vector<Element> diagonal;
    for (Element e = 0; e < prev.universe(); ++e) {
      const std::vector<Element> constant(copies.size(), e);
      Element cls = -1;
      for (std::size_t c = 0; c < up.representatives.size(); ++c) {
        if (u.contains(agreement(constant, up.representatives[c]))) {
          cls = static_cast<Element>(c);
          break;
        }
      }
      if (cls < 0) throw EvalError("diagonal element has no class");
      diagonal.push_back(cls);
    }
    for (auto& e : chain.limit_embedding) e = diagonal[static_cast<std::size_t>(e)];
    chain.embeddings.push_back(std::move(diagonal));
    chain.filters.push_back(u);
    chain.stages.push_back(std::move(up.quotient));
  }
  return chain;
}

HenkinModel limit_henkin_model(const Ultrachain& chain, const HenkinOptions& options) {
  if (chain.filters.empty())
    return full_henkin_model(chain.stages.front(), options.arity_bound, options.relation_budget);
  const auto& prev = chain.stages[chain.stages.size() - 2];
  const auto& u = chain.filters.back();
  std::vector<FiniteStructure> copies(static_cast<std::size_t>(u.index_size()), prev);
  return henkin_model(copies, u, options);
}

}  // namespace solab
