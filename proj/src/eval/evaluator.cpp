// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "evaluator.hpp"

#include <algorithm>
#include <climits>

#include "sat.hpp"
#include "solab/error.hpp"

namespace solab::detail {

// Compilation -------------------------------------------------------------

namespace {

void flatten(const Formula& f, FormulaKind k, std::vector<Formula>& out) {
  if (f.kind() == k) {
    flatten(f.lhs(), k, out);
    flatten(f.rhs(), k, out);
  } else {
    out.push_back(f);
  }
}

bool mentions(const Formula& f, const std::string& v) {
  const auto fv = free_fo_vars(f);
  return std::find(fv.begin(), fv.end(), v) != fv.end();
}

// Pulls conjuncts (disjuncts under ALL) that do not mention the bound variable
// out of its scope. Sound because universes are nonempty; lets the evaluator
// prune partial assignments instead of enumerating whole blocks.
Formula miniscope(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Eq:
      return f;
    case FormulaKind::Not:
      return Formula::negation(miniscope(f.sub()));
    case FormulaKind::And:
      return Formula::conj(miniscope(f.lhs()), miniscope(f.rhs()));
    case FormulaKind::Or:
      return Formula::disj(miniscope(f.lhs()), miniscope(f.rhs()));
    case FormulaKind::Implies:
      return Formula::implies(miniscope(f.lhs()), miniscope(f.rhs()));
    case FormulaKind::Iff:
      return Formula::iff(miniscope(f.lhs()), miniscope(f.rhs()));
    case FormulaKind::ExistsSO:
      return Formula::exists_so(f.name(), f.arity(), miniscope(f.sub()));
    case FormulaKind::ForallSO:
      return Formula::forall_so(f.name(), f.arity(), miniscope(f.sub()));
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      break;
  }
  const bool ex = f.kind() == FormulaKind::ExistsFO;
  const FormulaKind join = ex ? FormulaKind::And : FormulaKind::Or;
  std::vector<Formula> parts, outside, inside;
  flatten(miniscope(f.sub()), join, parts);
  for (const auto& p : parts) (mentions(p, f.name()) ? inside : outside).push_back(p);
  auto combine = [&](const std::vector<Formula>& v) { return ex ? Formula::conj_all(v) : Formula::disj_all(v); };
  if (outside.empty()) return ex ? Formula::exists(f.name(), combine(inside)) : Formula::forall(f.name(), combine(inside));
  if (!inside.empty())
    outside.push_back(ex ? Formula::exists(f.name(), combine(inside)) : Formula::forall(f.name(), combine(inside)));
  return combine(outside);
}

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, const FiniteStructure& a,
                                 const std::vector<std::string>& free_fo,
                                 const std::vector<std::pair<std::string, int>>& free_rel)
    : structure_(a) {
  for (const auto& v : free_fo) free_fo_.emplace(v, fo_slots_++);
  for (const auto& [name, arity] : free_rel) {
    free_rel_.emplace(name, std::make_pair(rel_slots_++, arity));
    rel_arity_.push_back(arity);
  }
  std::vector<std::pair<std::string, int>> fo_scope, so_scope;
  root_ = compile(miniscope(f), fo_scope, so_scope);
}

int CompiledFormula::compile(const Formula& f, std::vector<std::pair<std::string, int>>& fo_scope,
                             std::vector<std::pair<std::string, int>>& so_scope) {
  CNode n;
  n.kind = f.kind();
  auto fo_slot = [&](const std::string& v) {
    for (auto it = fo_scope.rbegin(); it != fo_scope.rend(); ++it)
      if (it->first == v) return it->second;
    auto it = free_fo_.find(v);
    if (it == free_fo_.end()) throw EvalError("unassigned variable '" + v + "'");
    return it->second;
  };
  auto arity_error = [&](int expected) {
    throw EvalError("arity mismatch for '" + f.name() + "': expected " + std::to_string(expected) +
                    ", got " + std::to_string(f.arity()));
  };

  switch (f.kind()) {
    case FormulaKind::Atom: {
      n.arity = f.arity();
      for (const auto& a : f.args()) n.args.push_back(fo_slot(a));
      bool resolved = false;
      for (auto it = so_scope.rbegin(); it != so_scope.rend(); ++it) {
        if (it->first == f.name()) {
          n.rel_slot = it->second;
          resolved = true;
          break;
        }
      }
      if (resolved) {
        const int declared = rel_arity_[static_cast<std::size_t>(n.rel_slot)];
        if (declared != f.arity()) arity_error(declared);
      } else if (auto it = free_rel_.find(f.name()); it != free_rel_.end()) {
        if (it->second.second != f.arity()) arity_error(it->second.second);
        n.rel_slot = it->second.first;
      } else if (auto ar = structure_.signature().arity(f.name())) {
        if (*ar != f.arity()) arity_error(*ar);
        n.fixed = &structure_.relation(f.name());
      } else {
        throw EvalError("unknown relation symbol '" + f.name() + "'");
      }
      break;
    }
    case FormulaKind::Eq:
      n.args = {fo_slot(f.args()[0]), fo_slot(f.args()[1])};
      break;
    case FormulaKind::Not:
      n.lhs = compile(f.sub(), fo_scope, so_scope);
      break;
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      n.var_slot = fo_slots_++;
      n.label = f.name();
      fo_scope.emplace_back(f.name(), n.var_slot);
      n.lhs = compile(f.sub(), fo_scope, so_scope);
      fo_scope.pop_back();
      break;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      n.rel_slot = rel_slots_++;
      n.arity = f.arity();
      rel_arity_.push_back(f.arity());
      n.label = f.name();
      so_scope.emplace_back(f.name(), n.rel_slot);
      n.lhs = compile(f.sub(), fo_scope, so_scope);
      so_scope.pop_back();
      break;
    default:
      n.lhs = compile(f.lhs(), fo_scope, so_scope);
      n.rhs = compile(f.rhs(), fo_scope, so_scope);
  }

  // Polarity bookkeeping for the grounding path.
  auto child = [&](int i) -> const CNode& { return nodes_[static_cast<std::size_t>(i)]; };
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Eq:
      break;
    case FormulaKind::Not:
      n.has_so = child(n.lhs).has_so;
      n.elig_pos = child(n.lhs).elig_neg;
      n.elig_neg = child(n.lhs).elig_pos;
      break;
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      n.has_so = child(n.lhs).has_so;
      n.elig_pos = child(n.lhs).elig_pos;
      n.elig_neg = child(n.lhs).elig_neg;
      break;
    case FormulaKind::ExistsSO:
      n.has_so = true;
      n.elig_pos = child(n.lhs).elig_pos;
      n.elig_neg = false;
      break;
    case FormulaKind::ForallSO:
      n.has_so = true;
      n.elig_pos = false;
      n.elig_neg = child(n.lhs).elig_neg;
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      n.has_so = child(n.lhs).has_so || child(n.rhs).has_so;
      n.elig_pos = child(n.lhs).elig_pos && child(n.rhs).elig_pos;
      n.elig_neg = child(n.lhs).elig_neg && child(n.rhs).elig_neg;
      break;
    case FormulaKind::Implies:
      n.has_so = child(n.lhs).has_so || child(n.rhs).has_so;
      n.elig_pos = child(n.lhs).elig_neg && child(n.rhs).elig_pos;
      n.elig_neg = child(n.lhs).elig_pos && child(n.rhs).elig_neg;
      break;
    case FormulaKind::Iff:
      n.has_so = child(n.lhs).has_so || child(n.rhs).has_so;
      n.elig_pos = n.elig_neg = !n.has_so;
      break;
  }
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

// Grounding ---------------------------------------------------------------

namespace {

constexpr int kTrue = INT_MAX;
constexpr int kFalse = -INT_MAX;

struct GroundTooLarge {};

// Tseitin encoding of a node under the current first-order environment.
// Relation slots bound inside the grounded region get fresh propositional
// variables (one per candidate tuple); this is sound because every such
// quantifier is effectively existential relative to the asserted polarity.
class Grounder {
 public:
  Grounder(const std::vector<CNode>& nodes, int universe, std::vector<Element>& env,
           const std::vector<const Relation*>& rels, const std::vector<std::size_t>& pow,
           std::size_t clause_budget)
      : nodes_(nodes),
        n_(universe),
        env_(env),
        rels_(rels),
        pow_(pow),
        budget_(clause_budget),
        sym_base_(rels.size(), 0) {}

  sat::Solver& solver() { return solver_; }

  int lit(int node) {
    const CNode& c = nodes_[static_cast<std::size_t>(node)];
    switch (c.kind) {
      case FormulaKind::Atom: {
        std::size_t code = 0;
        for (int s : c.args) code = code * static_cast<std::size_t>(n_) + static_cast<std::size_t>(env_[static_cast<std::size_t>(s)]);
        if (c.fixed) return c.fixed->test(code) ? kTrue : kFalse;
        const int base = sym_base_[static_cast<std::size_t>(c.rel_slot)];
        if (base > 0) return base + static_cast<int>(code);
        return rels_[static_cast<std::size_t>(c.rel_slot)]->test(code) ? kTrue : kFalse;
      }
      case FormulaKind::Eq:
        return env_[static_cast<std::size_t>(c.args[0])] == env_[static_cast<std::size_t>(c.args[1])] ? kTrue : kFalse;
      case FormulaKind::Not:
        return -lit(c.lhs);
      case FormulaKind::And:
        return gate(true, {lit(c.lhs), lit(c.rhs)});
      case FormulaKind::Or:
        return gate(false, {lit(c.lhs), lit(c.rhs)});
      case FormulaKind::Implies:
        return gate(false, {-lit(c.lhs), lit(c.rhs)});
      case FormulaKind::Iff:
        return equiv(lit(c.lhs), lit(c.rhs));
      case FormulaKind::ExistsFO:
      case FormulaKind::ForallFO: {
        const bool is_and = c.kind == FormulaKind::ForallFO;
        std::vector<int> parts;
        const auto slot = static_cast<std::size_t>(c.var_slot);
        const Element saved = env_[slot];
        for (Element e = 0; e < n_; ++e) {
          env_[slot] = e;
          const int l = lit(c.lhs);
          if (l == (is_and ? kFalse : kTrue)) {
            env_[slot] = saved;
            return l;
          }
          parts.push_back(l);
        }
        env_[slot] = saved;
        return gate(is_and, std::move(parts));
      }
      case FormulaKind::ExistsSO:
      case FormulaKind::ForallSO: {
        const auto slot = static_cast<std::size_t>(c.rel_slot);
        const int saved = sym_base_[slot];
        const auto count = pow_[static_cast<std::size_t>(c.arity)];
        const int first = solver_.num_vars() + 1;
        for (std::size_t i = 0; i < count; ++i) solver_.new_var();
        sym_base_[slot] = first;
        const int l = lit(c.lhs);
        sym_base_[slot] = saved;
        return l;
      }
    }
    return kFalse;
  }

 private:
  void clause(std::vector<int> c) {
    if (++clauses_ > budget_) throw GroundTooLarge{};
    solver_.add_clause(std::move(c));
  }

  int gate(bool is_and, std::vector<int> parts) {
    const int absorbing = is_and ? kFalse : kTrue;
    const int neutral = -absorbing;
    std::vector<int> kept;
    for (int l : parts) {
      if (l == absorbing) return absorbing;
      if (l == neutral) continue;
      kept.push_back(l);
    }
    if (kept.empty()) return neutral;
    if (kept.size() == 1) return kept[0];
    // v <-> AND(kept)  (OR is the dual with all signs flipped)
    const int sign = is_and ? 1 : -1;
    const int v = solver_.new_var();
    std::vector<int> big{sign * v};
    for (int l : kept) {
      clause({-sign * v, sign * l});
      big.push_back(-sign * l);
    }
    clause(std::move(big));
    return v;
  }

  int equiv(int a, int b) {
    if (a == kTrue) return b;
    if (a == kFalse) return -b;
    if (b == kTrue) return a;
    if (b == kFalse) return -a;
    const int v = solver_.new_var();
    clause({-v, -a, b});
    clause({-v, a, -b});
    clause({v, a, b});
    clause({v, -a, -b});
    return v;
  }

  const std::vector<CNode>& nodes_;
  int n_;
  std::vector<Element>& env_;
  const std::vector<const Relation*>& rels_;
  const std::vector<std::size_t>& pow_;
  std::size_t budget_;
  std::size_t clauses_ = 0;
  std::vector<int> sym_base_;
  sat::Solver solver_;
};

}  // namespace

// Evaluation --------------------------------------------------------------

Evaluator::Evaluator(const CompiledFormula& cf, const FiniteStructure& a, const EvalOptions& options,
                     const RelationUniverse* henkin)
    : cf_(cf),
      a_(a),
      options_(options),
      henkin_(henkin),
      env_(static_cast<std::size_t>(cf.fo_slots()), 0),
      rels_(static_cast<std::size_t>(cf.rel_slots()), nullptr) {
  std::size_t p = 1;
  pow_.push_back(p);
  for (int i = 0; i < 64; ++i) {
    if (p > (std::size_t{1} << 40) / static_cast<std::size_t>(a.universe())) break;
    p *= static_cast<std::size_t>(a.universe());
    pow_.push_back(p);
  }
}

std::optional<bool> Evaluator::try_ground(int node) {
  const CNode& n = cf_.nodes()[static_cast<std::size_t>(node)];
  for (const auto& c : cf_.nodes()) {
    if ((c.kind == FormulaKind::ExistsSO || c.kind == FormulaKind::ForallSO) &&
        static_cast<std::size_t>(c.arity) >= pow_.size())
      return std::nullopt;
  }
  try {
    Grounder g(cf_.nodes(), a_.universe(), env_, rels_, pow_, options_.ground_clause_budget);
    const int l = g.lit(node);
    if (l == kTrue) return true;
    if (l == kFalse) return false;
    if (n.elig_pos) {
      g.solver().add_clause({l});
      return g.solver().solve();
    }
    g.solver().add_clause({-l});
    return !g.solver().solve();
  } catch (const GroundTooLarge&) {
    return std::nullopt;
  }
}

bool Evaluator::eval(int node) {
  const CNode& n = cf_.nodes()[static_cast<std::size_t>(node)];
  if (n.has_so && !henkin_ && options_.use_solver && (n.elig_pos || n.elig_neg)) {
    if (auto r = try_ground(node)) return *r;
  }
  switch (n.kind) {
    case FormulaKind::Atom: {
      const std::size_t universe = static_cast<std::size_t>(a_.universe());
      std::size_t code = 0;
      for (int s : n.args) code = code * universe + static_cast<std::size_t>(env_[static_cast<std::size_t>(s)]);
      const Relation* r = n.fixed ? n.fixed : rels_[static_cast<std::size_t>(n.rel_slot)];
      if (!r) throw EvalError("relation variable used before assignment");
      return r->test(code);
    }
    case FormulaKind::Eq:
      return env_[static_cast<std::size_t>(n.args[0])] == env_[static_cast<std::size_t>(n.args[1])];
    case FormulaKind::Not:
      return !eval(n.lhs);
    case FormulaKind::And:
      return eval(n.lhs) && eval(n.rhs);
    case FormulaKind::Or:
      return eval(n.lhs) || eval(n.rhs);
    case FormulaKind::Implies:
      return !eval(n.lhs) || eval(n.rhs);
    case FormulaKind::Iff:
      return eval(n.lhs) == eval(n.rhs);
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO: {
      const bool want = n.kind == FormulaKind::ExistsFO;
      const auto slot = static_cast<std::size_t>(n.var_slot);
      for (Element e = 0; e < a_.universe(); ++e) {
        env_[slot] = e;
        if (eval(n.lhs) == want) return want;
      }
      return !want;
    }
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      return eval_so(n, node);
  }
  return false;
}

bool Evaluator::eval_so(const CNode& n, int) {
  const bool want = n.kind == FormulaKind::ExistsSO;
  const auto slot = static_cast<std::size_t>(n.rel_slot);
  const Relation* saved = rels_[slot];
  bool result = !want;

  if (henkin_) {
    auto it = henkin_->find(n.arity);
    if (it == henkin_->end())
      throw EvalError("quantifier over '" + n.label + "' has arity " + std::to_string(n.arity) +
                      ", beyond the relation universe's arity bound");
    for (const Relation& r : it->second) {
      rels_[slot] = &r;
      if (eval(n.lhs) == want) {
        result = want;
        break;
      }
    }
    rels_[slot] = saved;
    return result;
  }

  const std::size_t universe = static_cast<std::size_t>(a_.universe());
  std::size_t tuples = 1;
  bool overflow = false;
  for (int i = 0; i < n.arity; ++i) {
    tuples *= universe;
    if (tuples >= 64) overflow = true;
  }
  const std::string need = "2^" + std::to_string(tuples);
  if (overflow || (std::uint64_t{1} << tuples) > options_.relation_budget)
    throw BudgetExceeded("quantifier over '" + n.label + ":" + std::to_string(n.arity) +
                         "' needs " + need + " candidate relations on a universe of size " +
                         std::to_string(universe) + ", budget is " +
                         std::to_string(options_.relation_budget));
  Relation candidate(n.arity, a_.universe());
  rels_[slot] = &candidate;
  const std::uint64_t count = std::uint64_t{1} << tuples;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    candidate.assign_bits(bits);
    if (eval(n.lhs) == want) {
      result = want;
      break;
    }
  }
  rels_[slot] = saved;
  return result;
}

}  // namespace solab::detail
