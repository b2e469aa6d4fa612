// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "solab/formula.hpp"

namespace solab {

HierarchyLabel classify(const Formula& f) {
  if (!has_so_quantifier(f)) return HierarchyLabel::delta0();
  int blocks = 0;
  FormulaKind first = f.kind();
  FormulaKind last = FormulaKind::Atom;
  const Formula* cur = &f;
  while (cur->is_so_quantifier()) {
    if (cur->kind() != last) {
      ++blocks;
      last = cur->kind();
    }
    cur = &cur->sub();
  }
  if (blocks == 0 || has_so_quantifier(*cur)) return HierarchyLabel::non_prenex();
  return first == FormulaKind::ExistsSO ? HierarchyLabel::sigma(blocks)
                                        : HierarchyLabel::pi(blocks);
}

namespace {

struct Binder {
  bool exists;
  std::string name;
  int arity;
};

struct Prenexed {
  std::vector<Binder> prefix;
  Formula matrix;
};

void collect_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out.insert(f.name());
      out.insert(f.args().begin(), f.args().end());
      return;
    case FormulaKind::Eq:
      out.insert(f.args().begin(), f.args().end());
      return;
    case FormulaKind::Not:
      collect_names(f.sub(), out);
      return;
    default:
      if (f.is_quantifier()) {
        out.insert(f.name());
        collect_names(f.sub(), out);
        return;
      }
      collect_names(f.lhs(), out);
      collect_names(f.rhs(), out);
  }
}

Formula rebuild_binary(const Formula& f, Formula l, Formula r) {
  switch (f.kind()) {
    case FormulaKind::And:
      return Formula::conj(std::move(l), std::move(r));
    case FormulaKind::Or:
      return Formula::disj(std::move(l), std::move(r));
    case FormulaKind::Implies:
      return Formula::implies(std::move(l), std::move(r));
    default:
      return Formula::iff(std::move(l), std::move(r));
  }
}

Formula rebuild_quantifier(const Formula& f, std::string name, Formula body) {
  switch (f.kind()) {
    case FormulaKind::ExistsFO:
      return Formula::exists(std::move(name), std::move(body));
    case FormulaKind::ForallFO:
      return Formula::forall(std::move(name), std::move(body));
    case FormulaKind::ExistsSO:
      return Formula::exists_so(std::move(name), f.arity(), std::move(body));
    default:
      return Formula::forall_so(std::move(name), f.arity(), std::move(body));
  }
}

class Prenexer {
 public:
  explicit Prenexer(const Formula& f) { collect_names(f, used_); }

  std::string fresh(const std::string& base) {
    for (int i = 1;; ++i) {
      std::string candidate = base + "_" + std::to_string(i);
      if (used_.insert(candidate).second) return candidate;
    }
  }

  // Gives every binder a name that no other binder (and no free name) uses,
  // so later quantifier moves cannot capture.
  Formula rename_apart(const Formula& f) {
    std::set<std::string> free;
    for (const auto& v : free_fo_vars(f)) free.insert(v);
    for (const auto& r : free_relation_names(f)) free.insert(r.first);
    std::set<std::string> seen = free;
    Scopes scopes;
    return rename(f, seen, scopes);
  }

  Prenexed pnx(const Formula& f, bool positive) {
    if (!has_so_quantifier(f)) return {{}, positive ? f : Formula::negation(f)};
    switch (f.kind()) {
      case FormulaKind::Not:
        return pnx(f.sub(), !positive);
      case FormulaKind::And:
      case FormulaKind::Or: {
        const bool is_and = (f.kind() == FormulaKind::And) == positive;
        return combine(pnx(f.lhs(), positive), pnx(f.rhs(), positive), is_and);
      }
      case FormulaKind::Implies:
        // a -> b is ~a | b
        return combine(pnx(f.lhs(), !positive), pnx(f.rhs(), positive), !positive);
      case FormulaKind::Iff:
        return pnx(Formula::conj(Formula::implies(f.lhs(), f.rhs()),
                                 Formula::implies(f.rhs(), f.lhs())),
                   positive);
      case FormulaKind::ExistsFO:
      case FormulaKind::ForallFO: {
        const bool exists = (f.kind() == FormulaKind::ExistsFO) == positive;
        Prenexed inner = pnx(f.sub(), positive);
        // Q x Q' X: same kinds commute; otherwise the relation absorbs x as
        // a new first coordinate (ALL x EX X^k  ~>  EX X^(k+1) ALL x).
        for (auto& b : inner.prefix) {
          if (b.exists != exists) {
            inner.matrix = raise(inner.matrix, b.name, f.name());
            ++b.arity;
          }
        }
        inner.matrix = exists ? Formula::exists(f.name(), inner.matrix)
                              : Formula::forall(f.name(), inner.matrix);
        return inner;
      }
      case FormulaKind::ExistsSO:
      case FormulaKind::ForallSO: {
        const bool exists = (f.kind() == FormulaKind::ExistsSO) == positive;
        Prenexed inner = pnx(f.sub(), positive);
        inner.prefix.insert(inner.prefix.begin(), Binder{exists, f.name(), f.arity()});
        return inner;
      }
      default:
        return {{}, positive ? f : Formula::negation(f)};
    }
  }

 private:
  using Scope = std::map<std::string, std::vector<std::string>>;
  struct Scopes {
    Scope fo;
    Scope so;
  };

  static std::string lookup(const Scope& scope, const std::string& n) {
    auto it = scope.find(n);
    return it == scope.end() || it->second.empty() ? n : it->second.back();
  }

  Formula rename(const Formula& f, std::set<std::string>& seen, Scopes& scopes) {
    switch (f.kind()) {
      case FormulaKind::Atom: {
        std::vector<std::string> args;
        for (const auto& a : f.args()) args.push_back(lookup(scopes.fo, a));
        return Formula::atom(lookup(scopes.so, f.name()), std::move(args));
      }
      case FormulaKind::Eq:
        return Formula::eq(lookup(scopes.fo, f.args()[0]), lookup(scopes.fo, f.args()[1]));
      case FormulaKind::Not:
        return Formula::negation(rename(f.sub(), seen, scopes));
      default:
        break;
    }
    if (f.is_quantifier()) {
      std::string name = f.name();
      if (!seen.insert(name).second) name = fresh(f.name());
      Scope& scope = f.is_so_quantifier() ? scopes.so : scopes.fo;
      scope[f.name()].push_back(name);
      Formula body = rename(f.sub(), seen, scopes);
      scope[f.name()].pop_back();
      return rebuild_quantifier(f, name, body);
    }
    Formula l = rename(f.lhs(), seen, scopes);
    Formula r = rename(f.rhs(), seen, scopes);
    return rebuild_binary(f, l, r);
  }

  // Matrix rewrites. Matrices carry no second-order binders.
  static Formula map_atoms(const Formula& f, const std::string& rel,
                           const std::function<Formula(const Formula&)>& fn) {
    switch (f.kind()) {
      case FormulaKind::Atom:
        return f.name() == rel ? fn(f) : f;
      case FormulaKind::Eq:
        return f;
      case FormulaKind::Not:
        return Formula::negation(map_atoms(f.sub(), rel, fn));
      default:
        break;
    }
    if (f.is_quantifier()) return rebuild_quantifier(f, f.name(), map_atoms(f.sub(), rel, fn));
    return rebuild_binary(f, map_atoms(f.lhs(), rel, fn), map_atoms(f.rhs(), rel, fn));
  }

  static Formula raise(const Formula& m, const std::string& rel, const std::string& var) {
    return map_atoms(m, rel, [&](const Formula& a) {
      std::vector<std::string> args{var};
      args.insert(args.end(), a.args().begin(), a.args().end());
      return Formula::atom(a.name(), std::move(args));
    });
  }

  static Formula rename_relation(const Formula& m, const std::string& from, const std::string& to) {
    return map_atoms(m, from, [&](const Formula& a) { return Formula::atom(to, a.args()); });
  }

  static std::vector<std::vector<Binder>> blocks(const std::vector<Binder>& prefix) {
    std::vector<std::vector<Binder>> out;
    for (const auto& b : prefix) {
      if (out.empty() || out.back().front().exists != b.exists) out.emplace_back();
      out.back().push_back(b);
    }
    return out;
  }

  Prenexed combine(Prenexed l, Prenexed r, bool is_and) {
    std::set<std::string> left_names;
    for (const auto& b : l.prefix) left_names.insert(b.name);
    for (auto& b : r.prefix) {
      if (left_names.count(b.name)) {
        std::string renamed = fresh(b.name);
        r.matrix = rename_relation(r.matrix, b.name, renamed);
        b.name = renamed;
      }
    }
    // Interleave blocks so that equal kinds share a block where possible;
    // binders on different sides never share variables, so any interleaving
    // preserving each side's order is equivalent.
    auto lb = blocks(l.prefix);
    auto rb = blocks(r.prefix);
    std::vector<Binder> merged;
    std::size_t i = 0, j = 0;
    auto emit = [&](const std::vector<Binder>& blk) {
      merged.insert(merged.end(), blk.begin(), blk.end());
    };
    while (i < lb.size() && j < rb.size()) {
      if (lb[i].front().exists == rb[j].front().exists) {
        emit(lb[i++]);
        emit(rb[j++]);
      } else if (lb.size() - i >= rb.size() - j) {
        emit(lb[i++]);
      } else {
        emit(rb[j++]);
      }
    }
    while (i < lb.size()) emit(lb[i++]);
    while (j < rb.size()) emit(rb[j++]);
    Formula m = is_and ? Formula::conj(l.matrix, r.matrix) : Formula::disj(l.matrix, r.matrix);
    return {std::move(merged), std::move(m)};
  }

  std::set<std::string> used_;
};

}  // namespace

Formula prenex_so(const Formula& f) {
  Formula closed = universal_closure(f);
  if (classify(closed).is_prenex()) return closed;
  Prenexer p(closed);
  Prenexed out = p.pnx(p.rename_apart(closed), true);
  Formula result = out.matrix;
  for (auto it = out.prefix.rbegin(); it != out.prefix.rend(); ++it) {
    result = it->exists ? Formula::exists_so(it->name, it->arity, result)
                        : Formula::forall_so(it->name, it->arity, result);
  }
  return result;
}

}  // namespace solab
