// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "solab/types.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "../eval/evaluator.hpp"
#include "solab/error.hpp"

namespace solab {

const char* const kPoolScope =
    "types are computed relative to the given pool of structures; types realized only outside the "
    "pool are invisible, and isomorphic ultrapowers are replaced by equality of realized types";

TypeContext::TypeContext(std::vector<int> arities, std::vector<Formula> fragment)
    : arities_(std::move(arities)) {
  for (int a : arities_)
    if (a < 1) throw InputError("relation variable arities must be positive");
  for (auto& f : fragment) {
    if (auto free = free_fo_vars(f); !free.empty())
      throw ValidationError(ValidationError::Kind::NotClosed,
                            "type formula '" + f.to_string() + "' has free variable '" + free.front() + "'");
    for (const auto& [name, arity] : free_relation_names(f)) {
      for (std::size_t i = 0; i < arities_.size(); ++i) {
        if (name == variable(i) && arity != arities_[i])
          throw ValidationError(ValidationError::Kind::ArityMismatch,
                                name + " is declared with arity " + std::to_string(arities_[i]) +
                                    " but used with arity " + std::to_string(arity));
      }
    }
    if (std::find(fragment_.begin(), fragment_.end(), f) != fragment_.end())
      throw ValidationError(ValidationError::Kind::Duplicate,
                            "type fragment lists '" + f.to_string() + "' twice");
    fragment_.push_back(std::move(f));
  }
}

std::string TwoType::to_string() const {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

std::vector<RealizedType> realized_types(const FiniteStructure& a, const TypeContext& ctx,
                                         std::uint64_t budget) {
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  std::vector<Relation> rels;
  for (int k : ctx.arities()) {
    rels.emplace_back(k, a.universe());
    widths.push_back(rels.back().capacity());
    total += widths.back();
  }
  if (total >= 63 || (std::uint64_t{1} << total) > budget)
    throw BudgetExceeded("type enumeration needs 2^" + std::to_string(total) +
                         " relation assignments, budget is " + std::to_string(budget));

  std::vector<std::pair<std::string, int>> free_rel;
  for (std::size_t i = 0; i < ctx.arities().size(); ++i)
    free_rel.emplace_back(TypeContext::variable(i), ctx.arities()[i]);
  std::vector<detail::CompiledFormula> compiled;
  for (const auto& f : ctx.fragment()) {
    // Only the Xs a formula mentions get slots; keep slot numbers aligned by
    // declaring all of them.
    compiled.emplace_back(f, a, std::vector<std::string>{}, free_rel);
  }

  std::map<TwoType, std::vector<Relation>> found;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << total); ++c) {
    std::uint64_t bits = c;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      rels[i].assign_bits(bits);
      bits >>= widths[i];
    }
    TwoType t;
    for (const auto& cf : compiled) {
      detail::Evaluator ev(cf, a, EvalOptions{});
      for (std::size_t i = 0; i < rels.size(); ++i) ev.set_relation(static_cast<int>(i), &rels[i]);
      t.bits.push_back(ev.run());
    }
    found.try_emplace(std::move(t), rels);
  }
  std::vector<RealizedType> out;
  for (auto& [t, w] : found) out.push_back({t, std::move(w)});
  return out;
}

bool omits(const FiniteStructure& a, const TwoType& p, const TypeContext& ctx) {
  if (p.bits.size() != ctx.fragment().size())
    throw InputError("type length does not match the context fragment");
  for (const auto& r : realized_types(a, ctx))
    if (r.type == p) return false;
  return true;
}

namespace {

std::set<TwoType> type_set(const FiniteStructure& a, const TypeContext& ctx) {
  std::set<TwoType> s;
  for (auto& r : realized_types(a, ctx)) s.insert(std::move(r.type));
  return s;
}

}  // namespace

bool member_up_to_iso(const FiniteStructure& a, const std::vector<FiniteStructure>& k) {
  return std::any_of(k.begin(), k.end(), [&](const auto& b) {
    return a.signature() == b.signature() && find_isomorphism(a, b).has_value();
  });
}

std::vector<TwoType> omitted_by_all(const std::vector<FiniteStructure>& k,
                                    const std::vector<FiniteStructure>& pool,
                                    const TypeContext& ctx) {
  std::set<TwoType> in_k;
  for (const auto& a : k) in_k.merge(type_set(a, ctx));
  std::set<TwoType> out;
  for (const auto& b : pool)
    for (const auto& t : type_set(b, ctx))
      if (!in_k.count(t)) out.insert(t);
  return {out.begin(), out.end()};
}

OmissionReport check_omission_axiomatization(const std::vector<FiniteStructure>& k,
                                             const std::vector<TwoType>& pi,
                                             const std::vector<FiniteStructure>& pool,
                                             const TypeContext& ctx) {
  OmissionReport report;
  const std::set<TwoType> pi_set(pi.begin(), pi.end());
  std::set<TwoType> flagged;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (const auto& t : type_set(k[i], ctx)) {
      if (pi_set.count(t) && flagged.insert(t).second) report.realized_in_k.emplace_back(t, i);
    }
  }
  std::sort(report.realized_in_k.begin(), report.realized_in_k.end());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (member_up_to_iso(pool[i], k)) continue;
    const auto types = type_set(pool[i], ctx);
    const bool hits = std::any_of(types.begin(), types.end(), [&](const auto& t) { return pi_set.count(t) > 0; });
    if (!hits) report.unrealizing.push_back(i);
  }
  return report;
}

PropertyAReport property_A_check(const std::vector<FiniteStructure>& k,
                                 const std::vector<FiniteStructure>& pool, const TypeContext& ctx) {
  std::set<TwoType> in_k;
  for (const auto& a : k) in_k.merge(type_set(a, ctx));
  PropertyAReport report;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto types = type_set(pool[i], ctx);
    const bool covered = std::all_of(types.begin(), types.end(), [&](const auto& t) { return in_k.count(t) > 0; });
    if (covered && !member_up_to_iso(pool[i], k)) report.counterexamples.push_back(i);
  }
  return report;
}

}  // namespace solab
