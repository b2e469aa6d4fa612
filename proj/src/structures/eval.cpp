// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "../eval/evaluator.hpp"
#include "solab/error.hpp"
#include "solab/structure.hpp"

namespace solab {

namespace detail {

bool evaluate(const FiniteStructure& a, const Formula& f, const Assignment& asg,
              const EvalOptions& options, const RelationUniverse* henkin) {
  const auto free_fo = free_fo_vars(f);
  std::vector<std::pair<std::string, int>> free_rel;
  for (const auto& [name, arity] : free_relation_names(f)) {
    auto it = asg.relations.find(name);
    if (it == asg.relations.end()) continue;
    if (it->second.arity() != arity)
      throw EvalError("relation variable '" + name + "' is used with arity " + std::to_string(arity) +
                      " but assigned a relation of arity " + std::to_string(it->second.arity()));
    if (it->second.universe() != a.universe())
      throw EvalError("relation assigned to '" + name + "' lives on a different universe");
    free_rel.emplace_back(name, arity);
  }
  CompiledFormula cf(f, a, free_fo, free_rel);
  Evaluator ev(cf, a, options, henkin);
  for (std::size_t i = 0; i < free_fo.size(); ++i) {
    auto it = asg.elements.find(free_fo[i]);
    if (it == asg.elements.end()) throw EvalError("unassigned variable '" + free_fo[i] + "'");
    if (it->second < 0 || it->second >= a.universe())
      throw EvalError("variable '" + free_fo[i] + "' is assigned an element outside the universe");
    ev.set_element(static_cast<int>(i), it->second);
  }
  for (std::size_t i = 0; i < free_rel.size(); ++i)
    ev.set_relation(static_cast<int>(i), &asg.relations.at(free_rel[i].first));
  return ev.run();
}

}  // namespace detail

bool eval_fo(const FiniteStructure& a, const Formula& f, const Assignment& asg) {
  if (has_so_quantifier(f))
    throw EvalError("formula has relation quantifiers; first-order evaluation does not apply");
  return detail::evaluate(a, f, asg, EvalOptions{});
}

bool eval_so_full(const FiniteStructure& a, const Formula& f, const EvalOptions& options,
                  const Assignment& asg) {
  return detail::evaluate(a, f, asg, options);
}

}  // namespace solab
