// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solab/structure.hpp"

namespace solab::detail {

/// Relation universe for Henkin-style evaluation: arity -> admissible relations.
using RelationUniverse = std::map<int, std::vector<Relation>>;

struct CNode {
  FormulaKind kind;
  int lhs = -1;
  int rhs = -1;
  // Atom: either a fixed structure relation or a relation slot.
  const Relation* fixed = nullptr;
  int rel_slot = -1;
  std::vector<int> args;  // FO slots (atoms and equalities)
  int var_slot = -1;      // FO quantifiers
  int arity = 0;          // SO quantifiers and atoms
  std::string label;      // binder name, for diagnostics
  bool has_so = false;
  // Every SO quantifier below is effectively existential when this node is
  // evaluated positively (resp. negatively).
  bool elig_pos = true;
  bool elig_neg = true;
};

/// A formula resolved against one structure: variables become slots, signature
/// atoms point at the structure's relations.
class CompiledFormula {
 public:
  /// `free_fo` and `free_rel` fix the slot order of the free variables; any
  /// other unresolved name is an EvalError.
  CompiledFormula(const Formula& f, const FiniteStructure& a,
                  const std::vector<std::string>& free_fo,
                  const std::vector<std::pair<std::string, int>>& free_rel);

  const std::vector<CNode>& nodes() const { return nodes_; }
  int root() const { return root_; }
  int fo_slots() const { return fo_slots_; }
  int rel_slots() const { return rel_slots_; }

 private:
  int compile(const Formula& f, std::vector<std::pair<std::string, int>>& fo_scope,
              std::vector<std::pair<std::string, int>>& so_scope);

  const FiniteStructure& structure_;
  std::map<std::string, int> free_fo_;
  std::map<std::string, std::pair<int, int>> free_rel_;  // name -> (slot, arity)
  std::vector<int> rel_arity_;  // by relation slot
  std::vector<CNode> nodes_;
  int root_ = -1;
  int fo_slots_ = 0;
  int rel_slots_ = 0;
};

class Evaluator {
 public:
  /// With `henkin` set, relation quantifiers range over that universe only and
  /// the grounding path is disabled.
  Evaluator(const CompiledFormula& cf, const FiniteStructure& a, const EvalOptions& options,
            const RelationUniverse* henkin = nullptr);

  void set_element(int slot, Element e) { env_[static_cast<std::size_t>(slot)] = e; }
  void set_relation(int slot, const Relation* r) { rels_[static_cast<std::size_t>(slot)] = r; }

  bool run() { return eval(cf_.root()); }

 private:
  bool eval(int node);
  bool eval_so(const CNode& n, int node);
  std::optional<bool> try_ground(int node);

  const CompiledFormula& cf_;
  const FiniteStructure& a_;
  EvalOptions options_;
  const RelationUniverse* henkin_;
  std::vector<Element> env_;
  std::vector<const Relation*> rels_;
  std::vector<std::size_t> pow_;  // n^i
};

/// Compiles and runs `f` on `a`. Free variables come from `asg`; free relation
/// names not in the assignment must be signature symbols.
bool evaluate(const FiniteStructure& a, const Formula& f, const Assignment& asg,
              const EvalOptions& options, const RelationUniverse* henkin = nullptr);

}  // namespace solab::detail
