// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace solab {

class Signature;  // signature.hpp

enum class FormulaKind {
  Atom,
  Eq,
  Not,
  And,
  Or,
  Implies,
  Iff,
  ExistsFO,
  ForallFO,
  ExistsSO,
  ForallSO,
};

/// Immutable second-order formula over a relational signature.
///
/// Formula is a cheap handle to a shared, immutable node; copies share
/// structure. Equality is structural (AST equality), not logical.
class Formula {
 public:
  struct Node;

  static Formula atom(std::string relation, std::vector<std::string> args);
  static Formula eq(std::string left, std::string right);
  static Formula neq(std::string left, std::string right);
  static Formula negation(Formula sub);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula implies(Formula left, Formula right);
  static Formula iff(Formula left, Formula right);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);
  static Formula exists_so(std::string relvar, int arity, Formula body);
  static Formula forall_so(std::string relvar, int arity, Formula body);

  /// Left-nested conjunction / disjunction; the list must be nonempty.
  static Formula conj_all(const std::vector<Formula>& parts);
  static Formula disj_all(const std::vector<Formula>& parts);

  FormulaKind kind() const;

  /// Relation name for atoms, bound variable for quantifiers.
  const std::string& name() const;
  /// Atom arguments, or the two sides of an equality.
  const std::vector<std::string>& args() const;
  /// Declared arity of a second-order binder, argument count of an atom.
  int arity() const;

  /// Operand of Not, body of quantifiers.
  const Formula& sub() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_quantifier() const;
  bool is_so_quantifier() const;
  bool is_binary() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  std::vector<std::string> args;
  int arity = 0;
  std::vector<Formula> children;
};

// Syntax ------------------------------------------------------------------

/// Parses the concrete syntax. Throws SyntaxError (with line/column) on
/// malformed text and ValidationError(ArityMismatch) when a relation name is
/// applied with two argument counts in the same scope.
Formula parse_formula(std::string_view text);

// Hierarchy ---------------------------------------------------------------

class HierarchyLabel {
 public:
  enum class Kind { Delta0, Sigma, Pi, NonPrenex };

  static HierarchyLabel delta0() { return HierarchyLabel(Kind::Delta0, 0); }
  static HierarchyLabel sigma(int n) { return HierarchyLabel(Kind::Sigma, n); }
  static HierarchyLabel pi(int n) { return HierarchyLabel(Kind::Pi, n); }
  static HierarchyLabel non_prenex() { return HierarchyLabel(Kind::NonPrenex, 0); }

  Kind kind() const { return kind_; }
  int level() const { return level_; }
  bool is_prenex() const { return kind_ != Kind::NonPrenex; }

  bool operator==(const HierarchyLabel&) const = default;
  std::string to_string() const;

 private:
  HierarchyLabel(Kind kind, int level) : kind_(kind), level_(level) {}
  Kind kind_;
  int level_;
};

HierarchyLabel classify(const Formula& f);

/// Equivalent formula whose second-order quantifiers form a prefix.
/// Free first-order variables are universally closed first.
Formula prenex_so(const Formula& f);

/// Binds every free first-order variable with ALL, in first-occurrence order
/// (the first free variable becomes the outermost quantifier).
Formula universal_closure(const Formula& f);

// Queries -----------------------------------------------------------------

/// Free first-order variables in first-occurrence order.
std::vector<std::string> free_fo_vars(const Formula& f);
/// Relation names used in atoms that are not bound by an enclosing
/// second-order quantifier, with their argument counts, in first-occurrence
/// order.
std::vector<std::pair<std::string, int>> free_relation_names(const Formula& f);
bool has_so_quantifier(const Formula& f);
/// Largest arity over second-order binders; 0 when there are none.
int max_so_arity(const Formula& f);
int quantifier_depth(const Formula& f);

/// Replaces the second-order quantifiers of a prenex formula by their duals,
/// leaving the first-order matrix untouched.
Formula dualize_so_prefix(const Formula& f);

// Validation --------------------------------------------------------------

struct ValidateOptions {
  bool allow_free_variables = true;
  /// Free relation variables admitted alongside the signature (e.g. the X_i
  /// of a type context), name -> arity.
  std::map<std::string, int> relation_variables;
};

struct ValidationReport {
  std::vector<std::string> free_variables;
  /// Second-order binders that reuse a signature symbol's name.
  std::vector<std::string> shadowed;
};

/// Throws ValidationError on unknown symbols, arity mismatches and, when
/// disallowed, free first-order variables.
ValidationReport validate(const Formula& f, const Signature& sig,
                          const ValidateOptions& options = {});

}  // namespace solab
