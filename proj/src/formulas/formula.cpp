// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "solab/formula.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "solab/error.hpp"
#include "solab/signature.hpp"

namespace solab {

namespace {

Formula::Node make_node(FormulaKind kind, std::string name = {},
                        std::vector<std::string> args = {}, int arity = 0) {
  Formula::Node n;
  n.kind = kind;
  n.name = std::move(name);
  n.args = std::move(args);
  n.arity = arity;
  return n;
}

// Binding strength used by the printer; higher binds tighter.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      return 0;
    case FormulaKind::Iff:
      return 1;
    case FormulaKind::Implies:
      return 2;
    case FormulaKind::Or:
      return 3;
    case FormulaKind::And:
      return 4;
    default:
      return 5;
  }
}

void print(const Formula& f, int min_prec, std::string& out);

void print_binary(const Formula& f, const char* op, int lprec, int rprec, std::string& out) {
  print(f.lhs(), lprec, out);
  out += op;
  print(f.rhs(), rprec, out);
}

void print(const Formula& f, int min_prec, std::string& out) {
  const bool wrap = precedence(f) < min_prec;
  if (wrap) out += '(';
  switch (f.kind()) {
    case FormulaKind::Atom: {
      out += f.name();
      out += '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ',';
        out += f.args()[i];
      }
      out += ')';
      break;
    }
    case FormulaKind::Eq:
      out += f.args()[0] + " = " + f.args()[1];
      break;
    case FormulaKind::Not:
      if (f.sub().kind() == FormulaKind::Eq) {
        out += f.sub().args()[0] + " != " + f.sub().args()[1];
      } else {
        out += '~';
        print(f.sub(), 5, out);
      }
      break;
    case FormulaKind::And:
      print_binary(f, " & ", 4, 5, out);
      break;
    case FormulaKind::Or:
      print_binary(f, " | ", 3, 4, out);
      break;
    case FormulaKind::Implies:
      print_binary(f, " -> ", 3, 2, out);
      break;
    case FormulaKind::Iff:
      print_binary(f, " <-> ", 1, 2, out);
      break;
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      out += f.kind() == FormulaKind::ExistsFO ? "EX " : "ALL ";
      out += f.name();
      out += ' ';
      print(f.sub(), 0, out);
      break;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      out += f.kind() == FormulaKind::ExistsSO ? "EX2 " : "ALL2 ";
      out += f.name() + ":" + std::to_string(f.arity()) + " ";
      print(f.sub(), 0, out);
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

// Construction ------------------------------------------------------------

Formula Formula::atom(std::string relation, std::vector<std::string> args) {
  assert(!args.empty());
  const int n = static_cast<int>(args.size());
  return Formula(std::make_shared<const Node>(
      make_node(FormulaKind::Atom, std::move(relation), std::move(args), n)));
}

Formula Formula::eq(std::string left, std::string right) {
  return Formula(std::make_shared<const Node>(
      make_node(FormulaKind::Eq, {}, {std::move(left), std::move(right)})));
}

Formula Formula::neq(std::string left, std::string right) {
  return negation(eq(std::move(left), std::move(right)));
}

Formula Formula::negation(Formula sub) {
  auto n = make_node(FormulaKind::Not);
  n.children.push_back(std::move(sub));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

namespace {
Formula::Node binary(FormulaKind kind, Formula l, Formula r) {
  auto n = make_node(kind);
  n.children.push_back(std::move(l));
  n.children.push_back(std::move(r));
  return n;
}
}  // namespace

Formula Formula::conj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(binary(FormulaKind::And, std::move(l), std::move(r))));
}
Formula Formula::disj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(binary(FormulaKind::Or, std::move(l), std::move(r))));
}
Formula Formula::implies(Formula l, Formula r) {
  return Formula(
      std::make_shared<const Node>(binary(FormulaKind::Implies, std::move(l), std::move(r))));
}
Formula Formula::iff(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(binary(FormulaKind::Iff, std::move(l), std::move(r))));
}

Formula Formula::exists(std::string var, Formula body) {
  auto n = make_node(FormulaKind::ExistsFO, std::move(var));
  n.children.push_back(std::move(body));
  return Formula(std::make_shared<const Node>(std::move(n)));
}
Formula Formula::forall(std::string var, Formula body) {
  auto n = make_node(FormulaKind::ForallFO, std::move(var));
  n.children.push_back(std::move(body));
  return Formula(std::make_shared<const Node>(std::move(n)));
}
Formula Formula::exists_so(std::string relvar, int arity, Formula body) {
  assert(arity >= 1);
  auto n = make_node(FormulaKind::ExistsSO, std::move(relvar), {}, arity);
  n.children.push_back(std::move(body));
  return Formula(std::make_shared<const Node>(std::move(n)));
}
Formula Formula::forall_so(std::string relvar, int arity, Formula body) {
  assert(arity >= 1);
  auto n = make_node(FormulaKind::ForallSO, std::move(relvar), {}, arity);
  n.children.push_back(std::move(body));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::conj_all(const std::vector<Formula>& parts) {
  assert(!parts.empty());
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& parts) {
  assert(!parts.empty());
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

// Access ------------------------------------------------------------------

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<std::string>& Formula::args() const { return node_->args; }
int Formula::arity() const { return node_->arity; }
const Formula& Formula::sub() const { return node_->children.at(0); }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }

bool Formula::is_quantifier() const {
  switch (kind()) {
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      return true;
    default:
      return false;
  }
}

bool Formula::is_so_quantifier() const {
  return kind() == FormulaKind::ExistsSO || kind() == FormulaKind::ForallSO;
}

bool Formula::is_binary() const {
  switch (kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return true;
    default:
      return false;
  }
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.kind == b.kind && a.name == b.name && a.args == b.args && a.arity == b.arity &&
         a.children == b.children;
}

std::string Formula::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

std::string HierarchyLabel::to_string() const {
  switch (kind_) {
    case Kind::Delta0:
      return "Delta0";
    case Kind::Sigma:
      return "Sigma(" + std::to_string(level_) + ")";
    case Kind::Pi:
      return "Pi(" + std::to_string(level_) + ")";
    case Kind::NonPrenex:
      return "NonPrenex";
  }
  return "NonPrenex";
}

// Queries -----------------------------------------------------------------

namespace {

void collect_free_fo(const Formula& f, std::vector<std::string>& bound,
                     std::vector<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Eq:
      for (const auto& a : f.args()) note(a);
      return;
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      bound.push_back(f.name());
      collect_free_fo(f.sub(), bound, out);
      bound.pop_back();
      return;
    case FormulaKind::Not:
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      collect_free_fo(f.sub(), bound, out);
      return;
    default:
      collect_free_fo(f.lhs(), bound, out);
      collect_free_fo(f.rhs(), bound, out);
  }
}

void collect_free_rel(const Formula& f, std::vector<std::string>& bound,
                      std::vector<std::pair<std::string, int>>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      if (std::find(bound.begin(), bound.end(), f.name()) != bound.end()) return;
      for (const auto& [name, arity] : out)
        if (name == f.name()) return;
      out.emplace_back(f.name(), f.arity());
      return;
    }
    case FormulaKind::Eq:
      return;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      bound.push_back(f.name());
      collect_free_rel(f.sub(), bound, out);
      bound.pop_back();
      return;
    case FormulaKind::Not:
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      collect_free_rel(f.sub(), bound, out);
      return;
    default:
      collect_free_rel(f.lhs(), bound, out);
      collect_free_rel(f.rhs(), bound, out);
  }
}

}  // namespace

std::vector<std::string> free_fo_vars(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free_fo(f, bound, out);
  return out;
}

std::vector<std::pair<std::string, int>> free_relation_names(const Formula& f) {
  std::vector<std::string> bound;
  std::vector<std::pair<std::string, int>> out;
  collect_free_rel(f, bound, out);
  return out;
}

bool has_so_quantifier(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Eq:
      return false;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      return true;
    case FormulaKind::Not:
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      return has_so_quantifier(f.sub());
    default:
      return has_so_quantifier(f.lhs()) || has_so_quantifier(f.rhs());
  }
}

int max_so_arity(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Eq:
      return 0;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      return std::max(f.arity(), max_so_arity(f.sub()));
    case FormulaKind::Not:
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      return max_so_arity(f.sub());
    default:
      return std::max(max_so_arity(f.lhs()), max_so_arity(f.rhs()));
  }
}

int quantifier_depth(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Eq:
      return 0;
    case FormulaKind::Not:
      return quantifier_depth(f.sub());
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      return 1 + quantifier_depth(f.sub());
    default:
      return std::max(quantifier_depth(f.lhs()), quantifier_depth(f.rhs()));
  }
}

Formula dualize_so_prefix(const Formula& f) {
  if (f.kind() == FormulaKind::ExistsSO)
    return Formula::forall_so(f.name(), f.arity(), dualize_so_prefix(f.sub()));
  if (f.kind() == FormulaKind::ForallSO)
    return Formula::exists_so(f.name(), f.arity(), dualize_so_prefix(f.sub()));
  return f;
}

Formula universal_closure(const Formula& f) {
  auto vars = free_fo_vars(f);
  Formula out = f;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = Formula::forall(*it, out);
  return out;
}

// Validation --------------------------------------------------------------

namespace {

struct Validator {
  const Signature& sig;
  const ValidateOptions& options;
  ValidationReport report;
  std::vector<std::string> fo_bound;
  std::vector<std::pair<std::string, int>> so_bound;

  void var(const std::string& v) {
    if (std::find(fo_bound.begin(), fo_bound.end(), v) != fo_bound.end()) return;
    if (!options.allow_free_variables)
      throw ValidationError(ValidationError::Kind::UnboundVariable, "unbound variable '" + v + "'");
    if (std::find(report.free_variables.begin(), report.free_variables.end(), v) ==
        report.free_variables.end())
      report.free_variables.push_back(v);
  }

  void mismatch(const std::string& name, int expected, int got) {
    throw ValidationError(ValidationError::Kind::ArityMismatch,
                          "arity mismatch for '" + name + "': expected " +
                              std::to_string(expected) + ", got " + std::to_string(got));
  }

  void walk(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom: {
        for (const auto& a : f.args()) var(a);
        for (auto it = so_bound.rbegin(); it != so_bound.rend(); ++it) {
          if (it->first == f.name()) {
            if (it->second != f.arity()) mismatch(f.name(), it->second, f.arity());
            return;
          }
        }
        if (auto rv = options.relation_variables.find(f.name());
            rv != options.relation_variables.end()) {
          if (rv->second != f.arity()) mismatch(f.name(), rv->second, f.arity());
          return;
        }
        if (auto a = sig.arity(f.name())) {
          if (*a != f.arity()) mismatch(f.name(), *a, f.arity());
          return;
        }
        throw ValidationError(ValidationError::Kind::UnknownSymbol,
                              "unknown relation symbol '" + f.name() + "'");
      }
      case FormulaKind::Eq:
        var(f.args()[0]);
        var(f.args()[1]);
        return;
      case FormulaKind::ExistsFO:
      case FormulaKind::ForallFO:
        fo_bound.push_back(f.name());
        walk(f.sub());
        fo_bound.pop_back();
        return;
      case FormulaKind::ExistsSO:
      case FormulaKind::ForallSO:
        if (sig.contains(f.name()) || options.relation_variables.count(f.name())) {
          if (std::find(report.shadowed.begin(), report.shadowed.end(), f.name()) ==
              report.shadowed.end())
            report.shadowed.push_back(f.name());
        }
        so_bound.emplace_back(f.name(), f.arity());
        walk(f.sub());
        so_bound.pop_back();
        return;
      case FormulaKind::Not:
        walk(f.sub());
        return;
      default:
        walk(f.lhs());
        walk(f.rhs());
    }
  }
};

}  // namespace

ValidationReport validate(const Formula& f, const Signature& sig, const ValidateOptions& options) {
  Validator v{sig, options, {}, {}, {}};
  v.walk(f);
  return std::move(v.report);
}

// Signature ---------------------------------------------------------------

Signature::Signature(std::initializer_list<std::pair<const std::string, int>> symbols) {
  for (const auto& [name, arity] : symbols) add(name, arity);
}

void Signature::add(const std::string& name, int arity) {
  if (arity < 1) throw InputError("relation '" + name + "' must have arity >= 1");
  auto [it, inserted] = symbols_.emplace(name, arity);
  if (!inserted && it->second != arity)
    throw InputError("relation '" + name + "' redeclared with a different arity");
}

std::optional<int> Signature::arity(const std::string& name) const {
  auto it = symbols_.find(name);
  if (it == symbols_.end()) return std::nullopt;
  return it->second;
}

}  // namespace solab
