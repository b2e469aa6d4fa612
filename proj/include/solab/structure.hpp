// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solab/formula.hpp"
#include "solab/signature.hpp"

namespace solab {

using Element = int;
using Tuple = std::vector<Element>;

/// A k-ary relation on {0..n-1}, stored as a dense bitset indexed by the
/// row-major code of each tuple (first coordinate most significant), so the
/// bit order is the lexicographic order of tuples.
class Relation {
 public:
  Relation() = default;
  /// Empty relation. Throws BudgetExceeded when n^arity overflows.
  Relation(int arity, int universe);

  /// The relation whose bit c is bit c of `bits`; requires n^arity <= 64.
  static Relation from_bits(int arity, int universe, std::uint64_t bits);
  static Relation from_tuples(int arity, int universe, const std::vector<Tuple>& tuples);
  static Relation full(int arity, int universe);

  int arity() const { return arity_; }
  int universe() const { return universe_; }
  /// n^arity, the number of candidate tuples.
  std::size_t capacity() const { return capacity_; }

  std::size_t encode(std::span<const Element> tuple) const;
  Tuple decode(std::size_t code) const;

  bool contains(std::span<const Element> tuple) const { return test(encode(tuple)); }
  bool test(std::size_t code) const { return (words_[code >> 6] >> (code & 63)) & 1u; }
  void set(std::size_t code, bool value = true);
  void insert(std::span<const Element> tuple) { set(encode(tuple)); }
  /// Overwrites the membership bits; requires capacity() <= 64.
  void assign_bits(std::uint64_t bits);

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  /// Member tuples in lexicographic order.
  std::vector<Tuple> tuples() const;

  bool operator==(const Relation&) const = default;
  std::strong_ordering operator<=>(const Relation& other) const;

 private:
  int arity_ = 0;
  int universe_ = 0;
  std::size_t capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Relational structure on {0..n-1}, n >= 1. Every signature symbol is
/// interpreted (possibly by the empty relation).
class FiniteStructure {
 public:
  FiniteStructure(Signature signature, int universe);

  const Signature& signature() const { return signature_; }
  int universe() const { return universe_; }

  const Relation& relation(const std::string& name) const;
  /// Replaces an interpretation; the relation must match arity and universe.
  void set_relation(const std::string& name, Relation rel);
  void add_tuple(const std::string& name, const Tuple& tuple);

  const std::map<std::string, Relation>& relations() const { return relations_; }

  bool operator==(const FiniteStructure&) const = default;

 private:
  Signature signature_;
  int universe_;
  std::map<std::string, Relation> relations_;
};

/// Values for free variables: first-order variables to elements and relation
/// variables to relations of matching arity on the same universe.
struct Assignment {
  std::map<std::string, Element> elements;
  std::map<std::string, Relation> relations;
};

struct EvalOptions {
  /// Cap on candidate relations enumerated for one second-order quantifier.
  std::uint64_t relation_budget = std::uint64_t{1} << 24;
  /// Decide homogeneous second-order blocks by grounding to CNF and running
  /// the SAT search instead of enumerating candidates.
  bool use_solver = true;
  /// Cap on clauses produced by one grounding; larger instances fall back to
  /// enumeration.
  std::size_t ground_clause_budget = std::size_t{1} << 22;
};

/// Tarski satisfaction for first-order formulas (free relation variables are
/// read from the assignment). Throws EvalError for second-order quantifiers,
/// unassigned variables and arity mismatches.
bool eval_fo(const FiniteStructure& a, const Formula& f, const Assignment& asg = {});

/// Full second-order semantics: relation quantifiers range over every relation
/// of the declared arity. Throws BudgetExceeded naming the quantifier when an
/// enumeration would need more than options.relation_budget candidates.
bool eval_so_full(const FiniteStructure& a, const Formula& f, const EvalOptions& options = {},
                  const Assignment& asg = {});

/// Lexicographically least isomorphism a -> b (as the image sequence), or
/// nullopt. Throws InputError if the signatures differ.
std::optional<std::vector<Element>> find_isomorphism(const FiniteStructure& a,
                                                     const FiniteStructure& b);

/// Applies a bijection of {0..n-1} to every relation.
FiniteStructure permute(const FiniteStructure& a, const std::vector<Element>& map);

/// All structures of the given size, in counter order: the low bits of the
/// counter are the tuple bits of the first symbol (name order), and so on.
/// Throws BudgetExceeded past `budget`.
std::vector<FiniteStructure> all_structures(const Signature& sig, int universe,
                                            std::uint64_t budget = std::uint64_t{1} << 24);

/// Keeps the first member of each isomorphism class, preserving order.
std::vector<FiniteStructure> isomorphism_representatives(const std::vector<FiniteStructure>& in);

/// Models of a closed formula of size <= nmax, one per isomorphism class,
/// ordered by size and then by enumeration order.
std::vector<FiniteStructure> models_up_to(const Formula& f, const Signature& sig, int nmax,
                                          const EvalOptions& options = {});

}  // namespace solab
