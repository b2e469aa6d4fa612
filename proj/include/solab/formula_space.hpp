// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solab/structure.hpp"
#include "solab/ultra.hpp"

namespace solab {

/// Ordered, duplicate-free list of sentences. Position i is the index used by
/// the metric.
class Fragment {
 public:
  Fragment() = default;
  /// Throws ValidationError (Duplicate or NotClosed).
  explicit Fragment(std::vector<Formula> formulas);
  static Fragment parse(const std::vector<std::string>& texts);

  /// Appends unless an equal formula is present; returns whether it was added.
  /// Throws ValidationError for formulas with free first-order variables.
  bool add(const Formula& f);

  std::size_t size() const { return formulas_.size(); }
  bool empty() const { return formulas_.empty(); }
  const Formula& operator[](std::size_t i) const { return formulas_[i]; }
  const std::vector<Formula>& formulas() const { return formulas_; }
  auto begin() const { return formulas_.begin(); }
  auto end() const { return formulas_.end(); }

 private:
  std::vector<Formula> formulas_;
};

/// Bit i is the truth value of fragment member i.
class TheoryVector {
 public:
  TheoryVector() = default;
  explicit TheoryVector(std::vector<bool> bits) : bits_(std::move(bits)) {}
  /// From a "0101" string; throws InputError.
  static TheoryVector from_string(const std::string& s);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<bool>& bits() const { return bits_; }
  std::string to_string() const;

  auto operator<=>(const TheoryVector&) const = default;

 private:
  std::vector<bool> bits_;
};

/// A value in {0} u {2^-i : i >= 0}, kept exact.
class Distance {
 public:
  static Distance zero() { return Distance(); }
  static Distance pow2_neg(int i) { return Distance(i); }

  bool is_zero() const { return !index_.has_value(); }
  /// i for 2^-i; nullopt for zero.
  std::optional<int> exponent() const { return index_; }
  double value() const;
  /// "0", "1", "1/2", "1/8", ...
  std::string to_string() const;

  bool operator==(const Distance&) const = default;
  std::strong_ordering operator<=>(const Distance& other) const;

 private:
  Distance() = default;
  explicit Distance(int i) : index_(i) {}
  std::optional<int> index_;
};

/// 2^-i for the first disagreement index i, 0 for equal vectors. Throws
/// InputError on length mismatch.
Distance ultrametric(const TheoryVector& x, const TheoryVector& y);

/// Distinct vectors in sorted order; witnesses[k] lists the input positions
/// of the structures realizing vectors[k].
struct VectorSet {
  std::vector<TheoryVector> vectors;
  std::vector<std::vector<std::size_t>> witnesses;

  bool contains(const TheoryVector& v) const;
};

TheoryVector theory_vector(const FiniteStructure& a, const Fragment& gamma,
                           const EvalOptions& options = {});
TheoryVector theory_vector(const HenkinModel& m, const Fragment& gamma);

VectorSet vector_set(const std::vector<FiniteStructure>& structures, const Fragment& gamma,
                     const EvalOptions& options = {});

/// Minimum pairwise distance. Throws InputError when either set is empty.
Distance set_distance(const VectorSet& s, const VectorSet& t);

bool intersects(const VectorSet& s, const VectorSet& t);

/// A disjunction, over the vectors of K, of the conjunction of matching
/// fragment literals; nullopt when the vector sets of K and L meet.
std::optional<Formula> find_separating_formula(const std::vector<FiniteStructure>& k,
                                               const std::vector<FiniteStructure>& l,
                                               const Fragment& gamma,
                                               const EvalOptions& options = {});

/// Adds negations and binary conjunctions/disjunctions of members, `depth`
/// times. The input stays a prefix; duplicates are dropped. Throws
/// BudgetExceeded past `max_size` members.
Fragment boolean_closure(const Fragment& gamma, int depth, std::size_t max_size = 4096);

}  // namespace solab
