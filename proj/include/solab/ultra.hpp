// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solab/structure.hpp"

namespace solab {

/// An ultrafilter on {0..m-1}. Finite index sets only carry principal
/// ultrafilters, but products keep their factors so that membership is decided
/// by the defining formula rather than by the principal shortcut.
class Ultrafilter {
 public:
  /// The ultrafilter of all subsets of {0..m-1} containing i0.
  static Ultrafilter principal(int index_size, int i0);
  /// F x G on I x J, with the pair (i,j) encoded as i*|J| + j.
  static Ultrafilter product(const Ultrafilter& f, const Ultrafilter& g);

  int index_size() const { return size_; }
  bool is_product() const { return left_ != nullptr; }
  const Ultrafilter& left() const { return *left_; }
  const Ultrafilter& right() const { return *right_; }

  /// X in U, with X given as a characteristic vector of length index_size().
  bool contains(const std::vector<bool>& set) const;
  /// The unique i with {i} in U, found through contains().
  int principal_element() const;

  /// "principal:i/m", products as "A x B".
  std::string to_string() const;

  bool operator==(const Ultrafilter& other) const;

 private:
  Ultrafilter() = default;
  int size_ = 0;
  int i0_ = 0;
  std::shared_ptr<const Ultrafilter> left_, right_;
};

/// Parses "principal:i", "principal:i/m" or "A x B". Missing sizes are inferred
/// from `family_size` (for products, at most one factor may omit its size).
/// Throws InputError.
Ultrafilter parse_ultrafilter(std::string_view text, std::optional<int> family_size = std::nullopt);

/// Every subset of {0..m-1} as a characteristic vector, in counter order.
std::vector<std::vector<bool>> all_subsets(int m);

struct UltraproductOptions {
  /// Cap on |prod A_i| for the explicit quotient.
  std::uint64_t product_budget = std::uint64_t{1} << 16;
  /// Build the explicit quotient and compare it against the principal fast path.
  bool verify = true;
};

struct UltraproductResult {
  FiniteStructure quotient;
  /// Quotient element -> index tuple representing its class (lexicographically
  /// least member).
  std::vector<std::vector<Element>> representatives;
  std::vector<int> factor_sizes;
  Ultrafilter filter;
  /// True when the explicit quotient was built and matched the fast path.
  bool verified = false;
};

/// Explicit quotient of the full product modulo U-almost-everywhere equality.
/// Classes are ordered by their value at the principal index. Throws
/// BudgetExceeded past options.product_budget and InputError on size or
/// signature mismatch.
UltraproductResult ultraproduct_explicit(const std::vector<FiniteStructure>& family,
                                         const Ultrafilter& u,
                                         const UltraproductOptions& options = {});

/// family[i0] with the canonical representatives; runs the explicit
/// construction as a check when options.verify is set and the product fits the
/// budget, and throws EvalError if the two disagree.
UltraproductResult ultraproduct(const std::vector<FiniteStructure>& family, const Ultrafilter& u,
                                const UltraproductOptions& options = {});

/// prod R_i / U on the quotient of `up`: a class tuple is in the result iff
/// the set of indices whose coordinates satisfy R_i is in U.
Relation recompose(const std::vector<Relation>& factors, const UltraproductResult& up);

/// Factor relations with recompose(factors) == r, or nullopt. The principal
/// factor is the pullback of r; all other factors are empty.
std::optional<std::vector<Relation>> decompose(const Relation& r, const UltraproductResult& up);

inline bool is_decomposable(const Relation& r, const UltraproductResult& up) {
  return decompose(r, up).has_value();
}

using RelationUniverse = std::map<int, std::vector<Relation>>;

/// A structure with a restricted universe of relations for each arity.
struct HenkinModel {
  FiniteStructure base;
  RelationUniverse upsilon;
  int arity_bound = 0;
  std::string provenance;
};

struct HenkinOptions {
  int arity_bound = 2;
  /// Above this many factor choices per arity, only the principal factor is
  /// varied (the others are fixed empty, which loses nothing at principal scale).
  std::uint64_t factor_budget = std::uint64_t{1} << 16;
  /// Cap on |upsilon(k)|.
  std::uint64_t relation_budget = std::uint64_t{1} << 16;
  UltraproductOptions ultraproduct;
};

/// The decomposable relations of the ultraproduct for each arity up to the
/// bound, deduplicated and sorted.
HenkinModel henkin_model(const std::vector<FiniteStructure>& family, const Ultrafilter& u,
                         const HenkinOptions& options = {});

/// Base structure with every relation of arity <= bound admitted.
HenkinModel full_henkin_model(const FiniteStructure& base, int arity_bound,
                              std::uint64_t relation_budget = std::uint64_t{1} << 16);

/// Henkin truth: second-order quantifiers range over upsilon only. Free
/// relation variables outside the signature are universally closed first.
/// Throws EvalError when a quantifier's arity is outside upsilon.
bool henkin_eval(const HenkinModel& m, const Formula& f);

struct LosReport {
  bool ultra_truth = false;
  bool large_set_truth = false;
  bool agree = false;
  std::vector<bool> factor_truths;
};

/// Compares Henkin truth in the ultraproduct with the U-largeness of
/// {i : A_i |= f}.
LosReport check_los(const std::vector<FiniteStructure>& family, const Ultrafilter& u,
                    const Formula& f, const EvalOptions& eval = {},
                    const HenkinOptions& henkin = {});

struct FubiniReport {
  FiniteStructure product_side;   // prod_{IxJ} A_ij / (F x G)
  FiniteStructure iterated_side;  // prod_J (prod_I A_ij / F) / G
  std::optional<std::vector<Element>> witness;
};

/// grid[i][j] for i in I, j in J. Both sides are built explicitly.
FubiniReport check_fubini(const std::vector<std::vector<FiniteStructure>>& grid,
                          const Ultrafilter& f, const Ultrafilter& g,
                          const UltraproductOptions& options = {});

struct Ultrachain {
  std::vector<FiniteStructure> stages;  // stages[0] = A0
  std::vector<Ultrafilter> filters;
  /// embeddings[k]: diagonal map stage k -> stage k+1.
  std::vector<std::vector<Element>> embeddings;
  /// Composite map A0 -> limit.
  std::vector<Element> limit_embedding;
  const FiniteStructure& limit() const { return stages.back(); }
};

/// Stage k+1 is the explicit ultrapower of stage k by filters[k].
Ultrachain build_ultrachain(const FiniteStructure& a0, const std::vector<Ultrafilter>& filters,
                            const UltraproductOptions& options = {});

/// The Henkin model induced by the last ultrapower step of the chain (the base
/// with full upsilon for the empty chain).
HenkinModel limit_henkin_model(const Ultrachain& chain, const HenkinOptions& options = {});

}  // namespace solab
