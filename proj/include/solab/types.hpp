// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "solab/structure.hpp"

namespace solab {

/// Relation variables X0..X{m-1} with the given arities, and the sentences
/// (free in the Xs) that types are measured against.
class TypeContext {
 public:
  /// Throws ValidationError when a fragment member has free first-order
  /// variables, uses an X with the wrong arity, or repeats.
  TypeContext(std::vector<int> arities, std::vector<Formula> fragment);

  const std::vector<int>& arities() const { return arities_; }
  const std::vector<Formula>& fragment() const { return fragment_; }
  /// "X0", "X1", ...
  static std::string variable(std::size_t i) { return "X" + std::to_string(i); }

 private:
  std::vector<int> arities_;
  std::vector<Formula> fragment_;
};

/// Complete bit sequence over the context fragment.
struct TwoType {
  std::vector<bool> bits;

  std::string to_string() const;
  auto operator<=>(const TwoType&) const = default;
};

struct RealizedType {
  TwoType type;
  /// The first assignment (in enumeration order) realizing the type.
  std::vector<Relation> witness;
};

/// Types of all assignments to the Xs, deduplicated, sorted by type. Throws
/// BudgetExceeded when more than `budget` assignments would be enumerated.
std::vector<RealizedType> realized_types(const FiniteStructure& a, const TypeContext& ctx,
                                         std::uint64_t budget = std::uint64_t{1} << 16);

bool omits(const FiniteStructure& a, const TwoType& p, const TypeContext& ctx);

/// Types realized by some pool member and omitted by every member of K.
std::vector<TwoType> omitted_by_all(const std::vector<FiniteStructure>& k,
                                    const std::vector<FiniteStructure>& pool,
                                    const TypeContext& ctx);

/// Scope statement carried by every report: all type computations are
/// relative to the explicit pool.
extern const char* const kPoolScope;

struct OmissionReport {
  /// (a) members of Pi realized by some member of K, with a witness index into K.
  std::vector<std::pair<TwoType, std::size_t>> realized_in_k;
  /// (b) pool members outside K realizing no member of Pi (indices into pool).
  std::vector<std::size_t> unrealizing;
  bool pass() const { return realized_in_k.empty() && unrealizing.empty(); }
};

/// Checks that K is exactly the pool members omitting every type in Pi.
/// Membership in K is up to isomorphism.
OmissionReport check_omission_axiomatization(const std::vector<FiniteStructure>& k,
                                             const std::vector<TwoType>& pi,
                                             const std::vector<FiniteStructure>& pool,
                                             const TypeContext& ctx);

struct PropertyAReport {
  /// Pool members outside K all of whose realized types are realized in K.
  std::vector<std::size_t> counterexamples;
  bool pass() const { return counterexamples.empty(); }
};

/// Surrogate of property (A): equality of realized types stands in for
/// isomorphic ultrapowers.
PropertyAReport property_A_check(const std::vector<FiniteStructure>& k,
                                 const std::vector<FiniteStructure>& pool, const TypeContext& ctx);

/// Whether `a` is isomorphic to a member of `k`.
bool member_up_to_iso(const FiniteStructure& a, const std::vector<FiniteStructure>& k);

}  // namespace solab
