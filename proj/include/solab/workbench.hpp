// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solab/structure.hpp"

namespace solab {

struct NamedFormula {
  std::string key;
  Formula formula;
  Signature signature;
  std::string intended_class;
};

/// "infinite", "at_least:n" (n >= 1), "hamiltonian", "colorable:k" (k >= 1).
/// Throws InputError for unknown keys or bad parameters.
NamedFormula builtin(std::string_view key);
std::vector<std::string> builtin_keys();

/// Graph signature {edge:2}.
Signature graph_signature();
/// Symmetric irreflexive n-cycle; n >= 3.
FiniteStructure cycle_graph(int n);
/// Two disjoint n-cycles on 0..n-1 and n..2n-1; n >= 3.
FiniteStructure double_cycle(int n);
/// Graph from undirected edges, stored symmetrically.
FiniteStructure graph(int n, const std::vector<std::pair<Element, Element>>& edges);

struct InsepWitness {
  std::size_t k_index;
  std::size_t l_index;
  std::vector<Element> map;
};

struct InsepResult {
  std::optional<InsepWitness> witness;
  std::size_t pairs_examined = 0;
  /// For a witness: whether the induced map on relations of arity <= bound
  /// was checked to be a bijection between the full relation universes.
  bool upsilon_checked = false;
  /// Always names the restriction to principal ultrafilters.
  std::string scope;
};

/// Looks for an isomorphic pair (A in ks, B in ls); at principal scale this is
/// what inseparability of the two families comes down to.
InsepResult principal_insep_search(const std::vector<FiniteStructure>& ks,
                                   const std::vector<FiniteStructure>& ls, int arity_bound = 2);

// Random generation -----------------------------------------------------------

/// Seeded 64-bit generator with a platform-independent bounded draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  /// Uniform in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 gen_;
};

/// Each tuple present with probability num/den.
FiniteStructure random_structure(Rng& rng, const Signature& sig, int universe,
                                 std::uint64_t num = 1, std::uint64_t den = 2);

struct FormulaShape {
  Signature signature;
  /// Cap on nested quantifiers (first- and second-order).
  int quantifier_depth = 3;
  /// Cap on connective nesting between quantifiers.
  int connective_depth = 2;
  int max_so_quantifiers = 2;
  int max_so_arity = 2;
  /// Cap on the summed tuple count 3^k of the relation quantifiers, so that
  /// enumeration over a 3-element universe stays small.
  int so_tuple_cap = 12;
  bool allow_iff = true;
};

/// A random sentence (no free variables of either kind beyond the signature).
Formula random_sentence(Rng& rng, const FormulaShape& shape);

// Reports ---------------------------------------------------------------------

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass;
};

struct Report {
  std::string demo;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<Check> checks;
  double runtime_ms = 0;

  bool pass() const;
  void add(std::string name, std::string expected, std::string actual);
  void add(std::string name, bool expected, bool actual);
};

/// {demo, params, checks:[...], pass} and runtime_ms when `timing` is set.
std::string to_json(const Report& r, bool timing = false);
std::string to_text(const Report& r, bool timing = false);

struct SuiteParams {
  int n = 4;
  int nmax = 6;
  int trials = 0;  // 0: suite default
  std::uint64_t seed = 42;
  int arity_bound = 2;
  EvalOptions eval;
};

/// np_example, infinity, los_suite, fubini_suite, separation, metric_suite,
/// omission_suite. Throws InputError for unknown names.
Report demo(std::string_view name, const SuiteParams& params = {});
std::vector<std::string> demo_names();

/// Isomorphism representatives of all structures of size 1..nmax.
std::vector<FiniteStructure> structure_pool(const Signature& sig, int nmax);

}  // namespace solab
