// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace solab::sat {

/// DIMACS-style literal: +v or -v for variable v >= 1.
using Lit = int;

/// Small conflict-driven clause-learning solver: two watched literals,
/// first-UIP learning, activity-based branching with phase saving and Luby
/// restarts. Deterministic for a given clause sequence. Clauses are added
/// before a single call to solve().
class Solver {
 public:
  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }
  void add_clause(std::vector<Lit> clause);
  bool solve();
  /// Model value after a satisfiable solve().
  bool value(int var) const { return model_.at(static_cast<std::size_t>(var - 1)); }

  std::uint64_t conflicts() const { return conflicts_; }

 private:
  // Internal literal encoding: 2*(v-1) + sign.
  static int to_internal(Lit l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }
  static int var_of(int lit) { return lit >> 1; }
  static int neg(int lit) { return lit ^ 1; }

  // -1 unassigned, 0 false, 1 true.
  int lit_value(int lit) const {
    const int v = assigns_[static_cast<std::size_t>(var_of(lit))];
    return v < 0 ? -1 : (v ^ (lit & 1));
  }

  void enqueue(int lit, int reason);
  int propagate();
  void analyze(int conflict, std::vector<int>& learnt, int& backtrack_level);
  void cancel_until(int level);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  int pick_branch() const;
  void bump(int var);
  void attach(int clause_index);

  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<int> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<char> phase_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  bool ok_ = true;
  std::uint64_t conflicts_ = 0;
  std::vector<bool> model_;
};

}  // namespace solab::sat
