// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace solab::sat {

namespace {

// Luby sequence 1,1,2,1,1,2,4,...
std::uint64_t luby(std::uint64_t i) {
  std::uint64_t size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  std::uint64_t x = i;
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::uint64_t{1} << seq;
}

}  // namespace

int Solver::new_var() {
  assigns_.push_back(-1);
  level_.push_back(0);
  reason_.push_back(-1);
  phase_.push_back(0);
  activity_.push_back(0.0);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return num_vars();
}

void Solver::attach(int ci) {
  const auto& c = clauses_[static_cast<std::size_t>(ci)];
  watches_[static_cast<std::size_t>(c[0])].push_back(ci);
  watches_[static_cast<std::size_t>(c[1])].push_back(ci);
}

void Solver::add_clause(std::vector<Lit> clause) {
  if (!ok_) return;
  std::vector<int> lits;
  lits.reserve(clause.size());
  for (Lit l : clause) {
    while (std::abs(l) > num_vars()) new_var();
    lits.push_back(to_internal(l));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<int> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i])) return;  // tautology
    const int v = lit_value(lits[i]);
    if (v == 1) return;
    if (v == 0) continue;
    kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() != -1) ok_ = false;
    return;
  }
  clauses_.push_back(std::move(kept));
  attach(static_cast<int>(clauses_.size()) - 1);
}

void Solver::enqueue(int lit, int reason) {
  const auto v = static_cast<std::size_t>(var_of(lit));
  assigns_[v] = (lit & 1) ? 0 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(lit);
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const int p = trail_[qhead_++];
    const int false_lit = neg(p);
    auto& ws = watches_[static_cast<std::size_t>(false_lit)];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const int ci = ws[i++];
      auto& c = clauses_[static_cast<std::size_t>(ci)];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[static_cast<std::size_t>(c[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (lit_value(c[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void Solver::bump(int var) {
  auto& a = activity_[static_cast<std::size_t>(var)];
  a += var_inc_;
  if (a > 1e100) {
    for (auto& x : activity_) x *= 1e-100;
    var_inc_ *= 1e-100;
  }
}

void Solver::analyze(int conflict, std::vector<int>& learnt, int& backtrack_level) {
  learnt.assign(1, -1);
  int path = 0;
  int p = -1;
  std::size_t idx = trail_.size();
  int ci = conflict;
  do {
    const auto& c = clauses_[static_cast<std::size_t>(ci)];
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      const int q = c[k];
      const auto v = static_cast<std::size_t>(var_of(q));
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      bump(var_of(q));
      if (level_[v] >= decision_level()) {
        ++path;
      } else {
        learnt.push_back(q);
      }
    }
    do {
      --idx;
    } while (!seen_[static_cast<std::size_t>(var_of(trail_[idx]))]);
    p = trail_[idx];
    ci = reason_[static_cast<std::size_t>(var_of(p))];
    seen_[static_cast<std::size_t>(var_of(p))] = 0;
    --path;
  } while (path > 0);
  learnt[0] = neg(p);

  backtrack_level = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    const int lv = level_[static_cast<std::size_t>(var_of(learnt[k]))];
    if (lv > backtrack_level) {
      backtrack_level = lv;
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (int q : learnt) seen_[static_cast<std::size_t>(var_of(q))] = 0;
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(level)]);
  for (std::size_t i = trail_.size(); i-- > stop;) {
    const auto v = static_cast<std::size_t>(var_of(trail_[i]));
    phase_[v] = static_cast<char>(assigns_[v]);
    assigns_[v] = -1;
    reason_[v] = -1;
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

int Solver::pick_branch() const {
  int best = -1;
  double best_act = -1.0;
  for (std::size_t v = 0; v < assigns_.size(); ++v) {
    if (assigns_[v] < 0 && activity_[v] > best_act) {
      best_act = activity_[v];
      best = static_cast<int>(v);
    }
  }
  return best;
}

bool Solver::solve() {
  if (!ok_) return false;
  if (propagate() != -1) return ok_ = false;
  std::uint64_t restarts = 0;
  std::uint64_t restart_at = 100 * luby(restarts);
  std::uint64_t since_restart = 0;
  std::vector<int> learnt;
  for (;;) {
    const int conflict = propagate();
    if (conflict != -1) {
      ++conflicts_;
      ++since_restart;
      if (decision_level() == 0) return ok_ = false;
      int bt = 0;
      analyze(conflict, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        clauses_.push_back(learnt);
        const int ci = static_cast<int>(clauses_.size()) - 1;
        attach(ci);
        enqueue(learnt[0], ci);
      }
      var_inc_ /= 0.95;
      if (since_restart >= restart_at) {
        cancel_until(0);
        since_restart = 0;
        restart_at = 100 * luby(++restarts);
      }
      continue;
    }
    const int v = pick_branch();
    if (v < 0) {
      model_.assign(assigns_.size(), false);
      for (std::size_t i = 0; i < assigns_.size(); ++i) model_[i] = assigns_[i] == 1;
      return true;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(2 * v + (phase_[static_cast<std::size_t>(v)] ? 0 : 1), -1);
  }
}

}  // namespace solab::sat
