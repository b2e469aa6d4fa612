// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "solab/formula.hpp"
#include "solab/solab.h"
#include "solab/structure.hpp"
#include "solab/ultra.hpp"
#include "solab/workbench.hpp"

using namespace solab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void line(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

// Runs a criterion, turning an escaped exception into a FAIL line.
void run(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    line(id, false, std::string("exception: ") + e.what());
  }
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

std::string failed_checks(const Report& r) {
  std::string out;
  for (const auto& c : r.checks)
    if (!c.pass) out += "; " + c.name + " expected " + c.expected + " got " + c.actual;
  return out;
}

void suite(int id, const std::string& name, int trials, double limit_s, const std::string& what) {
  SuiteParams p;
  p.trials = trials;
  p.seed = 42;
  const auto t0 = Clock::now();
  const Report r = demo(name, p);
  const double s = seconds_since(t0);
  const bool in_time = limit_s <= 0 || s < limit_s;
  std::string detail = what + ", " + std::to_string(r.checks.size()) + " checks, " + fmt_seconds(s);
  if (limit_s > 0) detail += " (limit " + fmt_seconds(limit_s) + ")";
  line(id, r.pass() && in_time, detail + failed_checks(r));
}

bool hamiltonian_oracle(const FiniteStructure& g) {
  const int n = g.universe();
  if (n < 3) return false;
  const Relation& e = g.relation("edge");
  auto adj = [&](int a, int b) {
    return e.contains(std::vector<Element>{a, b}) || e.contains(std::vector<Element>{b, a});
  };
  std::vector<int> path{0};
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  used[0] = true;
  std::function<bool()> extend = [&]() {
    if (static_cast<int>(path.size()) == n) return adj(path.back(), 0);
    for (int v = 1; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)] || !adj(path.back(), v)) continue;
      used[static_cast<std::size_t>(v)] = true;
      path.push_back(v);
      if (extend()) return true;
      path.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
    return false;
  };
  return extend();
}

void criterion3() {
  int mismatches = 0, checked = 0;
  for (int i0 = 0; i0 < 3; ++i0)
    for (int j0 = 0; j0 < 3; ++j0) {
      const auto f = Ultrafilter::principal(3, i0), g = Ultrafilter::principal(3, j0);
      const auto fg = Ultrafilter::product(f, g);
      for (std::uint32_t bits = 0; bits < 512; ++bits) {
        std::vector<bool> x(9);
        for (int k = 0; k < 9; ++k) x[static_cast<std::size_t>(k)] = (bits >> k) & 1u;
        // {j : {i : (i,j) in X} in F} in G
        std::vector<bool> outer(3);
        for (int j = 0; j < 3; ++j) {
          std::vector<bool> column(3);
          for (int i = 0; i < 3; ++i) column[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i * 3 + j)];
          outer[static_cast<std::size_t>(j)] = f.contains(column);
        }
        mismatches += fg.contains(x) != g.contains(outer);
        ++checked;
      }
    }
  line(3, mismatches == 0,
       "product ultrafilter membership vs definition, " + std::to_string(checked) + " subsets over 9 filter pairs, " +
           std::to_string(mismatches) + " mismatches");
}

void criterion4() {
  const Signature sig{{"edge", 2}};
  std::vector<FiniteStructure> structures;
  for (int n = 1; n <= 3; ++n) {
    const auto reps = isomorphism_representatives(all_structures(sig, n));
    structures.insert(structures.end(), reps.begin(), reps.end());
  }
  std::vector<HenkinModel> models;
  for (const auto& a : structures) models.push_back(full_henkin_model(a, 2));
  Rng rng(42);
  FormulaShape shape;
  shape.signature = sig;
  shape.max_so_arity = 2;
  int mismatches = 0, evaluations = 0, with_so = 0;
  const auto t0 = Clock::now();
  for (int t = 0; t < 200; ++t) {
    const Formula f = random_sentence(rng, shape);
    with_so += has_so_quantifier(f);
    for (std::size_t i = 0; i < structures.size(); ++i) {
      mismatches += henkin_eval(models[i], f) != eval_so_full(structures[i], f);
      ++evaluations;
    }
  }
  line(4, mismatches == 0,
       "Henkin with full relation universe vs full semantics, 200 sentences (" + std::to_string(with_so) +
           " with relation quantifiers) x " + std::to_string(structures.size()) +
           " structures of size <= 3 up to isomorphism, " + std::to_string(mismatches) + " mismatches, " +
           fmt_seconds(seconds_since(t0)));
}

void criterion5() {
  const Formula ham = builtin("hamiltonian").formula;
  int graphs = 0, mismatches = 0;
  const auto t0 = Clock::now();
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    for (std::uint32_t m = 0; m < (1u << pairs.size()); ++m) {
      FiniteStructure oriented(graph_signature(), n);
      std::vector<std::pair<Element, Element>> edges;
      for (std::size_t b = 0; b < pairs.size(); ++b)
        if ((m >> b) & 1u) {
          edges.push_back(pairs[b]);
          oriented.add_tuple("edge", {pairs[b].first, pairs[b].second});
        }
      const auto symmetric = graph(n, edges);
      const bool expected = hamiltonian_oracle(symmetric);
      mismatches += eval_so_full(symmetric, ham) != expected;
      mismatches += eval_so_full(oriented, ham) != expected;
      ++graphs;
    }
  }
  bool family_ok = true;
  std::string family;
  for (int n = 2; n <= 4; ++n) {
    const bool c = eval_so_full(cycle_graph(2 * n), ham);
    family_ok &= c;
    family += " C" + std::to_string(2 * n) + (c ? " in H" : " not in H") + ";";
  }
  for (int n = 3; n <= 4; ++n) {
    const bool d = eval_so_full(double_cycle(n), ham);
    family_ok &= !d;
    family += " D" + std::to_string(n) + (d ? " in H" : " not in H") + ";";
  }
  line(5, mismatches == 0 && family_ok,
       "Hamiltonicity sentence vs backtracking oracle on " + std::to_string(graphs) +
           " labeled graphs with <= 5 vertices in symmetric and oriented encodings, " + std::to_string(mismatches) +
           " mismatches;" + family + " " + fmt_seconds(seconds_since(t0)));
}

void criterion6() {
  SuiteParams p;
  p.nmax = 6;
  const auto t0 = Clock::now();
  const Report r = demo("infinity", p);
  line(6, r.pass(),
       "infinity sentence false on the size <= 6 corpus, cardinality sentences n <= 8, " +
           std::to_string(r.checks.size()) + " checks, " + fmt_seconds(seconds_since(t0)) + failed_checks(r));
}

std::string capi_report(const char* which, bool is_demo) {
  solab_config* c = nullptr;
  if (solab_config_new(&c) != SOLAB_OK) return "";
  solab_config_set_format(c, SOLAB_FORMAT_JSON);
  solab_config_set_seed(c, 42);
  char* out = nullptr;
  int pass = 0;
  const solab_status s = is_demo ? solab_demo(which, c, &pass, &out)
                                 : solab_check(which, nullptr, nullptr, nullptr, c, &pass, &out);
  solab_config_free(c);
  if (s != SOLAB_OK) return std::string("error: ") + solab_last_error();
  std::string text = out;
  solab_string_free(out);
  return text;
}

void criterion9() {
  std::vector<std::string> differing;
  int compared = 0;
  for (const char* which : {"los", "fubini", "metric", "omission"}) {
    const auto a = capi_report(which, false), b = capi_report(which, false);
    ++compared;
    if (a != b || a.rfind("error", 0) == 0) differing.push_back(which);
  }
  for (const char* name : {"np_example", "infinity", "separation"}) {
    const auto a = capi_report(name, true), b = capi_report(name, true);
    ++compared;
    if (a != b || a.rfind("error", 0) == 0) differing.push_back(name);
  }
  std::string detail = "byte-identical JSON on rerun through the C API for " + std::to_string(compared) + " reports";
  for (const auto& d : differing) detail += "; differs: " + d;
  line(9, differing.empty(), detail);
}

}  // namespace

int main() {
  run(1, [] { suite(1, "los_suite", 1000, 120, "Los transfer, 1000 seeded trials"); });
  run(2, [] { suite(2, "fubini_suite", 50, 60, "Fubini isomorphism, 50 seeded grids up to 3x2"); });
  run(3, criterion3);
  run(4, criterion4);
  run(5, criterion5);
  run(6, criterion6);
  run(7, [] { suite(7, "separation", 100, 0, "separator exactly when vector sets are disjoint, 100 seeded pairs"); });
  run(8, [] { suite(8, "omission_suite", 20, 0, "omission axiomatization under property A, 20 seeded classes"); });
  run(9, criterion9);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
