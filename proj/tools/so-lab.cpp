// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0
//
// so-lab: command-line front end over the C interface.

#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <string>

#include "solab/solab.h"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

struct Failure {
  int code;
};

int exit_for(solab_status s) {
  switch (s) {
    case SOLAB_OK:
      return kOk;
    case SOLAB_ERR_BUDGET:
      return kBudget;
    case SOLAB_ERR_INPUT:
    case SOLAB_ERR_EVAL:
      return kUsage;
    default:
      return kCheckFailed;
  }
}

void ok(solab_status s) {
  if (s != SOLAB_OK) {
    std::cerr << "so-lab: error: " << solab_last_error() << "\n";
    throw Failure{exit_for(s)};
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Config = std::unique_ptr<solab_config, Deleter<solab_config, solab_config_free>>;
using FormulaPtr = std::unique_ptr<solab_formula, Deleter<solab_formula, solab_formula_free>>;
using StructurePtr = std::unique_ptr<solab_structure, Deleter<solab_structure, solab_structure_free>>;
using FamilyPtr = std::unique_ptr<solab_family, Deleter<solab_family, solab_family_free>>;
using FragmentPtr = std::unique_ptr<solab_fragment, Deleter<solab_fragment, solab_fragment_free>>;
using ContextPtr = std::unique_ptr<solab_type_context, Deleter<solab_type_context, solab_type_context_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  solab_string_free(s);
  return out;
}

struct Options {
  std::string structure, family, formula, builtin, fragment, ultrafilter, context, left, right, pool;
  std::string semantics = "full";
  std::string format = "text";
  int arity_bound = 2;
  int trials = 0;
  std::uint64_t seed = 42;
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::uint64_t product_budget = std::uint64_t{1} << 16;
  int n = 4;
  int nmax = 6;
  bool timing = false;
  bool no_solver = false;
};

Config make_config(const Options& o) {
  solab_config* raw = nullptr;
  ok(solab_config_new(&raw));
  Config c(raw);
  ok(solab_config_set_relation_budget(c.get(), o.budget));
  ok(solab_config_set_product_budget(c.get(), o.product_budget));
  ok(solab_config_set_seed(c.get(), o.seed));
  ok(solab_config_set_trials(c.get(), o.trials));
  ok(solab_config_set_arity_bound(c.get(), o.arity_bound));
  ok(solab_config_set_size(c.get(), o.n));
  ok(solab_config_set_max_size(c.get(), o.nmax));
  ok(solab_config_set_use_solver(c.get(), o.no_solver ? 0 : 1));
  ok(solab_config_set_timing(c.get(), o.timing ? 1 : 0));
  ok(solab_config_set_format(c.get(), o.format == "json" ? SOLAB_FORMAT_JSON : SOLAB_FORMAT_TEXT));
  return c;
}

FormulaPtr formula(const Options& o, bool required = true) {
  if (!o.formula.empty() && !o.builtin.empty()) {
    std::cerr << "so-lab: error: give --formula or --builtin, not both\n";
    throw Failure{kUsage};
  }
  solab_formula* f = nullptr;
  if (!o.formula.empty()) {
    ok(solab_formula_parse(o.formula.c_str(), &f));
  } else if (!o.builtin.empty()) {
    ok(solab_formula_builtin(o.builtin.c_str(), &f));
  } else if (required) {
    std::cerr << "so-lab: error: a formula is required (--formula or --builtin)\n";
    throw Failure{kUsage};
  }
  return FormulaPtr(f);
}

StructurePtr structure(const std::string& path) {
  solab_structure* s = nullptr;
  ok(solab_structure_load(path.c_str(), &s));
  return StructurePtr(s);
}

FamilyPtr family(const std::string& path) {
  solab_family* f = nullptr;
  ok(solab_family_load(path.c_str(), &f));
  return FamilyPtr(f);
}

void need(const std::string& value, const char* flag) {
  if (value.empty()) {
    std::cerr << "so-lab: error: " << flag << " is required\n";
    throw Failure{kUsage};
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

int run_parse(const Options& o) {
  auto f = formula(o);
  auto c = make_config(o);
  StructurePtr s;
  if (!o.structure.empty()) s = structure(o.structure);
  char* out = nullptr;
  ok(solab_formula_describe(f.get(), s.get(), c.get(), &out));
  std::cout << take(out);
  return kOk;
}

int run_classify(const Options& o) {
  auto f = formula(o);
  char* label = nullptr;
  ok(solab_formula_classify(f.get(), &label));
  const std::string l = take(label);
  if (o.format == "json") {
    char* text = nullptr;
    ok(solab_formula_to_string(f.get(), &text));
    std::cout << "{\n  \"formula\": " << quote(take(text)) << ",\n  \"classification\": " << quote(l) << "\n}\n";
  } else {
    std::cout << l << "\n";
  }
  return kOk;
}

int run_prenex(const Options& o) {
  auto f = formula(o);
  solab_formula* p = nullptr;
  ok(solab_formula_prenex(f.get(), &p));
  FormulaPtr pf(p);
  char *in = nullptr, *text = nullptr, *label = nullptr;
  ok(solab_formula_to_string(f.get(), &in));
  ok(solab_formula_to_string(pf.get(), &text));
  ok(solab_formula_classify(pf.get(), &label));
  const std::string i = take(in), t = take(text), l = take(label);
  if (o.format == "json") {
    std::cout << "{\n  \"input\": " << quote(i) << ",\n  \"prenex\": " << quote(t)
              << ",\n  \"classification\": " << quote(l) << "\n}\n";
  } else {
    std::cout << t << "\n" << l << "\n";
  }
  return kOk;
}

int run_eval(const Options& o) {
  need(o.structure, "--structure");
  if (o.semantics != "full" && o.semantics != "fo") {
    std::cerr << "so-lab: error: --semantics must be full or fo\n";
    return kUsage;
  }
  auto s = structure(o.structure);
  auto f = formula(o);
  auto c = make_config(o);
  int truth = 0;
  ok(solab_eval(s.get(), f.get(), c.get(), o.semantics == "fo" ? SOLAB_SEMANTICS_FO : SOLAB_SEMANTICS_FULL,
                &truth));
  if (o.format == "json") {
    char* text = nullptr;
    ok(solab_formula_to_string(f.get(), &text));
    std::cout << "{\n  \"formula\": " << quote(take(text)) << ",\n  \"structure\": " << quote(o.structure)
              << ",\n  \"semantics\": " << quote(o.semantics) << ",\n  \"truth\": " << (truth ? "true" : "false")
              << "\n}\n";
  } else {
    std::cout << (truth ? "true" : "false") << "\n";
  }
  return kOk;
}

int run_ultraproduct(const Options& o) {
  need(o.family, "--family");
  auto fam = family(o.family);
  auto c = make_config(o);
  char* out = nullptr;
  ok(solab_ultraproduct(fam.get(), o.ultrafilter.c_str(), c.get(), &out));
  std::cout << take(out);
  return kOk;
}

int run_henkin(const Options& o) {
  need(o.family, "--family");
  auto fam = family(o.family);
  auto f = formula(o);
  auto c = make_config(o);
  int truth = 0;
  char* out = nullptr;
  ok(solab_henkin_eval(fam.get(), o.ultrafilter.c_str(), f.get(), c.get(), &truth, &out));
  std::cout << take(out);
  return kOk;
}

int run_check(const std::string& which, const Options& o) {
  auto c = make_config(o);
  FamilyPtr fam;
  if (!o.family.empty()) fam = family(o.family);
  auto f = formula(o, false);
  int pass = 0;
  char* out = nullptr;
  ok(solab_check(which.c_str(), fam.get(), o.ultrafilter.empty() ? nullptr : o.ultrafilter.c_str(), f.get(),
                 c.get(), &pass, &out));
  std::cout << take(out);
  return pass ? kOk : kCheckFailed;
}

int run_separate(const Options& o) {
  need(o.left, "--left");
  need(o.right, "--right");
  need(o.fragment, "--fragment");
  auto k = family(o.left);
  auto l = family(o.right);
  solab_fragment* g = nullptr;
  ok(solab_fragment_load(o.fragment.c_str(), &g));
  FragmentPtr gamma(g);
  auto c = make_config(o);
  int found = 0;
  char* out = nullptr;
  ok(solab_separate(k.get(), l.get(), gamma.get(), c.get(), &found, &out));
  std::cout << take(out);
  return kOk;
}

int run_types(const Options& o) {
  need(o.context, "--context");
  solab_type_context* t = nullptr;
  ok(solab_type_context_load(o.context.c_str(), &t));
  ContextPtr ctx(t);
  auto c = make_config(o);
  char* out = nullptr;
  if (!o.structure.empty()) {
    auto s = structure(o.structure);
    ok(solab_types(s.get(), ctx.get(), c.get(), &out));
    std::cout << take(out);
    return kOk;
  }
  need(o.family, "--structure or --family");
  need(o.pool, "--pool");
  auto k = family(o.family);
  auto pool = family(o.pool);
  int pass = 0;
  ok(solab_omission(k.get(), pool.get(), ctx.get(), c.get(), &pass, &out));
  std::cout << take(out);
  return pass ? kOk : kCheckFailed;
}

int run_insep(const Options& o) {
  need(o.left, "--left");
  need(o.right, "--right");
  auto k = family(o.left);
  auto l = family(o.right);
  auto c = make_config(o);
  int found = 0;
  char* out = nullptr;
  ok(solab_insep(k.get(), l.get(), c.get(), &found, &out));
  std::cout << take(out);
  return kOk;
}

int run_demo(const std::string& name, const Options& o) {
  auto c = make_config(o);
  int pass = 0;
  char* out = nullptr;
  ok(solab_demo(name.c_str(), c.get(), &pass, &out));
  std::cout << take(out);
  return pass ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"so-lab: second-order finite model theory workbench"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--budget", o.budget, "Candidate relations enumerated per relation quantifier")
        ->check(CLI::PositiveNumber);
    sub->add_option("--product-budget", o.product_budget, "Tuples allowed in an explicit ultraproduct")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed for randomized suites");
    sub->add_flag("--timing", o.timing, "Include runtimes in reports");
    sub->add_flag("--no-solver", o.no_solver, "Decide relation quantifiers by enumeration only");
  };
  auto formula_opts = [&](CLI::App* sub) {
    sub->add_option("--formula", o.formula, "Formula text");
    sub->add_option("--builtin", o.builtin, "Built-in formula: infinite, at_least:n, hamiltonian, colorable:k");
  };

  auto* parse = app.add_subcommand("parse", "Parse a second-order formula and report its shape and prenex class");
  formula_opts(parse);
  parse->add_option("--structure", o.structure, "Validate against this structure's signature");
  common(parse);

  auto* classify = app.add_subcommand("classify", "Place a formula in the Sigma/Pi hierarchy of prenex second-order form");
  formula_opts(classify);
  common(classify);

  auto* prenex = app.add_subcommand("prenex", "Rewrite into prenex second-order form (relation quantifiers first)");
  formula_opts(prenex);
  common(prenex);

  auto* eval = app.add_subcommand("eval", "Evaluate a sentence on a finite structure under full second-order or first-order semantics");
  eval->add_option("--structure", o.structure, "Structure file");
  formula_opts(eval);
  eval->add_option("--semantics", o.semantics, "full or fo")->check(CLI::IsMember({"full", "fo"}));
  common(eval);

  auto* ultra = app.add_subcommand("ultraproduct", "Build the ultraproduct of a family modulo an ultrafilter");
  ultra->add_option("--family", o.family, "Directory or JSON array of structures");
  ultra->add_option("--ultrafilter", o.ultrafilter, "principal:i, principal:i/m or A x B");
  common(ultra);

  auto* henkin = app.add_subcommand("henkin-eval", "Evaluate in the decomposable-Henkin model of an ultraproduct (Henkin semantics)");
  henkin->add_option("--family", o.family, "Directory or JSON array of structures");
  henkin->add_option("--ultrafilter", o.ultrafilter, "principal:i, principal:i/m or A x B");
  henkin->add_option("--arity-bound", o.arity_bound, "Largest relation arity admitted in the relation universe");
  formula_opts(henkin);
  common(henkin);

  auto* check = app.add_subcommand("check", "Run a verification suite: los (Los lemma), fubini (product ultrafilters), metric (ultrametric on theory vectors), omission (omitting types)");
  check->require_subcommand(1);
  for (auto [name, help] : {std::pair{"los", "Los lemma: Henkin truth in the ultraproduct vs. U-large truth sets"},
                            std::pair{"fubini", "Fubini theorem for product ultrafilters on grids of structures"},
                            std::pair{"metric", "Ultrametric on theory vectors and set distance"},
                            std::pair{"omission", "Omitting types and the property (A) surrogate on a finite pool"}}) {
    auto* sub = check->add_subcommand(name, help);
    sub->add_option("--trials", o.trials, "Number of seeded trials (0: suite default)");
    sub->add_option("--family", o.family, "los: check one family instead of the suite");
    sub->add_option("--ultrafilter", o.ultrafilter, "los: ultrafilter for --family");
    sub->add_option("--arity-bound", o.arity_bound, "Largest relation arity admitted in the relation universe");
    formula_opts(sub);
    common(sub);
  }

  auto* separate = app.add_subcommand("separate", "Search for a Boolean combination of fragment sentences separating two classes (theory-vector spaces)");
  separate->add_option("--left", o.left, "Class K (directory or JSON array)");
  separate->add_option("--right", o.right, "Class L (directory or JSON array)");
  separate->add_option("--fragment", o.fragment, "JSON array of sentences");
  common(separate);

  auto* types = app.add_subcommand("types", "Realized 2-types of a structure, or omitting-types analysis of a class inside a pool");
  types->add_option("--structure", o.structure, "Structure file");
  types->add_option("--context", o.context, "Type context: {\"arities\": [...], \"fragment\": [...]}");
  types->add_option("--family", o.family, "Class K for the omission analysis");
  types->add_option("--pool", o.pool, "Pool of candidate structures");
  common(types);

  auto* insep = app.add_subcommand("insep", "Inseparability search between two families at principal-ultrafilter scale");
  insep->add_option("--left", o.left, "First family");
  insep->add_option("--right", o.right, "Second family");
  insep->add_option("--arity-bound", o.arity_bound, "Arity bound for the relation-universe check");
  common(insep);

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "End-to-end scenarios: np_example (Hamiltonian cycles, C_2n vs D_n), infinity (order without top element), los_suite, fubini_suite, separation, metric_suite, omission_suite");
  demo->add_option("name", demo_name, "Demo name")->required();
  demo->add_option("--n", o.n, "np_example: largest n");
  demo->add_option("--nmax", o.nmax, "infinity: largest structure size");
  demo->add_option("--trials", o.trials, "Number of seeded trials (0: suite default)");
  common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (parse->parsed()) return run_parse(o);
    if (classify->parsed()) return run_classify(o);
    if (prenex->parsed()) return run_prenex(o);
    if (eval->parsed()) return run_eval(o);
    if (ultra->parsed()) return run_ultraproduct(o);
    if (henkin->parsed()) return run_henkin(o);
    if (check->parsed()) return run_check(check->get_subcommands().front()->get_name(), o);
    if (separate->parsed()) return run_separate(o);
    if (types->parsed()) return run_types(o);
    if (insep->parsed()) return run_insep(o);
    if (demo->parsed()) return run_demo(demo_name, o);
  } catch (const Failure& f) {
    return f.code;
  }
  return kUsage;
}
