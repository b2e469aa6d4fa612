// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "solab/solab.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <string>

#include "../io/json_io.hpp"
#include "solab/error.hpp"
#include "solab/formula_space.hpp"
#include "solab/io.hpp"
#include "solab/types.hpp"
#include "solab/ultra.hpp"
#include "solab/workbench.hpp"

struct solab_config {
  solab::EvalOptions eval;
  solab::UltraproductOptions ultraproduct;
  std::uint64_t seed = 42;
  int trials = 0;
  int arity_bound = 2;
  int n = 4;
  int nmax = 6;
  solab_format format = SOLAB_FORMAT_TEXT;
  bool timing = false;
};

struct solab_formula {
  solab::Formula f;
};

struct solab_structure {
  solab::FiniteStructure s;
};

struct solab_family {
  std::vector<solab::NamedStructure> members;
};

struct solab_fragment {
  solab::Fragment gamma;
};

struct solab_type_context {
  solab::TypeContext ctx;
};

namespace {

using solab::detail::Json;

thread_local std::string last_error;

struct NullArgument {};

template <typename Fn>
solab_status guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return SOLAB_OK;
  } catch (const NullArgument&) {
    last_error = "null argument";
    return SOLAB_ERR_INPUT;
  } catch (const solab::BudgetExceeded& e) {
    last_error = e.what();
    return SOLAB_ERR_BUDGET;
  } catch (const solab::EvalError& e) {
    last_error = e.what();
    return SOLAB_ERR_EVAL;
  } catch (const solab::Error& e) {
    last_error = e.what();
    return SOLAB_ERR_INPUT;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return SOLAB_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error";
    return SOLAB_ERR_INTERNAL;
  }
}

template <typename... Ptrs>
void require(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw NullArgument{};
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const solab_config& defaults() {
  static const solab_config c;
  return c;
}

const solab_config& cfg(const solab_config* c) { return c ? *c : defaults(); }

std::string render(const solab_config& c, const Json& j, const std::string& text) {
  return c.format == SOLAB_FORMAT_JSON ? j.dump(2) + "\n" : text;
}

std::vector<solab::FiniteStructure> structures(const solab_family* f) {
  std::vector<solab::FiniteStructure> out;
  if (!f) return out;
  for (const auto& m : f->members) out.push_back(m.structure);
  return out;
}

solab::Ultrafilter filter_for(const solab_family* family, const char* spec) {
  const int m = static_cast<int>(family->members.size());
  if (!spec || !*spec) return solab::Ultrafilter::principal(m, 0);
  return solab::parse_ultrafilter(spec, m);
}

std::string truth(bool b) { return b ? "true" : "false"; }

std::string join_types(const std::vector<solab::TwoType>& ts) {
  std::string s;
  for (const auto& t : ts) s += (s.empty() ? "" : " ") + t.to_string();
  return s.empty() ? "(none)" : s;
}

}  // namespace

extern "C" {

const char* solab_last_error(void) { return last_error.c_str(); }
void solab_string_free(char* s) { std::free(s); }
const char* solab_version(void) { return "0.1.0"; }

// Configuration ---------------------------------------------------------------

solab_status solab_config_new(solab_config** out) {
  return guard([&] {
    require(out);
    *out = new solab_config();
  });
}

void solab_config_free(solab_config* c) { delete c; }

solab_status solab_config_set_relation_budget(solab_config* c, uint64_t budget) {
  return guard([&] {
    require(c);
    if (budget == 0) throw solab::InputError("budget must be positive");
    c->eval.relation_budget = budget;
  });
}

solab_status solab_config_set_product_budget(solab_config* c, uint64_t budget) {
  return guard([&] {
    require(c);
    if (budget == 0) throw solab::InputError("budget must be positive");
    c->ultraproduct.product_budget = budget;
  });
}

solab_status solab_config_set_use_solver(solab_config* c, int enabled) {
  return guard([&] {
    require(c);
    c->eval.use_solver = enabled != 0;
  });
}

solab_status solab_config_set_seed(solab_config* c, uint64_t seed) {
  return guard([&] {
    require(c);
    c->seed = seed;
  });
}

solab_status solab_config_set_trials(solab_config* c, int trials) {
  return guard([&] {
    require(c);
    if (trials < 0) throw solab::InputError("trials must be nonnegative");
    c->trials = trials;
  });
}

solab_status solab_config_set_arity_bound(solab_config* c, int bound) {
  return guard([&] {
    require(c);
    if (bound < 1) throw solab::InputError("arity bound must be at least 1");
    c->arity_bound = bound;
  });
}

solab_status solab_config_set_size(solab_config* c, int n) {
  return guard([&] {
    require(c);
    if (n < 1) throw solab::InputError("size must be positive");
    c->n = n;
  });
}

solab_status solab_config_set_max_size(solab_config* c, int nmax) {
  return guard([&] {
    require(c);
    if (nmax < 1) throw solab::InputError("maximum size must be positive");
    c->nmax = nmax;
  });
}

solab_status solab_config_set_format(solab_config* c, solab_format format) {
  return guard([&] {
    require(c);
    if (format != SOLAB_FORMAT_TEXT && format != SOLAB_FORMAT_JSON) throw solab::InputError("unknown format");
    c->format = format;
  });
}

solab_status solab_config_set_timing(solab_config* c, int enabled) {
  return guard([&] {
    require(c);
    c->timing = enabled != 0;
  });
}

// Formulas --------------------------------------------------------------------

solab_status solab_formula_parse(const char* text, solab_formula** out) {
  return guard([&] {
    require(text, out);
    *out = new solab_formula{solab::parse_formula(text)};
  });
}

solab_status solab_formula_builtin(const char* key, solab_formula** out) {
  return guard([&] {
    require(key, out);
    *out = new solab_formula{solab::builtin(key).formula};
  });
}

void solab_formula_free(solab_formula* f) { delete f; }

solab_status solab_formula_to_string(const solab_formula* f, char** out) {
  return guard([&] {
    require(f, out);
    *out = dup(f->f.to_string());
  });
}

solab_status solab_formula_classify(const solab_formula* f, char** out) {
  return guard([&] {
    require(f, out);
    *out = dup(solab::classify(f->f).to_string());
  });
}

solab_status solab_formula_prenex(const solab_formula* f, solab_formula** out) {
  return guard([&] {
    require(f, out);
    *out = new solab_formula{solab::prenex_so(f->f)};
  });
}

solab_status solab_formula_describe(const solab_formula* f, const solab_structure* signature_of,
                                    const solab_config* c, char** out) {
  return guard([&] {
    require(f, out);
    const auto& form = f->f;
    Json j;
    j["formula"] = form.to_string();
    j["classification"] = solab::classify(form).to_string();
    j["quantifier_depth"] = solab::quantifier_depth(form);
    j["max_so_arity"] = solab::max_so_arity(form);
    j["free_variables"] = solab::free_fo_vars(form);
    Json rels = Json::array();
    for (const auto& [name, arity] : solab::free_relation_names(form)) rels.push_back({{"name", name}, {"arity", arity}});
    j["free_relations"] = rels;
    std::string text = form.to_string() + "\nclassification: " + j["classification"].get<std::string>() + "\n";
    if (signature_of) {
      const auto report = solab::validate(form, signature_of->s.signature());
      j["validation"] = {{"free_variables", report.free_variables}, {"shadowed", report.shadowed}};
      text += "valid against the structure's signature\n";
    }
    *out = dup(render(cfg(c), j, text));
  });
}

// Structures ------------------------------------------------------------------

solab_status solab_structure_load(const char* path, solab_structure** out) {
  return guard([&] {
    require(path, out);
    *out = new solab_structure{solab::load_structure(path)};
  });
}

solab_status solab_structure_from_json(const char* text, solab_structure** out) {
  return guard([&] {
    require(text, out);
    *out = new solab_structure{solab::structure_from_json(text)};
  });
}

solab_status solab_structure_cycle(int n, solab_structure** out) {
  return guard([&] {
    require(out);
    *out = new solab_structure{solab::cycle_graph(n)};
  });
}

solab_status solab_structure_double_cycle(int n, solab_structure** out) {
  return guard([&] {
    require(out);
    *out = new solab_structure{solab::double_cycle(n)};
  });
}

void solab_structure_free(solab_structure* s) { delete s; }

solab_status solab_structure_to_json(const solab_structure* s, char** out) {
  return guard([&] {
    require(s, out);
    *out = dup(solab::structure_to_json(s->s));
  });
}

solab_status solab_family_load(const char* path, solab_family** out) {
  return guard([&] {
    require(path, out);
    *out = new solab_family{solab::load_family(path)};
  });
}

void solab_family_free(solab_family* f) { delete f; }

size_t solab_family_size(const solab_family* f) { return f ? f->members.size() : 0; }

solab_status solab_fragment_load(const char* path, solab_fragment** out) {
  return guard([&] {
    require(path, out);
    *out = new solab_fragment{solab::load_fragment(path)};
  });
}

solab_status solab_fragment_from_json(const char* text, solab_fragment** out) {
  return guard([&] {
    require(text, out);
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw solab::InputError(std::string("fragment is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw solab::InputError("a fragment is a JSON array of strings");
    std::vector<std::string> texts;
    for (const auto& s : j) {
      if (!s.is_string()) throw solab::InputError("fragment entries must be strings");
      texts.push_back(s.get<std::string>());
    }
    *out = new solab_fragment{solab::Fragment::parse(texts)};
  });
}

void solab_fragment_free(solab_fragment* f) { delete f; }

solab_status solab_type_context_load(const char* path, solab_type_context** out) {
  return guard([&] {
    require(path, out);
    *out = new solab_type_context{solab::load_type_context(path)};
  });
}

solab_status solab_type_context_from_json(const char* text, solab_type_context** out) {
  return guard([&] {
    require(text, out);
    *out = new solab_type_context{solab::type_context_from_json(text)};
  });
}

void solab_type_context_free(solab_type_context* t) { delete t; }

// Operations ------------------------------------------------------------------

solab_status solab_eval(const solab_structure* s, const solab_formula* f, const solab_config* c,
                        solab_semantics semantics, int* truth_out) {
  return guard([&] {
    require(s, f, truth_out);
    bool v = false;
    if (semantics == SOLAB_SEMANTICS_FO) {
      v = solab::eval_fo(s->s, f->f);
    } else {
      if (auto free = solab::free_fo_vars(f->f); !free.empty())
        throw solab::EvalError("unassigned variable '" + free.front() + "'");
      v = solab::eval_so_full(s->s, f->f, cfg(c).eval);
    }
    *truth_out = v ? 1 : 0;
  });
}

solab_status solab_ultraproduct(const solab_family* family, const char* ultrafilter, const solab_config* c,
                                char** out) {
  return guard([&] {
    require(family, out);
    const auto& conf = cfg(c);
    const auto u = filter_for(family, ultrafilter);
    const auto up = solab::ultraproduct(structures(family), u, conf.ultraproduct);
    Json j;
    j["ultrafilter"] = u.to_string();
    j["principal_index"] = u.principal_element();
    j["factor_sizes"] = up.factor_sizes;
    j["verified"] = up.verified;
    j["quotient"] = solab::detail::structure_json(up.quotient);
    j["representatives"] = up.representatives;
    std::string text = "ultraproduct by " + u.to_string() + ": " + std::to_string(up.quotient.universe()) +
                       " classes (" + (up.verified ? "explicit quotient matches" : "explicit quotient skipped") +
                       ")\n" + solab::structure_to_json(up.quotient) + "\n";
    *out = dup(render(conf, j, text));
  });
}

solab_status solab_henkin_eval(const solab_family* family, const char* ultrafilter, const solab_formula* f,
                               const solab_config* c, int* truth_out, char** out) {
  return guard([&] {
    require(family, f, truth_out, out);
    const auto& conf = cfg(c);
    const auto u = filter_for(family, ultrafilter);
    solab::HenkinOptions opts;
    opts.arity_bound = conf.arity_bound;
    opts.ultraproduct = conf.ultraproduct;
    const auto m = solab::henkin_model(structures(family), u, opts);
    const bool v = solab::henkin_eval(m, f->f);
    *truth_out = v ? 1 : 0;
    Json j;
    j["formula"] = f->f.to_string();
    j["ultrafilter"] = u.to_string();
    j["arity_bound"] = m.arity_bound;
    j["upsilon_sizes"] = Json::object();
    for (const auto& [k, rels] : m.upsilon) j["upsilon_sizes"][std::to_string(k)] = rels.size();
    j["truth"] = v;
    *out = dup(render(conf, j, truth(v) + "\n"));
  });
}

solab_status solab_check(const char* which, const solab_family* family, const char* ultrafilter,
                         const solab_formula* f, const solab_config* c, int* pass, char** out) {
  return guard([&] {
    require(which, pass, out);
    const auto& conf = cfg(c);
    const std::string w = which;
    solab::Report r;
    if (w == "los" && family && f) {
      const auto u = filter_for(family, ultrafilter);
      solab::HenkinOptions opts;
      opts.arity_bound = conf.arity_bound;
      opts.ultraproduct = conf.ultraproduct;
      const auto los = solab::check_los(structures(family), u, f->f, conf.eval, opts);
      r.demo = "los";
      r.params = {{"ultrafilter", u.to_string()}, {"formula", f->f.to_string()}};
      for (std::size_t i = 0; i < los.factor_truths.size(); ++i)
        r.params.emplace_back(family->members[i].name, truth(los.factor_truths[i]));
      r.add("Henkin truth in the ultraproduct equals U-largeness of the truth set", los.large_set_truth,
            los.ultra_truth);
    } else {
      static const std::map<std::string, std::string> suites{
          {"los", "los_suite"}, {"fubini", "fubini_suite"}, {"metric", "metric_suite"}, {"omission", "omission_suite"}};
      auto it = suites.find(w);
      if (it == suites.end()) throw solab::InputError("unknown check '" + w + "' (los, fubini, metric, omission)");
      solab::SuiteParams p;
      p.trials = conf.trials;
      p.seed = conf.seed;
      p.arity_bound = conf.arity_bound;
      p.eval = conf.eval;
      r = solab::demo(it->second, p);
    }
    *pass = r.pass() ? 1 : 0;
    *out = dup(conf.format == SOLAB_FORMAT_JSON ? solab::to_json(r, conf.timing) + "\n" : solab::to_text(r, conf.timing));
  });
}

solab_status solab_separate(const solab_family* k, const solab_family* l, const solab_fragment* gamma,
                            const solab_config* c, int* found, char** out) {
  return guard([&] {
    require(k, l, gamma, found, out);
    const auto& conf = cfg(c);
    const auto ks = structures(k), ls = structures(l);
    const auto vk = solab::vector_set(ks, gamma->gamma, conf.eval);
    const auto vl = solab::vector_set(ls, gamma->gamma, conf.eval);
    auto vectors = [](const solab::VectorSet& v, const solab_family* fam) {
      Json arr = Json::array();
      for (std::size_t i = 0; i < v.vectors.size(); ++i) {
        Json names = Json::array();
        for (auto w : v.witnesses[i]) names.push_back(fam->members[w].name);
        arr.push_back({{"vector", v.vectors[i].to_string()}, {"witnesses", names}});
      }
      return arr;
    };
    const auto sep = solab::find_separating_formula(ks, ls, gamma->gamma, conf.eval);
    *found = sep ? 1 : 0;
    Json j;
    j["fragment"] = Json::array();
    for (const auto& g : gamma->gamma) j["fragment"].push_back(g.to_string());
    j["k_vectors"] = vectors(vk, k);
    j["l_vectors"] = vectors(vl, l);
    std::string dist = "undefined";
    if (!vk.vectors.empty() && !vl.vectors.empty()) dist = solab::set_distance(vk, vl).to_string();
    j["distance"] = dist;
    j["separator"] = sep ? Json(sep->to_string()) : Json(nullptr);
    std::string text = "distance: " + dist + "\n";
    text += sep ? "separator: " + sep->to_string() + "\n"
                : "no Boolean combination of the fragment separates the classes\n";
    *out = dup(render(conf, j, text));
  });
}

solab_status solab_types(const solab_structure* s, const solab_type_context* ctx, const solab_config* c,
                         char** out) {
  return guard([&] {
    require(s, ctx, out);
    const auto& conf = cfg(c);
    const auto types = solab::realized_types(s->s, ctx->ctx);
    Json j;
    j["scope"] = solab::kPoolScope;
    j["fragment"] = Json::array();
    for (const auto& f : ctx->ctx.fragment()) j["fragment"].push_back(f.to_string());
    j["types"] = Json::array();
    std::string text;
    for (const auto& t : types) {
      Json w = Json::object();
      for (std::size_t i = 0; i < t.witness.size(); ++i)
        w[solab::TypeContext::variable(i)] = solab::detail::relation_json(t.witness[i]);
      j["types"].push_back({{"type", t.type.to_string()}, {"witness", w}});
      text += t.type.to_string() + "  " + w.dump() + "\n";
    }
    *out = dup(render(conf, j, text));
  });
}

solab_status solab_omission(const solab_family* k, const solab_family* pool, const solab_type_context* ctx,
                            const solab_config* c, int* pass, char** out) {
  return guard([&] {
    require(k, pool, ctx, pass, out);
    const auto& conf = cfg(c);
    const auto ks = structures(k), ps = structures(pool);
    const auto pi = solab::omitted_by_all(ks, ps, ctx->ctx);
    const auto rep = solab::check_omission_axiomatization(ks, pi, ps, ctx->ctx);
    const auto a = solab::property_A_check(ks, ps, ctx->ctx);
    *pass = rep.pass() ? 1 : 0;
    Json j;
    j["scope"] = solab::kPoolScope;
    j["omitted_types"] = Json::array();
    for (const auto& t : pi) j["omitted_types"].push_back(t.to_string());
    j["realized_in_k"] = Json::array();
    for (const auto& [t, i] : rep.realized_in_k)
      j["realized_in_k"].push_back({{"type", t.to_string()}, {"witness", k->members[i].name}});
    j["unrealizing"] = Json::array();
    for (auto i : rep.unrealizing) j["unrealizing"].push_back(pool->members[i].name);
    j["property_A_counterexamples"] = Json::array();
    for (auto i : a.counterexamples) j["property_A_counterexamples"].push_back(pool->members[i].name);
    j["pass"] = rep.pass();
    std::string text = "omitted by all of K: " + join_types(pi) + "\n";
    text += rep.pass() ? "K is axiomatized within the pool by omitting these types\n"
                       : "omission axiomatization fails within the pool\n";
    for (auto i : rep.unrealizing) text += "  realizes none of them: " + pool->members[i].name + "\n";
    text += std::string("scope: ") + solab::kPoolScope + "\n";
    *out = dup(render(conf, j, text));
  });
}

solab_status solab_insep(const solab_family* ks, const solab_family* ls, const solab_config* c, int* found,
                         char** out) {
  return guard([&] {
    require(ks, ls, found, out);
    const auto& conf = cfg(c);
    const auto res = solab::principal_insep_search(structures(ks), structures(ls), conf.arity_bound);
    *found = res.witness ? 1 : 0;
    Json j;
    j["scope"] = res.scope;
    j["pairs_examined"] = res.pairs_examined;
    std::string text;
    if (res.witness) {
      j["witness"] = {{"k", ks->members[res.witness->k_index].name},
                      {"l", ls->members[res.witness->l_index].name},
                      {"map", res.witness->map},
                      {"upsilon_checked", res.upsilon_checked}};
      text = "witness: " + ks->members[res.witness->k_index].name + " ~ " +
             ls->members[res.witness->l_index].name + "\n";
    } else {
      j["witness"] = nullptr;
      text = "refuted at principal scale after " + std::to_string(res.pairs_examined) + " pairs\n";
    }
    text += "scope: " + res.scope + "\n";
    *out = dup(render(conf, j, text));
  });
}

solab_status solab_demo(const char* name, const solab_config* c, int* pass, char** out) {
  return guard([&] {
    require(name, pass, out);
    const auto& conf = cfg(c);
    solab::SuiteParams p;
    p.n = conf.n;
    p.nmax = conf.nmax;
    p.trials = conf.trials;
    p.seed = conf.seed;
    p.arity_bound = conf.arity_bound;
    p.eval = conf.eval;
    const auto r = solab::demo(name, p);
    *pass = r.pass() ? 1 : 0;
    *out = dup(conf.format == SOLAB_FORMAT_JSON ? solab::to_json(r, conf.timing) + "\n" : solab::to_text(r, conf.timing));
  });
}

}  // extern "C"
