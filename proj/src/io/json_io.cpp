// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "solab/error.hpp"
#include "solab/io.hpp"

namespace solab {

namespace detail {

Json relation_json(const Relation& r) {
  Json tuples = Json::array();
  for (const auto& t : r.tuples()) tuples.push_back(t);
  return tuples;
}

Json structure_json(const FiniteStructure& a) {
  Json j;
  j["universe"] = a.universe();
  j["signature"] = Json::object();
  for (const auto& [name, arity] : a.signature()) j["signature"][name] = arity;
  j["relations"] = Json::object();
  for (const auto& [name, rel] : a.relations()) j["relations"][name] = relation_json(rel);
  return j;
}

FiniteStructure structure_from(const Json& j) {
  try {
    if (!j.is_object()) throw InputError("structure must be a JSON object");
    if (!j.contains("universe") || !j["universe"].is_number_integer())
      throw InputError("structure needs an integer \"universe\"");
    const int n = j["universe"].get<int>();
    if (n < 1) throw InputError("structure universe must be at least 1");
    Signature sig;
    if (j.contains("signature")) {
      if (!j["signature"].is_object()) throw InputError("\"signature\" must map names to arities");
      for (const auto& [name, arity] : j["signature"].items()) {
        if (!arity.is_number_integer()) throw InputError("arity of '" + name + "' must be an integer");
        sig.add(name, arity.get<int>());
      }
    }
    FiniteStructure a(sig, n);
    if (j.contains("relations")) {
      if (!j["relations"].is_object()) throw InputError("\"relations\" must map names to tuple lists");
      for (const auto& [name, tuples] : j["relations"].items()) {
        const auto arity = sig.arity(name);
        if (!arity) throw InputError("relation '" + name + "' is not in the signature");
        if (!tuples.is_array()) throw InputError("tuples of '" + name + "' must be an array");
        for (const auto& t : tuples) {
          if (!t.is_array() || static_cast<int>(t.size()) != *arity)
            throw InputError("tuple of '" + name + "' must have length " + std::to_string(*arity));
          Tuple tuple;
          for (const auto& e : t) {
            if (!e.is_number_integer()) throw InputError("tuple entries must be integers");
            const int v = e.get<int>();
            if (v < 0 || v >= n)
              throw InputError("element " + std::to_string(v) + " of '" + name + "' outside universe of size " +
                               std::to_string(n));
            tuple.push_back(v);
          }
          a.add_tuple(name, tuple);
        }
      }
    }
    return a;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed structure: ") + e.what());
  }
}

}  // namespace detail

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

detail::Json parse_json(const std::string& text, const std::string& what) {
  try {
    return detail::Json::parse(text);
  } catch (const detail::Json::exception& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

}  // namespace

FiniteStructure structure_from_json(const std::string& text) {
  return detail::structure_from(parse_json(text, "structure"));
}

std::string structure_to_json(const FiniteStructure& a, bool pretty) {
  return detail::structure_json(a).dump(pretty ? 2 : -1);
}

FiniteStructure load_structure(const std::filesystem::path& path) {
  try {
    return structure_from_json(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<NamedStructure> load_family(const std::filesystem::path& path) {
  std::vector<NamedStructure> out;
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back({f.filename().string(), load_structure(f)});
    return out;
  }
  const auto j = parse_json(read_file(path), path.string());
  try {
    // A lone structure is a one-member family.
    if (j.is_object()) {
      out.push_back({path.filename().string(), detail::structure_from(j)});
      return out;
    }
    if (!j.is_array()) throw InputError("a family file must hold a JSON array or a structure");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back({"#" + std::to_string(i), detail::structure_from(j[i])});
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return out;
}

Fragment load_fragment(const std::filesystem::path& path) {
  const auto j = parse_json(read_file(path), path.string());
  if (!j.is_array()) throw InputError(path.string() + ": a fragment file must hold a JSON array of strings");
  std::vector<std::string> texts;
  for (const auto& s : j) {
    if (!s.is_string()) throw InputError(path.string() + ": fragment entries must be strings");
    texts.push_back(s.get<std::string>());
  }
  return Fragment::parse(texts);
}

TypeContext type_context_from_json(const std::string& text) {
  const auto j = parse_json(text, "type context");
  if (!j.is_object() || !j.contains("arities") || !j.contains("fragment") || !j["arities"].is_array() ||
      !j["fragment"].is_array())
    throw InputError("type context needs \"arities\" and \"fragment\" arrays");
  std::vector<int> arities;
  for (const auto& a : j["arities"]) {
    if (!a.is_number_integer()) throw InputError("arities must be integers");
    arities.push_back(a.get<int>());
  }
  std::vector<Formula> fragment;
  for (const auto& s : j["fragment"]) {
    if (!s.is_string()) throw InputError("fragment entries must be strings");
    fragment.push_back(parse_formula(s.get<std::string>()));
  }
  return TypeContext(std::move(arities), std::move(fragment));
}

TypeContext load_type_context(const std::filesystem::path& path) {
  return type_context_from_json(read_file(path));
}

}  // namespace solab
