// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>

#include "../io/json_io.hpp"
#include "solab/workbench.hpp"

namespace solab {

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::add(std::string name, std::string expected, std::string actual) {
  const bool ok = expected == actual;
  checks.push_back({std::move(name), std::move(expected), std::move(actual), ok});
}

void Report::add(std::string name, bool expected, bool actual) {
  add(std::move(name), std::string(expected ? "true" : "false"), std::string(actual ? "true" : "false"));
}

std::string to_json(const Report& r, bool timing) {
  detail::Json j;
  j["demo"] = r.demo;
  j["params"] = detail::Json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["checks"] = detail::Json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  j["pass"] = r.pass();
  if (timing) j["runtime_ms"] = r.runtime_ms;
  return j.dump(2);
}

std::string to_text(const Report& r, bool timing) {
  std::string out = r.demo;
  for (const auto& [k, v] : r.params) out += " " + k + "=" + v;
  out += "\n";
  for (const auto& c : r.checks) {
    out += c.pass ? "  PASS " : "  FAIL ";
    out += c.name;
    if (!c.pass) out += " (expected " + c.expected + ", got " + c.actual + ")";
    out += "\n";
  }
  out += r.pass() ? "PASS" : "FAIL";
  out += " (" + std::to_string(std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; })) +
         "/" + std::to_string(r.checks.size()) + " checks)";
  if (timing) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " in %.1f ms", r.runtime_ms);
    out += buf;
  }
  out += "\n";
  return out;
}

}  // namespace solab
