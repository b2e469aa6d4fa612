// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "solab/formula_space.hpp"
#include "solab/structure.hpp"
#include "solab/types.hpp"

namespace solab {

/// {"universe": n, "signature": {"edge": 2}, "relations": {"edge": [[0,1]]}}.
/// Symbols missing from "relations" are empty. Throws InputError.
FiniteStructure structure_from_json(const std::string& text);
std::string structure_to_json(const FiniteStructure& a, bool pretty = false);

FiniteStructure load_structure(const std::filesystem::path& path);

struct NamedStructure {
  std::string name;
  FiniteStructure structure;
};

/// A directory of structure files (sorted by file name) or a JSON array of
/// structures (named "#0", "#1", ...).
std::vector<NamedStructure> load_family(const std::filesystem::path& path);

/// JSON array of formula strings.
Fragment load_fragment(const std::filesystem::path& path);

/// {"arities": [1, 2], "fragment": ["EX x X0(x)", ...]}.
TypeContext type_context_from_json(const std::string& text);
TypeContext load_type_context(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace solab
