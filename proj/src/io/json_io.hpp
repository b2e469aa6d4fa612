// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "solab/structure.hpp"

namespace solab::detail {

using Json = nlohmann::ordered_json;

Json structure_json(const FiniteStructure& a);
FiniteStructure structure_from(const Json& j);
Json relation_json(const Relation& r);

}  // namespace solab::detail
