// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace solab {

/// Relational signature: relation name -> arity (>= 1), ordered by name.
class Signature {
 public:
  using Map = std::map<std::string, int>;

  Signature() = default;
  Signature(std::initializer_list<std::pair<const std::string, int>> symbols);

  /// Throws InputError on a non-positive arity or a conflicting redeclaration.
  void add(const std::string& name, int arity);

  std::optional<int> arity(const std::string& name) const;
  bool contains(const std::string& name) const { return symbols_.count(name) != 0; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }

  Map::const_iterator begin() const { return symbols_.begin(); }
  Map::const_iterator end() const { return symbols_.end(); }

  bool operator==(const Signature&) const = default;

 private:
  Map symbols_;
};

}  // namespace solab
