// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "solab/structure.hpp"

#include <bit>
#include <limits>

#include "solab/error.hpp"

namespace solab {

// Relation ----------------------------------------------------------------

namespace {

// Largest dense relation we are willing to allocate (bits).
constexpr std::size_t kMaxCapacity = std::size_t{1} << 28;

}  // namespace

Relation::Relation(int arity, int universe) : arity_(arity), universe_(universe) {
  if (arity < 1 || universe < 1) throw InputError("relation needs arity >= 1 and universe >= 1");
  std::size_t cap = 1;
  for (int i = 0; i < arity; ++i) {
    if (cap > kMaxCapacity / static_cast<std::size_t>(universe))
      throw BudgetExceeded("relation of arity " + std::to_string(arity) + " on " +
                           std::to_string(universe) + " elements is too large to store");
    cap *= static_cast<std::size_t>(universe);
  }
  capacity_ = cap;
  words_.assign((cap + 63) / 64, 0);
}

Relation Relation::from_bits(int arity, int universe, std::uint64_t bits) {
  Relation r(arity, universe);
  if (r.capacity_ > 64) throw InputError("from_bits needs at most 64 candidate tuples");
  if (r.capacity_ < 64) bits &= (std::uint64_t{1} << r.capacity_) - 1;
  r.words_[0] = bits;
  return r;
}

Relation Relation::from_tuples(int arity, int universe, const std::vector<Tuple>& tuples) {
  Relation r(arity, universe);
  for (const auto& t : tuples) r.insert(t);
  return r;
}

Relation Relation::full(int arity, int universe) {
  Relation r(arity, universe);
  for (std::size_t c = 0; c < r.capacity_; ++c) r.set(c);
  return r;
}

std::size_t Relation::encode(std::span<const Element> tuple) const {
  if (static_cast<int>(tuple.size()) != arity_)
    throw InputError("tuple length " + std::to_string(tuple.size()) + " does not match arity " +
                     std::to_string(arity_));
  std::size_t code = 0;
  for (Element e : tuple) {
    if (e < 0 || e >= universe_)
      throw InputError("element " + std::to_string(e) + " outside universe of size " +
                       std::to_string(universe_));
    code = code * static_cast<std::size_t>(universe_) + static_cast<std::size_t>(e);
  }
  return code;
}

Tuple Relation::decode(std::size_t code) const {
  Tuple t(static_cast<std::size_t>(arity_));
  for (int i = arity_ - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<Element>(code % static_cast<std::size_t>(universe_));
    code /= static_cast<std::size_t>(universe_);
  }
  return t;
}

void Relation::set(std::size_t code, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (code & 63);
  if (value) {
    words_[code >> 6] |= mask;
  } else {
    words_[code >> 6] &= ~mask;
  }
}

void Relation::assign_bits(std::uint64_t bits) {
  if (capacity_ > 64) throw InputError("assign_bits needs at most 64 candidate tuples");
  if (capacity_ < 64) bits &= (std::uint64_t{1} << capacity_) - 1;
  words_[0] = bits;
}

std::size_t Relation::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  for (std::size_t c = 0; c < capacity_; ++c)
    if (test(c)) out.push_back(decode(c));
  return out;
}

std::strong_ordering Relation::operator<=>(const Relation& other) const {
  if (auto c = arity_ <=> other.arity_; c != 0) return c;
  if (auto c = universe_ <=> other.universe_; c != 0) return c;
  // Lexicographic on the tuple-membership sequence, lowest code first.
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] == other.words_[w]) continue;
    const std::uint64_t diff = words_[w] ^ other.words_[w];
    const std::uint64_t low = diff & (~diff + 1);
    return (words_[w] & low) ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// FiniteStructure ---------------------------------------------------------

FiniteStructure::FiniteStructure(Signature signature, int universe)
    : signature_(std::move(signature)), universe_(universe) {
  if (universe < 1) throw InputError("structures need a nonempty universe");
  for (const auto& [name, arity] : signature_) relations_.emplace(name, Relation(arity, universe));
}

const Relation& FiniteStructure::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw InputError("no relation named '" + name + "'");
  return it->second;
}

void FiniteStructure::set_relation(const std::string& name, Relation rel) {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw InputError("no relation named '" + name + "'");
  if (rel.arity() != it->second.arity() || rel.universe() != universe_)
    throw InputError("relation '" + name + "' does not match its declared shape");
  it->second = std::move(rel);
}

void FiniteStructure::add_tuple(const std::string& name, const Tuple& tuple) {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw InputError("no relation named '" + name + "'");
  it->second.insert(tuple);
}

}  // namespace solab
