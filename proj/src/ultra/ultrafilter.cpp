// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>

#include "solab/error.hpp"
#include "solab/ultra.hpp"

namespace solab {

Ultrafilter Ultrafilter::principal(int index_size, int i0) {
  if (index_size < 1) throw InputError("ultrafilter index set must be nonempty");
  if (i0 < 0 || i0 >= index_size)
    throw InputError("principal index " + std::to_string(i0) + " outside index set of size " +
                     std::to_string(index_size));
  Ultrafilter u;
  u.size_ = index_size;
  u.i0_ = i0;
  return u;
}

Ultrafilter Ultrafilter::product(const Ultrafilter& f, const Ultrafilter& g) {
  Ultrafilter u;
  u.size_ = f.size_ * g.size_;
  u.left_ = std::make_shared<const Ultrafilter>(f);
  u.right_ = std::make_shared<const Ultrafilter>(g);
  return u;
}

bool Ultrafilter::contains(const std::vector<bool>& set) const {
  if (static_cast<int>(set.size()) != size_)
    throw InputError("subset has length " + std::to_string(set.size()) + ", index set has size " +
                     std::to_string(size_));
  if (!is_product()) return set[static_cast<std::size_t>(i0_)];
  // X in F x G  iff  {j : {i : (i,j) in X} in F} in G
  const int ni = left_->size_, nj = right_->size_;
  std::vector<bool> outer(static_cast<std::size_t>(nj));
  std::vector<bool> inner(static_cast<std::size_t>(ni));
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) inner[static_cast<std::size_t>(i)] = set[static_cast<std::size_t>(i * nj + j)];
    outer[static_cast<std::size_t>(j)] = left_->contains(inner);
  }
  return right_->contains(outer);
}

int Ultrafilter::principal_element() const {
  std::vector<bool> single(static_cast<std::size_t>(size_), false);
  for (int i = 0; i < size_; ++i) {
    single[static_cast<std::size_t>(i)] = true;
    if (contains(single)) return i;
    single[static_cast<std::size_t>(i)] = false;
  }
  throw EvalError("ultrafilter contains no singleton");
}

std::string Ultrafilter::to_string() const {
  if (is_product()) return left_->to_string() + " x " + right_->to_string();
  return "principal:" + std::to_string(i0_) + "/" + std::to_string(size_);
}

bool Ultrafilter::operator==(const Ultrafilter& other) const {
  if (size_ != other.size_ || is_product() != other.is_product()) return false;
  if (!is_product()) return i0_ == other.i0_;
  return *left_ == *other.left_ && *right_ == *other.right_;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw InputError("bad ultrafilter literal '" + std::string(whole) + "'");
  return v;
}

struct PrincipalSpec {
  int index;
  std::optional<int> size;
};

PrincipalSpec parse_principal(std::string_view s, std::string_view whole) {
  s = trim(s);
  constexpr std::string_view prefix = "principal:";
  if (s.substr(0, prefix.size()) != prefix)
    throw InputError("bad ultrafilter literal '" + std::string(whole) +
                     "' (expected principal:i or principal:i/m)");
  s.remove_prefix(prefix.size());
  PrincipalSpec spec{};
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    spec.index = parse_int(s.substr(0, slash), whole);
    spec.size = parse_int(s.substr(slash + 1), whole);
  } else {
    spec.index = parse_int(s, whole);
  }
  return spec;
}

}  // namespace

Ultrafilter parse_ultrafilter(std::string_view text, std::optional<int> family_size) {
  const auto x = text.find(" x ");
  if (x == std::string_view::npos) {
    auto spec = parse_principal(text, text);
    auto size = spec.size ? spec.size : family_size;
    if (!size) throw InputError("ultrafilter '" + std::string(text) + "' needs an index-set size");
    if (spec.size && family_size && *spec.size != *family_size)
      throw InputError("ultrafilter size " + std::to_string(*spec.size) + " does not match family of " +
                       std::to_string(*family_size));
    return Ultrafilter::principal(*size, spec.index);
  }
  auto a = parse_principal(text.substr(0, x), text);
  auto b = parse_principal(text.substr(x + 3), text);
  if (!a.size || !b.size) {
    if (!family_size || (!a.size && !b.size))
      throw InputError("product ultrafilter '" + std::string(text) +
                       "' needs explicit factor sizes (principal:i/m)");
    const int known = a.size ? *a.size : *b.size;
    if (known <= 0 || *family_size % known != 0)
      throw InputError("family of " + std::to_string(*family_size) +
                       " structures does not split into factors of size " + std::to_string(known));
    (a.size ? b.size : a.size) = *family_size / known;
  }
  auto u = Ultrafilter::product(Ultrafilter::principal(*a.size, a.index),
                                Ultrafilter::principal(*b.size, b.index));
  if (family_size && u.index_size() != *family_size)
    throw InputError("product ultrafilter has " + std::to_string(u.index_size()) +
                     " indices but the family has " + std::to_string(*family_size));
  return u;
}

std::vector<std::vector<bool>> all_subsets(int m) {
  if (m < 0 || m > 20) throw InputError("subset enumeration supports index sets up to 20");
  std::vector<std::vector<bool>> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    std::vector<bool> s(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = (bits >> i) & 1u;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace solab
