// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>

#include "solab/error.hpp"
#include "solab/structure.hpp"

namespace solab {

namespace {

using Invariant = std::vector<std::size_t>;

// Per element: occurrences in each coordinate of each relation, then whether
// the constant tuple (e,...,e) is present.
std::vector<Invariant> element_invariants(const FiniteStructure& a) {
  std::vector<Invariant> inv(static_cast<std::size_t>(a.universe()));
  for (const auto& [name, rel] : a.relations()) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(a.universe() * rel.arity()), 0);
    std::vector<char> diag(static_cast<std::size_t>(a.universe()), 0);
    for (const auto& t : rel.tuples()) {
      for (std::size_t i = 0; i < t.size(); ++i)
        ++counts[static_cast<std::size_t>(t[i]) * t.size() + i];
      if (std::all_of(t.begin(), t.end(), [&](Element e) { return e == t[0]; }))
        diag[static_cast<std::size_t>(t[0])] = 1;
    }
    for (std::size_t e = 0; e < inv.size(); ++e) {
      for (int i = 0; i < rel.arity(); ++i)
        inv[e].push_back(counts[e * static_cast<std::size_t>(rel.arity()) + static_cast<std::size_t>(i)]);
      inv[e].push_back(static_cast<std::size_t>(diag[e]));
    }
  }
  return inv;
}

std::vector<Invariant> sorted(std::vector<Invariant> v) {
  std::sort(v.begin(), v.end());
  return v;
}

class IsoSearch {
 public:
  IsoSearch(const FiniteStructure& a, const FiniteStructure& b)
      : a_(a), b_(b), n_(a.universe()), ia_(element_invariants(a)), ib_(element_invariants(b)) {
    map_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), 0);
  }

  std::optional<std::vector<Element>> run() {
    if (sorted(ia_) != sorted(ib_)) return std::nullopt;
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  bool extend(int i) {
    if (i == n_) return true;
    const auto ui = static_cast<std::size_t>(i);
    for (Element img = 0; img < n_; ++img) {
      const auto uimg = static_cast<std::size_t>(img);
      if (used_[uimg] || ia_[ui] != ib_[uimg]) continue;
      map_[ui] = img;
      used_[uimg] = 1;
      if (consistent(i) && extend(i + 1)) return true;
      used_[uimg] = 0;
      map_[ui] = -1;
    }
    return false;
  }

  // Every tuple over {0..i} that mentions i agrees on both sides.
  bool consistent(int i) const {
    for (const auto& [name, ra] : a_.relations()) {
      const Relation& rb = b_.relation(name);
      const int k = ra.arity();
      Tuple t(static_cast<std::size_t>(k), 0), img(static_cast<std::size_t>(k));
      for (;;) {
        if (std::find(t.begin(), t.end(), i) != t.end()) {
          for (std::size_t j = 0; j < t.size(); ++j) img[j] = map_[static_cast<std::size_t>(t[j])];
          if (ra.contains(t) != rb.contains(img)) return false;
        }
        int pos = k - 1;
        while (pos >= 0 && t[static_cast<std::size_t>(pos)] == i) t[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++t[static_cast<std::size_t>(pos)];
      }
    }
    return true;
  }

  const FiniteStructure& a_;
  const FiniteStructure& b_;
  int n_;
  std::vector<Invariant> ia_, ib_;
  std::vector<Element> map_;
  std::vector<char> used_;
};

}  // namespace

std::optional<std::vector<Element>> find_isomorphism(const FiniteStructure& a,
                                                     const FiniteStructure& b) {
  if (!(a.signature() == b.signature()))
    throw InputError("isomorphism check needs structures over the same signature");
  if (a.universe() != b.universe()) return std::nullopt;
  for (const auto& [name, rel] : a.relations())
    if (rel.count() != b.relation(name).count()) return std::nullopt;
  return IsoSearch(a, b).run();
}

FiniteStructure permute(const FiniteStructure& a, const std::vector<Element>& map) {
  if (static_cast<int>(map.size()) != a.universe()) throw InputError("permutation has the wrong length");
  std::vector<char> hit(map.size(), 0);
  for (Element e : map) {
    if (e < 0 || e >= a.universe() || hit[static_cast<std::size_t>(e)])
      throw InputError("map is not a bijection of the universe");
    hit[static_cast<std::size_t>(e)] = 1;
  }
  FiniteStructure out(a.signature(), a.universe());
  for (const auto& [name, rel] : a.relations()) {
    for (auto t : rel.tuples()) {
      for (auto& e : t) e = map[static_cast<std::size_t>(e)];
      out.add_tuple(name, t);
    }
  }
  return out;
}

std::vector<FiniteStructure> all_structures(const Signature& sig, int universe, std::uint64_t budget) {
  FiniteStructure blank(sig, universe);
  std::vector<std::pair<std::string, std::size_t>> widths;
  std::size_t total = 0;
  for (const auto& [name, rel] : blank.relations()) {
    widths.emplace_back(name, rel.capacity());
    total += rel.capacity();
  }
  if (total >= 63 || (std::uint64_t{1} << total) > budget)
    throw BudgetExceeded("enumerating structures of size " + std::to_string(universe) + " needs 2^" +
                         std::to_string(total) + " candidates, budget is " + std::to_string(budget));
  std::vector<FiniteStructure> out;
  const std::uint64_t count = std::uint64_t{1} << total;
  out.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t c = 0; c < count; ++c) {
    FiniteStructure s = blank;
    std::uint64_t bits = c;
    for (const auto& [name, width] : widths) {
      s.set_relation(name, Relation::from_bits(*sig.arity(name), universe, bits));
      bits >>= width;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<FiniteStructure> isomorphism_representatives(const std::vector<FiniteStructure>& in) {
  std::map<std::pair<int, std::vector<Invariant>>, std::vector<std::size_t>> buckets;
  std::vector<FiniteStructure> out;
  for (const auto& s : in) {
    auto& bucket = buckets[{s.universe(), sorted(element_invariants(s))}];
    bool fresh = true;
    for (std::size_t idx : bucket) {
      if (find_isomorphism(out[idx], s)) {
        fresh = false;
        break;
      }
    }
    if (fresh) {
      bucket.push_back(out.size());
      out.push_back(s);
    }
  }
  return out;
}

std::vector<FiniteStructure> models_up_to(const Formula& f, const Signature& sig, int nmax,
                                          const EvalOptions& options) {
  std::vector<FiniteStructure> models;
  for (int n = 1; n <= nmax; ++n)
    for (auto& s : all_structures(sig, n))
      if (eval_so_full(s, f, options)) models.push_back(std::move(s));
  return isomorphism_representatives(models);
}

}  // namespace solab
