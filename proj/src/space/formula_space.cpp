// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "solab/formula_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "solab/error.hpp"

namespace solab {

// Fragment ----------------------------------------------------------------

Fragment::Fragment(std::vector<Formula> formulas) {
  for (auto& f : formulas) {
    if (!add(f))
      throw ValidationError(ValidationError::Kind::Duplicate,
                            "fragment lists '" + f.to_string() + "' twice");
  }
}

Fragment Fragment::parse(const std::vector<std::string>& texts) {
  std::vector<Formula> fs;
  for (const auto& t : texts) fs.push_back(parse_formula(t));
  return Fragment(std::move(fs));
}

bool Fragment::add(const Formula& f) {
  if (auto free = free_fo_vars(f); !free.empty())
    throw ValidationError(ValidationError::Kind::NotClosed,
                          "fragment member '" + f.to_string() + "' has free variable '" + free.front() + "'");
  if (std::find(formulas_.begin(), formulas_.end(), f) != formulas_.end()) return false;
  formulas_.push_back(f);
  return true;
}

// Vectors and distances ---------------------------------------------------

TheoryVector TheoryVector::from_string(const std::string& s) {
  std::vector<bool> bits;
  for (char c : s) {
    if (c != '0' && c != '1') throw InputError("theory vector '" + s + "' is not a bitstring");
    bits.push_back(c == '1');
  }
  return TheoryVector(std::move(bits));
}

std::string TheoryVector::to_string() const {
  std::string s;
  for (bool b : bits_) s += b ? '1' : '0';
  return s;
}

double Distance::value() const { return index_ ? std::ldexp(1.0, -*index_) : 0.0; }

std::string Distance::to_string() const {
  if (!index_) return "0";
  if (*index_ == 0) return "1";
  if (*index_ < 63) return "1/" + std::to_string(std::uint64_t{1} << *index_);
  return "2^-" + std::to_string(*index_);
}

std::strong_ordering Distance::operator<=>(const Distance& other) const {
  if (!index_ || !other.index_) return index_.has_value() <=> other.index_.has_value();
  return other.index_ <=> index_;
}

Distance ultrametric(const TheoryVector& x, const TheoryVector& y) {
  if (x.size() != y.size())
    throw InputError("theory vectors of lengths " + std::to_string(x.size()) + " and " +
                     std::to_string(y.size()) + " are over different fragments");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return Distance::pow2_neg(static_cast<int>(i));
  return Distance::zero();
}

bool VectorSet::contains(const TheoryVector& v) const {
  return std::binary_search(vectors.begin(), vectors.end(), v);
}

TheoryVector theory_vector(const FiniteStructure& a, const Fragment& gamma, const EvalOptions& options) {
  std::vector<bool> bits;
  for (const auto& g : gamma) bits.push_back(eval_so_full(a, g, options));
  return TheoryVector(std::move(bits));
}

TheoryVector theory_vector(const HenkinModel& m, const Fragment& gamma) {
  std::vector<bool> bits;
  for (const auto& g : gamma) bits.push_back(henkin_eval(m, g));
  return TheoryVector(std::move(bits));
}

VectorSet vector_set(const std::vector<FiniteStructure>& structures, const Fragment& gamma,
                     const EvalOptions& options) {
  std::map<TheoryVector, std::vector<std::size_t>> table;
  for (std::size_t i = 0; i < structures.size(); ++i)
    table[theory_vector(structures[i], gamma, options)].push_back(i);
  VectorSet out;
  for (auto& [v, w] : table) {
    out.vectors.push_back(v);
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

Distance set_distance(const VectorSet& s, const VectorSet& t) {
  if (s.vectors.empty() || t.vectors.empty())
    throw InputError("distance to an empty vector set is undefined");
  Distance best = ultrametric(s.vectors.front(), t.vectors.front());
  for (const auto& x : s.vectors)
    for (const auto& y : t.vectors) best = std::min(best, ultrametric(x, y));
  return best;
}

bool intersects(const VectorSet& s, const VectorSet& t) {
  return std::any_of(s.vectors.begin(), s.vectors.end(), [&](const auto& v) { return t.contains(v); });
}

// Separation --------------------------------------------------------------

std::optional<Formula> find_separating_formula(const std::vector<FiniteStructure>& k,
                                               const std::vector<FiniteStructure>& l,
                                               const Fragment& gamma, const EvalOptions& options) {
  const VectorSet vk = vector_set(k, gamma, options);
  const VectorSet vl = vector_set(l, gamma, options);
  if (intersects(vk, vl)) return std::nullopt;
  if (vk.vectors.empty()) return parse_formula("EX x x != x");
  std::vector<Formula> disjuncts;
  for (const auto& v : vk.vectors) {
    std::vector<Formula> lits;
    for (std::size_t i = 0; i < v.size(); ++i) lits.push_back(v[i] ? gamma[i] : Formula::negation(gamma[i]));
    disjuncts.push_back(lits.empty() ? parse_formula("ALL x x = x") : Formula::conj_all(lits));
  }
  return Formula::disj_all(disjuncts);
}

Fragment boolean_closure(const Fragment& gamma, int depth, std::size_t max_size) {
  if (depth < 0) throw InputError("closure depth must be nonnegative");
  Fragment out = gamma;
  auto push = [&](const Formula& f) {
    out.add(f);
    if (out.size() > max_size)
      throw BudgetExceeded("Boolean closure exceeds " + std::to_string(max_size) + " formulas");
  };
  for (int d = 0; d < depth; ++d) {
    const std::vector<Formula> level = out.formulas();
    for (const auto& a : level) push(Formula::negation(a));
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i; j < level.size(); ++j) {
        push(Formula::conj(level[i], level[j]));
        push(Formula::disj(level[i], level[j]));
      }
    }
  }
  return out;
}

}  // namespace solab
