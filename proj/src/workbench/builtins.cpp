// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <limits>

#include "solab/error.hpp"
#include "solab/ultra.hpp"
#include "solab/workbench.hpp"

namespace solab {

namespace {

int parse_param(std::string_view key, std::string_view text) {
  int v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty())
    throw InputError("builtin '" + std::string(key) + "' needs an integer parameter");
  return v;
}

const char* const kInfinite =
    "EX2 R:2 ((ALL y ~R(y,y)) & (ALL y ALL z ALL w (R(y,z) & R(z,w) -> R(y,w))) & "
    "(ALL y ALL z (R(y,z) | R(z,y) | y = z)) & (ALL y EX z R(y,z)))";

// S is a permutation whose steps follow edges (in either stored direction);
// every step climbs the linear order L except one from its top to its bottom,
// so S is a single cycle through all vertices.
const char* const kHamiltonian =
    "EX2 S:2 EX2 L:2 ("
    "(ALL x EX y S(x,y)) & "
    "(ALL x ALL y ALL z (S(x,y) & S(x,z) -> y = z)) & "
    "(ALL x ALL y ALL z (S(x,z) & S(y,z) -> x = y)) & "
    "(ALL x ALL y (S(x,y) -> edge(x,y) | edge(y,x))) & "
    "(ALL x ~L(x,x)) & "
    "(ALL x ALL y ALL z (L(x,y) & L(y,z) -> L(x,z))) & "
    "(ALL x ALL y (L(x,y) | L(y,x) | x = y)) & "
    "(ALL x ALL y (S(x,y) -> L(x,y) | ((ALL z ~L(x,z)) & (ALL z ~L(z,y))))) & "
    "(EX x EX y EX z (x != y & x != z & y != z)))";

Formula at_least(int n) {
  std::vector<Formula> parts;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      parts.push_back(Formula::neq("x" + std::to_string(i), "x" + std::to_string(j)));
  Formula body = parts.empty() ? Formula::eq("x0", "x0") : Formula::conj_all(parts);
  for (int i = n - 1; i >= 0; --i) body = Formula::exists("x" + std::to_string(i), body);
  return body;
}

Formula colorable(int k) {
  std::vector<Formula> some_color, clash;
  for (int c = 0; c < k; ++c) {
    const std::string name = "C" + std::to_string(c);
    some_color.push_back(Formula::atom(name, {"x"}));
    clash.push_back(Formula::negation(
        Formula::conj(Formula::atom(name, {"x"}), Formula::atom(name, {"y"}))));
  }
  Formula body = Formula::conj(
      Formula::forall("x", Formula::disj_all(some_color)),
      Formula::forall("x", Formula::forall("y", Formula::implies(Formula::atom("edge", {"x", "y"}),
                                                                 Formula::conj_all(clash)))));
  for (int c = k - 1; c >= 0; --c) body = Formula::exists_so("C" + std::to_string(c), 1, body);
  return body;
}

}  // namespace

NamedFormula builtin(std::string_view key) {
  if (key == "infinite")
    return {"infinite", parse_formula(kInfinite), Signature{},
            "structures carrying a strict linear order without a top element (infinite structures)"};
  if (key == "hamiltonian")
    return {"hamiltonian", parse_formula(kHamiltonian), graph_signature(),
            "graphs on at least 3 vertices with a Hamiltonian cycle"};
  if (const auto colon = key.find(':'); colon != std::string_view::npos) {
    const auto head = key.substr(0, colon);
    const int n = parse_param(key, key.substr(colon + 1));
    if (head == "at_least") {
      if (n < 1) throw InputError("at_least:n needs n >= 1");
      return {std::string(key), at_least(n), Signature{},
              "structures with at least " + std::to_string(n) + " elements"};
    }
    if (head == "colorable") {
      if (n < 1) throw InputError("colorable:k needs k >= 1");
      return {std::string(key), colorable(n), graph_signature(),
              "graphs with a proper " + std::to_string(n) + "-coloring"};
    }
  }
  throw InputError("unknown builtin '" + std::string(key) + "' (known: infinite, at_least:n, hamiltonian, colorable:k)");
}

std::vector<std::string> builtin_keys() { return {"infinite", "at_least:n", "hamiltonian", "colorable:k"}; }

Signature graph_signature() { return Signature{{"edge", 2}}; }

FiniteStructure graph(int n, const std::vector<std::pair<Element, Element>>& edges) {
  FiniteStructure g(graph_signature(), n);
  for (auto [a, b] : edges) {
    g.add_tuple("edge", {a, b});
    g.add_tuple("edge", {b, a});
  }
  return g;
}

FiniteStructure cycle_graph(int n) {
  if (n < 3) throw InputError("cycle_graph needs n >= 3");
  std::vector<std::pair<Element, Element>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return graph(n, edges);
}

FiniteStructure double_cycle(int n) {
  if (n < 3) throw InputError("double_cycle needs n >= 3");
  std::vector<std::pair<Element, Element>> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(i, (i + 1) % n);
    edges.emplace_back(n + i, n + (i + 1) % n);
  }
  return graph(2 * n, edges);
}

// Inseparability at principal scale -------------------------------------------

InsepResult principal_insep_search(const std::vector<FiniteStructure>& ks,
                                   const std::vector<FiniteStructure>& ls, int arity_bound) {
  InsepResult result;
  result.scope =
      "principal ultrafilters only: every ultrapower is isomorphic to its factor and every relation is "
      "decomposable, so the search reduces to an isomorphism between members; a refutation says "
      "nothing about nonprincipal ultrafilters";
  for (std::size_t i = 0; i < ks.size() && !result.witness; ++i) {
    for (std::size_t j = 0; j < ls.size(); ++j) {
      ++result.pairs_examined;
      if (!(ks[i].signature() == ls[j].signature())) continue;
      auto map = find_isomorphism(ks[i], ls[j]);
      if (!map) continue;
      result.witness = InsepWitness{i, j, *map};
      // The induced map on relations must carry the full relation universe of
      // one side onto the other's.
      try {
        const auto left = full_henkin_model(ks[i], arity_bound);
        const auto right = full_henkin_model(ls[j], arity_bound);
        bool ok = true;
        for (const auto& [k, rels] : left.upsilon) {
          std::vector<Relation> image;
          for (const auto& r : rels) {
            Relation moved(k, r.universe());
            for (auto t : r.tuples()) {
              for (auto& e : t) e = (*map)[static_cast<std::size_t>(e)];
              moved.insert(t);
            }
            image.push_back(std::move(moved));
          }
          std::sort(image.begin(), image.end());
          ok = ok && image == right.upsilon.at(k);
        }
        result.upsilon_checked = ok;
      } catch (const BudgetExceeded&) {
        result.upsilon_checked = false;
      }
      break;
    }
  }
  return result;
}

// Random generation -----------------------------------------------------------

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InputError("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

FiniteStructure random_structure(Rng& rng, const Signature& sig, int universe, std::uint64_t num,
                                 std::uint64_t den) {
  FiniteStructure a(sig, universe);
  for (const auto& [name, arity] : sig) {
    Relation r(arity, universe);
    for (std::size_t c = 0; c < r.capacity(); ++c)
      if (rng.chance(num, den)) r.set(c);
    a.set_relation(name, std::move(r));
  }
  return a;
}

namespace {

class SentenceGen {
 public:
  SentenceGen(Rng& rng, const FormulaShape& shape) : rng_(rng), shape_(shape) {
    for (const auto& [name, arity] : shape.signature) symbols_.emplace_back(name, arity);
  }

  Formula run() { return quantify_fo(std::max(1, shape_.quantifier_depth)); }

 private:
  Formula gen(int q, int c) {
    if (fo_.empty()) return quantify_fo(q);
    enum Choice { Leaf, Connective, FoQuant, SoQuant };
    std::vector<std::pair<Choice, int>> weights;
    weights.emplace_back(Leaf, c == 0 && q == 0 ? 1 : 3);
    if (c > 0) weights.emplace_back(Connective, 4);
    if (q > 0) weights.emplace_back(FoQuant, 3);
    if (q > 0 && so_count_ < shape_.max_so_quantifiers && so_tuples_ + 3 <= shape_.so_tuple_cap)
      weights.emplace_back(SoQuant, 2);
    int total = 0;
    for (auto& w : weights) total += w.second;
    int pick = static_cast<int>(rng_.below(static_cast<std::uint64_t>(total)));
    Choice choice = Leaf;
    for (auto& w : weights) {
      if (pick < w.second) {
        choice = w.first;
        break;
      }
      pick -= w.second;
    }
    switch (choice) {
      case Leaf:
        return leaf();
      case Connective:
        return connective(q, c);
      case FoQuant:
        return quantify_fo(q);
      case SoQuant:
        return quantify_so(q);
    }
    return leaf();
  }

  const std::string& var() { return fo_[rng_.below(fo_.size())]; }

  Formula leaf() {
    std::vector<std::pair<std::string, int>> rels = symbols_;
    rels.insert(rels.end(), so_.begin(), so_.end());
    const std::uint64_t options = rels.size() + 1;
    const std::uint64_t pick = rng_.below(options);
    if (pick == rels.size()) return Formula::eq(var(), var());
    std::vector<std::string> args;
    for (int i = 0; i < rels[pick].second; ++i) args.push_back(var());
    return Formula::atom(rels[pick].first, std::move(args));
  }

  Formula connective(int q, int c) {
    const int kinds = shape_.allow_iff ? 5 : 4;
    switch (rng_.below(static_cast<std::uint64_t>(kinds))) {
      case 0:
        return Formula::negation(gen(q, c - 1));
      case 1: {
        auto l = gen(q, c - 1);
        return Formula::conj(l, gen(q, c - 1));
      }
      case 2: {
        auto l = gen(q, c - 1);
        return Formula::disj(l, gen(q, c - 1));
      }
      case 3: {
        auto l = gen(q, c - 1);
        return Formula::implies(l, gen(q, c - 1));
      }
      default: {
        auto l = gen(q, c - 1);
        return Formula::iff(l, gen(q, c - 1));
      }
    }
  }

  Formula quantify_fo(int q) {
    const std::string name = "x" + std::to_string(next_var_++);
    const bool ex = rng_.chance(1, 2);
    fo_.push_back(name);
    Formula body = gen(std::max(0, q - 1), shape_.connective_depth);
    fo_.pop_back();
    return ex ? Formula::exists(name, body) : Formula::forall(name, body);
  }

  Formula quantify_so(int q) {
    int arity = 1;
    int tuples = 3;
    if (shape_.max_so_arity >= 2 && so_tuples_ + 9 <= shape_.so_tuple_cap && rng_.chance(1, 3)) {
      arity = 2;
      tuples = 9;
    }
    so_tuples_ += tuples;
    ++so_count_;
    const std::string name = "R" + std::to_string(next_rel_++);
    const bool ex = rng_.chance(1, 2);
    so_.emplace_back(name, arity);
    Formula body = gen(q - 1, shape_.connective_depth);
    so_.pop_back();
    return ex ? Formula::exists_so(name, arity, body) : Formula::forall_so(name, arity, body);
  }

  Rng& rng_;
  const FormulaShape& shape_;
  std::vector<std::pair<std::string, int>> symbols_;
  std::vector<std::string> fo_;
  std::vector<std::pair<std::string, int>> so_;
  int next_var_ = 0;
  int next_rel_ = 0;
  int so_count_ = 0;
  int so_tuples_ = 0;
};

}  // namespace

Formula random_sentence(Rng& rng, const FormulaShape& shape) { return SentenceGen(rng, shape).run(); }

}  // namespace solab
