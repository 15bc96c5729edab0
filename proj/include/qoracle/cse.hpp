// Copyright 2026 The qoracle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace qoracle {

/// Outputs rewritten over inputs and intermediates g_j. g_j may reference
/// inputs and earlier intermediates only.
struct CseResult {
  std::vector<F2Polynomial> intermediates;
  std::vector<F2Polynomial> outputs;

  /// Evaluates every intermediate then every output on input row x.
  Assignment assign(std::uint64_t x, unsigned n) const {
    Assignment a = Assignment::from_bits(x, n);
    for (const auto& g : intermediates) a.intermediates.push_back(g.evaluate(a));
    return a;
  }

  std::vector<std::uint8_t> evaluate(std::uint64_t x, unsigned n) const {
    const Assignment a = assign(x, n);
    std::vector<std::uint8_t> out;
    for (const auto& p : outputs) out.push_back(p.evaluate(a));
    return out;
  }

  /// Output j with every intermediate substituted back.
  F2Polynomial expanded_output(std::size_t j) const {
    std::vector<F2Polynomial> defs;
    for (const auto& g : intermediates) defs.push_back(substitute(g, defs));
    return substitute(outputs.at(j), defs);
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& g : intermediates) d = std::max(d, g.degree());
    for (const auto& p : outputs) d = std::max(d, p.degree());
    return d;
  }

  /// Occurrences of g_j across intermediates and outputs.
  std::size_t uses(std::uint32_t j) const {
    const Variable v = intermediate_var(j);
    std::size_t count = 0;
    auto scan = [&](const F2Polynomial& p) {
      for (const auto& m : p.monomials())
        count += std::binary_search(m.begin(), m.end(), v) ? 1 : 0;
    };
    for (const auto& g : intermediates) scan(g);
    for (const auto& p : outputs) scan(p);
    return count;
  }

 private:
  static F2Polynomial substitute(const F2Polynomial& p,
                                 const std::vector<F2Polynomial>& defs) {
    F2Polynomial out;
    for (const auto& m : p.monomials()) {
      F2Polynomial term = F2Polynomial::constant(true);
      for (Variable v : m)
        term = term * (is_intermediate(v) ? defs.at(var_index(v))
                                          : F2Polynomial::variable(v));
      out ^= term;
    }
    return out;
  }
};

struct CseOptions {
  /// After sharing is exhausted, split remaining monomials above this degree
  /// into pair products even when the pair occurs only once. 0 disables.
  std::size_t max_degree = 2;
  std::size_t max_steps = 100000;
};

namespace detail {

using Pair = std::pair<Variable, Variable>;

/// Most frequent variable pair among monomials of degree >= min_degree; ties
/// go to the smallest pair.
inline std::optional<std::pair<Pair, std::size_t>> best_pair(
    const std::vector<F2Polynomial>& polys, std::size_t min_degree) {
  std::map<Pair, std::size_t> counts;
  for (const auto& p : polys)
    for (const auto& m : p.monomials()) {
      if (m.size() < min_degree) continue;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) ++counts[{m[i], m[j]}];
    }
  std::optional<std::pair<Pair, std::size_t>> best;
  for (const auto& [pair, count] : counts)
    if (!best || count > best->second) best = {pair, count};
  return best;
}

inline std::size_t product_occurrences(const std::vector<F2Polynomial>& polys,
                                       const Monomial& product) {
  std::size_t occ = 0;
  for (const auto& p : polys)
    for (const auto& m : p.monomials()) occ += contains(m, product) ? 1 : 0;
  return occ;
}

/// Shared product seeded by the most frequent pair and grown one variable at
/// a time while occurrences * (size - 1) improves.
inline std::optional<std::pair<Monomial, std::size_t>> best_product(
    const std::vector<F2Polynomial>& polys) {
  const auto pair = best_pair(polys, 2);
  if (!pair || pair->second < 2) return std::nullopt;
  Monomial product{pair->first.first, pair->first.second};
  std::size_t score = pair->second;
  for (;;) {
    std::map<Variable, std::size_t> extend;
    for (const auto& p : polys)
      for (const auto& m : p.monomials())
        if (contains(m, product))
          for (Variable v : m)
            if (!std::binary_search(product.begin(), product.end(), v)) ++extend[v];
    std::optional<std::pair<Variable, std::size_t>> grow;
    for (const auto& [v, occ] : extend) {
      const std::size_t s = occ * product.size();
      if (occ >= 2 && s > score && (!grow || s > grow->second)) grow = {v, s};
    }
    if (!grow) break;
    product = make_monomial([&] {
      Monomial m = product;
      m.push_back(grow->first);
      return m;
    }());
    score = grow->second;
  }
  return std::pair{product, score};
}

/// Replaces `product` by g inside every monomial of degree >= min_degree
/// that contains it.
inline void replace_product(std::vector<F2Polynomial>& polys, const Monomial& product,
                            Variable g, std::size_t min_degree = 0) {
  for (auto& p : polys) {
    F2Polynomial next;
    for (const auto& m : p.monomials()) {
      if (m.size() >= min_degree && contains(m, product)) {
        Monomial r;
        std::set_difference(m.begin(), m.end(), product.begin(), product.end(),
                            std::back_inserter(r));
        r.push_back(g);
        next.toggle(make_monomial(std::move(r)));
      } else {
        next.toggle(m);
      }
    }
    p = std::move(next);
  }
}

using Fragment = std::vector<Monomial>;

inline bool holds(const F2Polynomial& p, const Fragment& f) {
  if (p.size() < f.size()) return false;
  return std::all_of(f.begin(), f.end(), [&](const Monomial& m) { return p.has(m); });
}

/// Highest-scoring XOR subset shared by at least two polynomials.
inline std::optional<std::pair<Fragment, std::size_t>> best_fragment(
    const std::vector<F2Polynomial>& polys) {
  std::set<Fragment> candidates;
  for (std::size_t a = 0; a < polys.size(); ++a)
    for (std::size_t b = a + 1; b < polys.size(); ++b) {
      Fragment common;
      std::set_intersection(polys[a].monomials().begin(), polys[a].monomials().end(),
                            polys[b].monomials().begin(), polys[b].monomials().end(),
                            std::back_inserter(common));
      if (common.size() >= 2) candidates.insert(std::move(common));
    }
  std::optional<std::pair<Fragment, std::size_t>> best;
  for (const auto& f : candidates) {
    std::size_t occ = 0;
    for (const auto& p : polys) occ += holds(p, f) ? 1 : 0;
    const std::size_t score = occ * (f.size() - 1);
    if (!best || score > best->second) best = {f, score};
  }
  return best;
}

inline bool mentions(const Monomial& m, Variable v) {
  return std::binary_search(m.begin(), m.end(), v);
}

/// Replaces every occurrence of v in p by the polynomial def.
inline F2Polynomial substitute(const F2Polynomial& p, Variable v,
                               const F2Polynomial& def) {
  F2Polynomial out;
  for (const auto& m : p.monomials()) {
    if (!mentions(m, v)) {
      out.toggle(m);
      continue;
    }
    Monomial rest;
    for (Variable u : m)
      if (u != v) rest.push_back(u);
    for (const auto& d : def.monomials()) {
      Monomial t = rest;
      t.insert(t.end(), d.begin(), d.end());
      out.toggle(make_monomial(std::move(t)));
    }
  }
  return out;
}

inline F2Polynomial rename(const F2Polynomial& p, const std::map<Variable, Variable>& to) {
  F2Polynomial out;
  for (const auto& m : p.monomials()) {
    Monomial r;
    for (Variable v : m) {
      auto it = to.find(v);
      r.push_back(it == to.end() ? v : it->second);
    }
    out.toggle(make_monomial(std::move(r)));
  }
  return out;
}

/// Working state: defs[j] defines g_j; dropped entries are std::nullopt.
struct CseState {
  std::vector<std::optional<F2Polynomial>> defs;
  std::vector<F2Polynomial> outs;

  std::vector<F2Polynomial*> live() {
    std::vector<F2Polynomial*> v;
    for (auto& d : defs)
      if (d) v.push_back(&*d);
    for (auto& o : outs) v.push_back(&o);
    return v;
  }

  std::vector<F2Polynomial> snapshot() {
    std::vector<F2Polynomial> v;
    for (auto* p : live()) v.push_back(*p);
    return v;
  }

  void restore(std::vector<F2Polynomial> v) {
    auto ptrs = live();
    for (std::size_t i = 0; i < v.size(); ++i) *ptrs[i] = std::move(v[i]);
  }

  Variable next_var() const {
    return intermediate_var(static_cast<std::uint32_t>(defs.size()));
  }

  std::size_t uses(Variable g) {
    std::size_t count = 0;
    for (auto* p : live())
      for (const auto& m : p->monomials()) count += mentions(m, g) ? 1 : 0;
    return count;
  }

  /// Substitutes intermediates used at most once back into their host.
  void inline_single_uses() {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::uint32_t j = 0; j < defs.size(); ++j) {
        if (!defs[j]) continue;
        const Variable g = intermediate_var(j);
        if (uses(g) >= 2) continue;
        const F2Polynomial def = *defs[j];
        defs[j].reset();
        for (auto* p : live()) *p = substitute(*p, g, def);
        changed = true;
      }
    }
  }

  /// Drops dead slots and orders intermediates so each refers only to
  /// earlier ones.
  CseResult finish() {
    std::vector<std::uint32_t> order;
    std::vector<int> state(defs.size(), 0);
    auto visit = [&](auto&& self, std::uint32_t j) -> void {
      if (state[j] == 2) return;
      state[j] = 2;
      for (Variable v : defs[j]->support())
        if (is_intermediate(v)) self(self, var_index(v));
      order.push_back(j);
    };
    for (std::uint32_t j = 0; j < defs.size(); ++j)
      if (defs[j]) visit(visit, j);
    std::map<Variable, Variable> to;
    for (std::uint32_t i = 0; i < order.size(); ++i)
      to[intermediate_var(order[i])] = intermediate_var(i);
    CseResult r;
    for (std::uint32_t j : order) r.intermediates.push_back(rename(*defs[j], to));
    for (const auto& o : outs) r.outputs.push_back(rename(o, to));
    return r;
  }
};

}  // namespace detail

/// Greedy common-subexpression elimination over F2 polynomials. Duplicate
/// outputs are merged first. Shared products, then shared XOR fragments, are
/// extracted until nothing occurs twice, scoring occurrences * (size - 1).
/// Intermediates left with a single use are substituted back. Finally, if
/// options.max_degree is set, higher-degree monomials are split into pair
/// products.
inline CseResult cse(const std::vector<F2Polynomial>& polys,
                     const CseOptions& options = {}) {
  detail::CseState st;
  st.outs = polys;

  for (std::size_t a = 0; a < st.outs.size(); ++a) {
    const F2Polynomial p = st.outs[a];
    const bool trivial = p.size() <= 1 && p.degree() <= 1;
    if (trivial || std::count(st.outs.begin(), st.outs.end(), p) < 2) continue;
    const Variable g = st.next_var();
    for (auto& q : st.outs)
      if (q == p) q = F2Polynomial::variable(g);
    st.defs.emplace_back(p);
  }

  for (std::size_t step = 0; step < options.max_steps; ++step) {
    std::vector<F2Polynomial> work = st.snapshot();
    const Variable g = st.next_var();
    if (auto product = detail::best_product(work)) {
      detail::replace_product(work, product->first, g);
      st.restore(std::move(work));
      st.defs.emplace_back(F2Polynomial{product->first});
      continue;
    }
    if (auto frag = detail::best_fragment(work); frag && frag->second > 0) {
      F2Polynomial def;
      for (const auto& m : frag->first) def.toggle(m);
      for (auto& p : work)
        if (detail::holds(p, frag->first)) {
          p ^= def;
          p.toggle({g});
        }
      st.restore(std::move(work));
      st.defs.emplace_back(std::move(def));
      continue;
    }
    break;
  }
  st.inline_single_uses();

  if (options.max_degree >= 2) {
    for (std::size_t step = 0; step < options.max_steps; ++step) {
      std::vector<F2Polynomial> work = st.snapshot();
      const auto pair = detail::best_pair(work, options.max_degree + 1);
      if (!pair) break;
      const Monomial product{pair->first.first, pair->first.second};
      const Variable g = st.next_var();
      detail::replace_product(work, product, g);
      st.restore(std::move(work));
      st.defs.emplace_back(F2Polynomial{product});
    }
  }
  return st.finish();
}

}  // namespace qoracle
