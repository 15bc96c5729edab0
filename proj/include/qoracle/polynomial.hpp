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
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "truth_table.hpp"

namespace qoracle {

/// Variable id: input x_i is i, intermediate g_j is kIntermediateFlag | j.
using Variable = std::uint32_t;
inline constexpr Variable kIntermediateFlag = Variable{1} << 31;

inline Variable input_var(std::uint32_t i) { return i; }
inline Variable intermediate_var(std::uint32_t j) { return kIntermediateFlag | j; }
inline bool is_intermediate(Variable v) { return (v & kIntermediateFlag) != 0; }
inline std::uint32_t var_index(Variable v) { return v & ~kIntermediateFlag; }

inline std::string var_name(Variable v) {
  return (is_intermediate(v) ? "g" : "x") + std::to_string(var_index(v));
}

/// Sorted, duplicate-free product of variables. Empty is the constant 1.
using Monomial = std::vector<Variable>;

inline Monomial make_monomial(std::vector<Variable> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

inline bool contains(const Monomial& m, const Monomial& sub) {
  return std::includes(m.begin(), m.end(), sub.begin(), sub.end());
}

class evaluation_error : public error {
 public:
  using error::error;
};

/// Values of inputs and intermediates for polynomial evaluation.
struct Assignment {
  std::vector<std::uint8_t> inputs;
  std::vector<std::uint8_t> intermediates;

  static Assignment from_bits(std::uint64_t x, unsigned n) {
    Assignment a;
    for (unsigned i = 0; i < n; ++i) a.inputs.push_back((x >> i) & 1);
    return a;
  }

  bool value(Variable v) const {
    const auto& vec = is_intermediate(v) ? intermediates : inputs;
    const auto i = var_index(v);
    if (i >= vec.size())
      throw evaluation_error("variable " + var_name(v) + " is unassigned");
    return vec[i] != 0;
  }
};

/// XOR of monomials over F2.
class F2Polynomial {
 public:
  F2Polynomial() = default;
  F2Polynomial(std::initializer_list<Monomial> monomials) {
    for (const auto& m : monomials) toggle(make_monomial(m));
  }

  static F2Polynomial constant(bool one) {
    F2Polynomial p;
    if (one) p.toggle({});
    return p;
  }
  static F2Polynomial variable(Variable v) {
    F2Polynomial p;
    p.toggle({v});
    return p;
  }

  const std::set<Monomial>& monomials() const { return monomials_; }
  bool empty() const { return monomials_.empty(); }
  std::size_t size() const { return monomials_.size(); }
  bool has(const Monomial& m) const { return monomials_.count(m) != 0; }

  /// Adds m; an existing copy cancels instead.
  void toggle(const Monomial& m) {
    auto [it, inserted] = monomials_.insert(m);
    if (!inserted) monomials_.erase(it);
  }

  F2Polynomial& operator^=(const F2Polynomial& other) {
    for (const auto& m : other.monomials_) toggle(m);
    return *this;
  }

  F2Polynomial operator*(const F2Polynomial& other) const {
    F2Polynomial out;
    for (const auto& a : monomials_)
      for (const auto& b : other.monomials_) {
        Monomial m = a;
        m.insert(m.end(), b.begin(), b.end());
        out.toggle(make_monomial(std::move(m)));
      }
    return out;
  }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& m : monomials_) d = std::max(d, m.size());
    return d;
  }

  std::set<Variable> support() const {
    std::set<Variable> s;
    for (const auto& m : monomials_) s.insert(m.begin(), m.end());
    return s;
  }

  bool evaluate(const Assignment& a) const {
    bool acc = false;
    for (const auto& m : monomials_) {
      bool term = true;
      for (Variable v : m) term = term && a.value(v);
      acc ^= term;
    }
    return acc;
  }

  /// Input-only evaluation with x_i = bit i of x.
  bool evaluate(std::uint64_t x) const {
    bool acc = false;
    for (const auto& m : monomials_) {
      bool term = true;
      for (Variable v : m) {
        if (is_intermediate(v))
          throw evaluation_error("variable " + var_name(v) + " is unassigned");
        term = term && ((x >> v) & 1);
      }
      acc ^= term;
    }
    return acc;
  }

  /// Monomials with higher degree first, then lexicographic; constant last.
  std::vector<const Monomial*> canonical_order() const {
    std::vector<const Monomial*> order;
    for (const auto& m : monomials_) order.push_back(&m);
    std::sort(order.begin(), order.end(), [](const Monomial* a, const Monomial* b) {
      if (a->size() != b->size()) return a->size() > b->size();
      return *a < *b;
    });
    return order;
  }

  /// Canonical text in canonical_order(), e.g. "x0*x2 + x1 + 1".
  std::string to_string() const {
    if (monomials_.empty()) return "0";
    const auto order = canonical_order();
    std::string s;
    for (const Monomial* m : order) {
      if (!s.empty()) s += " + ";
      if (m->empty()) {
        s += "1";
        continue;
      }
      for (std::size_t i = 0; i < m->size(); ++i) {
        if (i) s += "*";
        s += var_name((*m)[i]);
      }
    }
    return s;
  }

  bool operator==(const F2Polynomial&) const = default;

 private:
  std::set<Monomial> monomials_;
};

/// Positive-polarity Reed-Muller form of a single column, via the binary
/// Moebius transform.
inline F2Polynomial reed_muller_expand(const std::vector<std::uint8_t>& column) {
  const unsigned n = log2_exact(column.size());
  std::vector<std::uint8_t> c(column.begin(), column.end());
  for (std::size_t half = 1; half < c.size(); half <<= 1)
    for (std::size_t x = 0; x < c.size(); ++x)
      if (x & half) c[x] ^= c[x ^ half];
  F2Polynomial p;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (!c[m]) continue;
    Monomial mono;
    for (unsigned i = 0; i < n; ++i)
      if ((m >> i) & 1) mono.push_back(input_var(i));
    p.toggle(mono);
  }
  return p;
}

inline F2Polynomial reed_muller_expand(const TruthTable& table, std::size_t column) {
  if (column >= table.num_columns())
    throw std::out_of_range("column " + std::to_string(column) + " out of range");
  return reed_muller_expand(table.columns[column]);
}

/// Column of p over n inputs.
inline std::vector<std::uint8_t> tabulate(const F2Polynomial& p, unsigned n) {
  std::vector<std::uint8_t> col(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < col.size(); ++x) col[x] = p.evaluate(x);
  return col;
}

}  // namespace qoracle
