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

#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "cse.hpp"
#include "lowering.hpp"
#include "metrics.hpp"
#include "parity_network.hpp"
#include "polynomial.hpp"
#include "truth_table.hpp"

namespace qoracle {

enum class SynthesisMethod {
  pprm,
  pprm_pt,              ///< PPRM with multi-controlled X via phase-tolerant columns
  gray,
  phase_tolerant,
  phase_tolerant_htsp,  ///< phase-tolerant with two-salesman routing
  cse,
  automatic,            ///< cheapest of pprm, pprm-pt, gray, phase-tolerant
};

inline std::string_view method_name(SynthesisMethod m) {
  switch (m) {
    case SynthesisMethod::pprm: return "pprm";
    case SynthesisMethod::pprm_pt: return "pprm-pt";
    case SynthesisMethod::gray: return "gray";
    case SynthesisMethod::phase_tolerant: return "phase-tolerant";
    case SynthesisMethod::phase_tolerant_htsp: return "phase-tolerant-htsp";
    case SynthesisMethod::cse: return "cse";
    case SynthesisMethod::automatic: return "auto";
  }
  return "?";
}

inline SynthesisMethod method_from_name(std::string_view name) {
  for (auto m : {SynthesisMethod::pprm, SynthesisMethod::pprm_pt, SynthesisMethod::gray,
                 SynthesisMethod::phase_tolerant, SynthesisMethod::phase_tolerant_htsp,
                 SynthesisMethod::cse, SynthesisMethod::automatic})
    if (method_name(m) == name) return m;
  throw std::invalid_argument("unknown synthesis method '" + std::string(name) + "'");
}

inline const std::vector<SynthesisMethod>& full_pool() {
  static const std::vector<SynthesisMethod> pool{
      SynthesisMethod::pprm, SynthesisMethod::pprm_pt, SynthesisMethod::gray,
      SynthesisMethod::phase_tolerant};
  return pool;
}

/// CNOTs that lower() will emit for a gate, without building the lowering.
inline std::uint64_t lowered_cnot_cost(const Gate& g) {
  auto mcz_cost = [](std::size_t q) -> std::uint64_t {
    if (q <= 1) return 0;
    if (q == 2) return 1;
    if (q == 3) return 6;
    return (std::uint64_t{1} << q) - 2;
  };
  switch (g.kind) {
    case GateKind::cx: return 1;
    case GateKind::mcx:
    case GateKind::mcz: return mcz_cost(g.qubits.size());
    default: return 0;
  }
}

inline std::uint64_t lowered_cnot_count(const Circuit& c) {
  std::uint64_t n = 0;
  for (const auto& g : c.gates()) n += lowered_cnot_cost(g);
  return n;
}

enum class Routing { gray, htsp, cheapest };

namespace detail {

/// Phases pi * o * T(x) over the inputs plus an output wire on top.
inline PhaseSpec column_phases(const std::vector<std::uint8_t>& column) {
  const std::size_t rows = column.size();
  PhaseSpec spec{std::vector<double>(2 * rows, 0.0)};
  for (std::size_t x = 0; x < rows; ++x)
    spec.phis[rows + x] = column[x] ? std::numbers::pi : 0.0;
  return spec;
}

inline void emit_network(Circuit& c, const ThetaSolution& theta, const Route& route,
                         std::span<const Qubit> inputs, Qubit out) {
  std::vector<Qubit> wires(inputs.begin(), inputs.end());
  wires.push_back(out);
  c.append(synthesize_phase_network(theta, route), wires);
}

}  // namespace detail

/// |x>|y> -> |x>|y xor T(x)> exactly: H on out, the full Gray diagonal over
/// inputs and out with phases pi * o * T(x), H on out.
inline void emit_gray_column(Circuit& c, const std::vector<std::uint8_t>& column,
                             std::span<const Qubit> inputs, Qubit out) {
  const PhaseSpec spec = detail::column_phases(column);
  const ThetaSolution theta = solve_theta(spec);
  c.h(out);
  detail::emit_network(c, theta, gray_route(theta.wires), inputs, out);
  c.h(out);
}

/// Keeps only the parity operators that contain the output wire. Acts as
/// exp(i chi(x)) X^T(x) on out, leaving a garbage phase per input row.
inline void emit_phase_tolerant_column(Circuit& c, const std::vector<std::uint8_t>& column,
                                       std::span<const Qubit> inputs, Qubit out,
                                       Routing routing = Routing::gray) {
  const unsigned n = log2_exact(column.size());
  const Mask out_bit = Mask{1} << n;
  ThetaSolution theta = solve_theta(detail::column_phases(column));
  std::set<Mask> support;
  for (auto it = theta.thetas.begin(); it != theta.thetas.end();) {
    if (it->first & out_bit) {
      support.insert(it->first & ~out_bit);
      ++it;
    } else {
      it = theta.thetas.erase(it);
    }
  }
  Route route = output_gray_route(n);
  if (routing != Routing::gray) {
    Route htsp = htsp_route(support, n);
    if (routing == Routing::htsp || cnot_cost(htsp) < cnot_cost(route))
      route = std::move(htsp);
  }
  c.h(out);
  detail::emit_network(c, theta, route, inputs, out);
  c.h(out);
}

/// One multi-controlled X per monomial; the constant monomial is an X.
/// `wire` maps each variable to its qubit.
template <class WireOf>
void emit_pprm(Circuit& c, const F2Polynomial& p, WireOf&& wire, Qubit out,
               bool phase_tolerant_products = false) {
  for (const Monomial* m : p.canonical_order()) {
    std::vector<Qubit> controls;
    for (Variable v : *m) controls.push_back(wire(v));
    if (phase_tolerant_products && controls.size() >= 2) {
      std::vector<std::uint8_t> conj(std::size_t{1} << controls.size(), 0);
      conj.back() = 1;
      emit_phase_tolerant_column(c, conj, controls, out);
    } else {
      c.mcx(std::move(controls), out);
    }
  }
}

/// Layout shared by every table synthesis: "idx" (inputs), "label"
/// (outputs), and "anc" when intermediates are needed.
inline Circuit table_layout(unsigned n, std::size_t k, std::size_t ancillas = 0) {
  Circuit c;
  c.add_register("idx", n);
  c.add_register("label", static_cast<std::uint32_t>(k));
  if (ancillas) c.add_register("anc", static_cast<std::uint32_t>(ancillas));
  return c;
}

inline Circuit gray_synthesize_column(const TruthTable& table, std::size_t column) {
  Circuit c = table_layout(table.n_inputs, 1);
  emit_gray_column(c, table.columns.at(column), c.qubits("idx"), c.qubit({"label", 0}));
  return c;
}

inline Circuit phase_tolerant_synthesize_column(const TruthTable& table,
                                                std::size_t column,
                                                Routing routing = Routing::gray) {
  Circuit c = table_layout(table.n_inputs, 1);
  emit_phase_tolerant_column(c, table.columns.at(column), c.qubits("idx"),
                             c.qubit({"label", 0}), routing);
  return c;
}

/// Per-column PPRM; composite gates are left for lower().
inline Circuit pprm_synthesize(const TruthTable& table, bool phase_tolerant_products = false) {
  Circuit c = table_layout(table.n_inputs, table.num_columns());
  const auto idx = c.qubits("idx");
  const auto label = c.qubits("label");
  for (std::size_t col = 0; col < table.num_columns(); ++col)
    emit_pprm(c, reed_muller_expand(table, col), [&](Variable v) { return idx.at(v); },
              label[col], phase_tolerant_products);
  return c;
}

inline Circuit gray_synthesize(const TruthTable& table) {
  Circuit c = table_layout(table.n_inputs, table.num_columns());
  const auto idx = c.qubits("idx");
  const auto label = c.qubits("label");
  for (std::size_t col = 0; col < table.num_columns(); ++col)
    emit_gray_column(c, table.columns[col], idx, label[col]);
  return c;
}

inline Circuit phase_tolerant_synthesize(const TruthTable& table,
                                         Routing routing = Routing::gray) {
  Circuit c = table_layout(table.n_inputs, table.num_columns());
  const auto idx = c.qubits("idx");
  const auto label = c.qubits("label");
  for (std::size_t col = 0; col < table.num_columns(); ++col)
    emit_phase_tolerant_column(c, table.columns[col], idx, label[col], routing);
  return c;
}

struct SynthesisResult {
  Circuit circuit;
  SynthesisMethod method = SynthesisMethod::gray;
  std::size_t ancillas = 0;
  /// Method chosen for each intermediate, then each output (cse only).
  std::vector<SynthesisMethod> step_methods;
};

/// Tables over more variables than this are only synthesized by the
/// polynomial methods inside cse.
inline constexpr std::size_t kTableMethodSupportLimit = 10;

namespace detail {

/// Cheapest pool method for computing p onto `out`, with inputs and earlier
/// intermediates as controls. Ties go to pool order.
template <class WireOf>
SynthesisMethod emit_cheapest(Circuit& c, const F2Polynomial& p, WireOf&& wire, Qubit out) {
  const std::set<Variable> vars = p.support();
  const std::vector<Variable> support(vars.begin(), vars.end());
  std::vector<Qubit> controls;
  for (Variable v : support) controls.push_back(wire(v));

  // Column of p over its own support, variable i of the support as bit i.
  std::vector<std::uint8_t> column;
  if (support.size() <= kTableMethodSupportLimit) {
    column.resize(std::size_t{1} << support.size());
    for (std::uint64_t x = 0; x < column.size(); ++x) {
      bool acc = false;
      for (const auto& m : p.monomials()) {
        bool term = true;
        for (Variable v : m) {
          const auto i = std::lower_bound(support.begin(), support.end(), v) - support.begin();
          term = term && ((x >> i) & 1);
        }
        acc ^= term;
      }
      column[x] = acc;
    }
  }

  std::optional<std::pair<SynthesisMethod, Circuit>> best;
  std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
  for (SynthesisMethod m : full_pool()) {
    Circuit trial = c.empty_copy();
    switch (m) {
      case SynthesisMethod::pprm:
      case SynthesisMethod::pprm_pt:
        emit_pprm(trial, p, wire, out, m == SynthesisMethod::pprm_pt);
        break;
      case SynthesisMethod::gray:
      case SynthesisMethod::phase_tolerant:
        if (support.empty() || column.empty()) continue;
        if (m == SynthesisMethod::gray)
          emit_gray_column(trial, column, controls, out);
        else
          emit_phase_tolerant_column(trial, column, controls, out);
        break;
      default:
        continue;
    }
    const std::uint64_t cost = lowered_cnot_count(trial);
    if (cost < best_cost) {
      best_cost = cost;
      best.emplace(m, std::move(trial));
    }
  }
  c.append(best->second);
  return best->first;
}

}  // namespace detail

/// Reed-Muller polynomials of every column, CSE, then each intermediate into
/// a fresh "anc" qubit and each output into its label qubit, every step by
/// the cheapest pool method. Intermediates stay computed; the caller's
/// inverse uncomputes them.
inline SynthesisResult cse_synthesize(const TruthTable& table,
                                      std::optional<std::size_t> ancilla_budget = {},
                                      const CseOptions& options = {}) {
  std::vector<F2Polynomial> polys;
  for (std::size_t col = 0; col < table.num_columns(); ++col)
    polys.push_back(reed_muller_expand(table, col));
  const CseResult r = cse(polys, options);
  if (ancilla_budget && r.intermediates.size() > *ancilla_budget)
    throw resource_error("cse needs " + std::to_string(r.intermediates.size()) +
                         " ancillas, budget is " + std::to_string(*ancilla_budget));

  SynthesisResult out;
  out.method = SynthesisMethod::cse;
  out.ancillas = r.intermediates.size();
  out.circuit = table_layout(table.n_inputs, table.num_columns(), out.ancillas);
  Circuit& c = out.circuit;
  const auto idx = c.qubits("idx");
  const auto label = c.qubits("label");
  const auto anc = out.ancillas ? c.qubits("anc") : std::vector<Qubit>{};
  auto wire = [&](Variable v) {
    return is_intermediate(v) ? anc.at(var_index(v)) : idx.at(v);
  };
  for (std::size_t j = 0; j < r.intermediates.size(); ++j)
    out.step_methods.push_back(detail::emit_cheapest(c, r.intermediates[j], wire, anc[j]));
  for (std::size_t j = 0; j < r.outputs.size(); ++j)
    out.step_methods.push_back(detail::emit_cheapest(c, r.outputs[j], wire, label[j]));
  return out;
}

/// Synthesis of the whole table with a single method.
inline SynthesisResult synthesize_table(const TruthTable& table, SynthesisMethod method);

/// Synthesizes with each pool method and keeps the one whose lowered circuit
/// has the fewest CNOTs. Ties go to pool order.
inline SynthesisResult select_best(const TruthTable& table,
                                   const std::vector<SynthesisMethod>& pool) {
  if (pool.empty()) throw std::invalid_argument("empty synthesis pool");
  std::optional<SynthesisResult> best;
  std::uint64_t best_cost = 0;
  for (SynthesisMethod m : pool) {
    if (m == SynthesisMethod::automatic)
      throw std::invalid_argument("auto is not a pool member");
    SynthesisResult r = synthesize_table(table, m);
    const std::uint64_t cost = lowered_cnot_count(r.circuit);
    if (!best || cost < best_cost) {
      best_cost = cost;
      best = std::move(r);
    }
  }
  return std::move(*best);
}

inline SynthesisResult synthesize_table(const TruthTable& table, SynthesisMethod method) {
  table.validate();
  switch (method) {
    case SynthesisMethod::pprm:
      return {pprm_synthesize(table), method, 0, {}};
    case SynthesisMethod::pprm_pt:
      return {pprm_synthesize(table, true), method, 0, {}};
    case SynthesisMethod::gray:
      return {gray_synthesize(table), method, 0, {}};
    case SynthesisMethod::phase_tolerant:
      return {phase_tolerant_synthesize(table), method, 0, {}};
    case SynthesisMethod::phase_tolerant_htsp:
      return {phase_tolerant_synthesize(table, Routing::cheapest), method, 0, {}};
    case SynthesisMethod::cse:
      return cse_synthesize(table);
    case SynthesisMethod::automatic:
      return select_best(table, full_pool());
  }
  throw std::invalid_argument("unknown synthesis method");
}

}  // namespace qoracle
