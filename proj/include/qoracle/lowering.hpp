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

#include <numbers>
#include <vector>

#include "circuit.hpp"
#include "parity_network.hpp"

namespace qoracle {

namespace detail {

// Standard 6-CNOT, 7-T doubly controlled Z.
inline void emit_ccz(Circuit& out, Qubit a, Qubit b, Qubit c) {
  constexpr double t = std::numbers::pi / 4.0;
  out.cx(b, c);
  out.rz(c, -t);
  out.cx(a, c);
  out.rz(c, t);
  out.cx(b, c);
  out.rz(c, -t);
  out.cx(a, c);
  out.rz(b, t);
  out.rz(c, t);
  out.cx(a, b);
  out.rz(a, t);
  out.rz(b, -t);
  out.cx(a, b);
}

inline void emit_mcz(Circuit& out, const std::vector<Qubit>& qubits) {
  switch (qubits.size()) {
    case 1:
      out.rz(qubits[0], std::numbers::pi);
      return;
    case 2:
      out.h(qubits[1]);
      out.cx(qubits[0], qubits[1]);
      out.h(qubits[1]);
      return;
    case 3:
      emit_ccz(out, qubits[0], qubits[1], qubits[2]);
      return;
    default: {
      PhaseSpec spec{std::vector<double>(std::size_t{1} << qubits.size(), 0.0)};
      spec.phis.back() = std::numbers::pi;
      out.append(gray_synthesize_diagonal(spec), qubits);
    }
  }
}

}  // namespace detail

/// Rewrites MCX and MCZ into {H, X, RZ, CX}. Doubly controlled gates use the
/// 6-CNOT Toffoli construction; larger ones go through Gray synthesis of the
/// diagonal (0, ..., 0, pi) on their operands. Equal up to global phase.
inline Circuit lower(const Circuit& circuit) {
  Circuit out = circuit.empty_copy();
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::mcz:
        detail::emit_mcz(out, g.qubits);
        break;
      case GateKind::mcx: {
        const Qubit target = g.target();
        out.h(target);
        detail::emit_mcz(out, g.qubits);
        out.h(target);
        break;
      }
      default:
        out.add(g);
    }
  }
  return out;
}

}  // namespace qoracle
