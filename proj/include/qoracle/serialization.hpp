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

#include <cstdio>
#include <nlohmann/json.hpp>
#include <string>

#include "circuit.hpp"

namespace qoracle {

/// {"registers":[{"name","size"}], "gates":[{"kind","qubits":[...],"angle"?}]}
/// with flat qubit indices into the register layout.
inline nlohmann::json circuit_to_json(const Circuit& circuit) {
  nlohmann::json regs = nlohmann::json::array();
  for (const auto& r : circuit.registers())
    regs.push_back({{"name", r.name}, {"size", r.size}});
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : circuit.gates()) {
    nlohmann::json j = {{"kind", to_string(g.kind)}, {"qubits", g.qubits}};
    if (g.kind == GateKind::rz) j["angle"] = g.angle;
    gates.push_back(std::move(j));
  }
  return {{"registers", std::move(regs)}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c;
  for (const auto& r : j.at("registers"))
    c.add_register(r.at("name").get<std::string>(),
                   r.at("size").get<std::uint32_t>());
  for (const auto& g : j.at("gates")) {
    Gate gate;
    gate.kind = gate_kind_from_string(g.at("kind").get<std::string>());
    gate.qubits = g.at("qubits").get<std::vector<Qubit>>();
    if (gate.kind == GateKind::rz) gate.angle = g.at("angle").get<double>();
    c.add(std::move(gate));
  }
  return c;
}

inline std::string export_json(const Circuit& circuit) {
  return circuit_to_json(circuit).dump(2) + "\n";
}

inline Circuit import_json(const std::string& text) {
  return circuit_from_json(nlohmann::json::parse(text));
}

/// OpenQASM 2.0 with one qreg per register and only h, x, rz, cx.
inline std::string export_qasm2(const Circuit& circuit) {
  if (!is_lowered(circuit))
    throw must_lower_error("qasm2 export needs a lowered circuit");
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  for (const auto& r : circuit.registers())
    out += "qreg " + r.name + "[" + std::to_string(r.size) + "];\n";
  auto name = [&](Qubit q) {
    const QubitRef ref = circuit.ref(q);
    return ref.reg + "[" + std::to_string(ref.index) + "]";
  };
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::h: out += "h " + name(g.qubits[0]) + ";\n"; break;
      case GateKind::x: out += "x " + name(g.qubits[0]) + ";\n"; break;
      case GateKind::rz: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", g.angle);
        out += "rz(" + std::string(buf) + ") " + name(g.qubits[0]) + ";\n";
        break;
      }
      case GateKind::cx:
        out += "cx " + name(g.qubits[0]) + "," + name(g.qubits[1]) + ";\n";
        break;
      default:
        break;
    }
  }
  return out;
}

}  // namespace qoracle
