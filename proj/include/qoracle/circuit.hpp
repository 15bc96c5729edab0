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
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qoracle {

class error : public std::runtime_error {
 public:
  explicit error(const std::string& message) : std::runtime_error(message) {}
};

/// An operand does not resolve in the circuit layout.
class layout_error : public error {
 public:
  explicit layout_error(const std::string& message) : error(message) {}
};

/// A phase angle is not an integer multiple of pi / 2^m for any m <= 40.
class non_dyadic_angle_error : public error {
 public:
  explicit non_dyadic_angle_error(const std::string& message)
      : error(message) {}
};

/// An operation needs a circuit over {H, X, RZ, CX} only.
class must_lower_error : public error {
 public:
  explicit must_lower_error(const std::string& message) : error(message) {}
};

/// A requested computation exceeds a configured resource limit.
class resource_error : public error {
 public:
  explicit resource_error(const std::string& message) : error(message) {}
};

/// Flat qubit index into a circuit layout (registers are laid out in order).
using Qubit = std::uint32_t;

struct Register {
  std::string name;
  std::uint32_t size = 0;

  friend bool operator==(const Register&, const Register&) = default;
};

/// (register, offset) address of a qubit.
struct QubitRef {
  std::string reg;
  std::uint32_t index = 0;
};

enum class GateKind { h, x, rz, cx, mcx, mcz };

inline std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::h: return "h";
    case GateKind::x: return "x";
    case GateKind::rz: return "rz";
    case GateKind::cx: return "cx";
    case GateKind::mcx: return "mcx";
    case GateKind::mcz: return "mcz";
  }
  return "?";
}

inline GateKind gate_kind_from_string(std::string_view name) {
  if (name == "h") return GateKind::h;
  if (name == "x") return GateKind::x;
  if (name == "rz") return GateKind::rz;
  if (name == "cx") return GateKind::cx;
  if (name == "mcx") return GateKind::mcx;
  if (name == "mcz") return GateKind::mcz;
  throw error("unknown gate kind '" + std::string(name) + "'");
}

/// Maps an angle onto (-pi, pi].
inline double normalize_angle(double theta) {
  constexpr double pi = std::numbers::pi;
  double a = std::remainder(theta, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

/// One circuit instruction. For CX and MCX the target is the last operand;
/// MCZ operands are kept sorted since the gate is symmetric.
struct Gate {
  GateKind kind = GateKind::h;
  std::vector<Qubit> qubits;
  double angle = 0.0;

  static Gate h(Qubit q) { return {GateKind::h, {q}, 0.0}; }
  static Gate x(Qubit q) { return {GateKind::x, {q}, 0.0}; }
  static Gate rz(Qubit q, double theta) {
    return {GateKind::rz, {q}, normalize_angle(theta)};
  }
  static Gate cx(Qubit control, Qubit target) {
    return {GateKind::cx, {control, target}, 0.0};
  }
  static Gate mcx(std::vector<Qubit> controls, Qubit target) {
    if (controls.empty()) return x(target);
    if (controls.size() == 1) return cx(controls.front(), target);
    std::sort(controls.begin(), controls.end());
    controls.push_back(target);
    return {GateKind::mcx, std::move(controls), 0.0};
  }
  static Gate mcz(std::vector<Qubit> qubits) {
    std::sort(qubits.begin(), qubits.end());
    return {GateKind::mcz, std::move(qubits), 0.0};
  }

  bool is_composite() const {
    return kind == GateKind::mcx || kind == GateKind::mcz;
  }
  bool is_single_qubit() const {
    return kind == GateKind::h || kind == GateKind::x || kind == GateKind::rz;
  }
  Qubit target() const { return qubits.back(); }
  std::span<const Qubit> controls() const {
    if (kind == GateKind::cx || kind == GateKind::mcx)
      return {qubits.data(), qubits.size() - 1};
    return {};
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Ordered gate list over an ordered list of named registers.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::vector<Register> registers) {
    for (auto& r : registers) add_register(std::move(r.name), r.size);
  }

  /// Appends a register and returns the flat index of its first qubit.
  Qubit add_register(std::string name, std::uint32_t size) {
    for (const auto& r : registers_)
      if (r.name == name)
        throw layout_error("duplicate register '" + name + "'");
    const Qubit offset = num_qubits_;
    registers_.push_back({std::move(name), size});
    num_qubits_ += size;
    return offset;
  }

  const std::vector<Register>& registers() const { return registers_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::uint32_t num_qubits() const { return num_qubits_; }
  bool empty() const { return gates_.empty(); }
  std::size_t size() const { return gates_.size(); }

  bool has_register(std::string_view name) const {
    return std::any_of(registers_.begin(), registers_.end(),
                       [&](const Register& r) { return r.name == name; });
  }

  const Register& reg(std::string_view name) const {
    for (const auto& r : registers_)
      if (r.name == name) return r;
    throw layout_error("unknown register '" + std::string(name) + "'");
  }

  Qubit offset(std::string_view name) const {
    Qubit offset = 0;
    for (const auto& r : registers_) {
      if (r.name == name) return offset;
      offset += r.size;
    }
    throw layout_error("unknown register '" + std::string(name) + "'");
  }

  Qubit qubit(const QubitRef& ref) const {
    const auto& r = reg(ref.reg);
    if (ref.index >= r.size)
      throw layout_error("qubit " + ref.reg + "[" + std::to_string(ref.index) +
                         "] out of range");
    return offset(ref.reg) + ref.index;
  }

  QubitRef ref(Qubit q) const {
    Qubit offset = 0;
    for (const auto& r : registers_) {
      if (q < offset + r.size) return {r.name, q - offset};
      offset += r.size;
    }
    throw layout_error("qubit " + std::to_string(q) + " outside layout");
  }

  std::vector<Qubit> qubits(std::string_view name) const {
    const Qubit first = offset(name);
    std::vector<Qubit> out(reg(name).size);
    for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = first + i;
    return out;
  }

  void add(Gate gate) {
    validate(gate);
    gates_.push_back(std::move(gate));
  }

  void h(Qubit q) { add(Gate::h(q)); }
  void x(Qubit q) { add(Gate::x(q)); }
  void rz(Qubit q, double theta) { add(Gate::rz(q, theta)); }
  void cx(Qubit control, Qubit target) { add(Gate::cx(control, target)); }
  void mcx(std::vector<Qubit> controls, Qubit target) {
    add(Gate::mcx(std::move(controls), target));
  }
  void mcz(std::vector<Qubit> qubits) { add(Gate::mcz(std::move(qubits))); }

  /// Appends every gate of `other`, which must share this layout prefix.
  void append(const Circuit& other) {
    if (other.num_qubits_ > num_qubits_)
      throw layout_error("appended circuit is wider than the target layout");
    for (const auto& g : other.gates_) add(g);
  }

  /// Appends `other` with its qubit i relabelled to `mapping[i]`.
  void append(const Circuit& other, std::span<const Qubit> mapping) {
    if (mapping.size() < other.num_qubits_)
      throw layout_error("qubit mapping shorter than appended circuit");
    for (const auto& g : other.gates_) {
      Gate mapped = g;
      for (auto& q : mapped.qubits) q = mapping[q];
      if (mapped.kind == GateKind::mcz)
        std::sort(mapped.qubits.begin(), mapped.qubits.end());
      else if (mapped.kind == GateKind::mcx)
        std::sort(mapped.qubits.begin(), mapped.qubits.end() - 1);
      add(std::move(mapped));
    }
  }

  /// Same layout, no gates.
  Circuit empty_copy() const {
    Circuit c;
    c.registers_ = registers_;
    c.num_qubits_ = num_qubits_;
    return c;
  }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.registers_ == b.registers_ && a.gates_ == b.gates_;
  }

 private:
  void validate(const Gate& gate) const {
    const std::size_t arity = gate.qubits.size();
    switch (gate.kind) {
      case GateKind::h:
      case GateKind::x:
      case GateKind::rz:
        if (arity != 1) throw layout_error("single-qubit gate needs 1 operand");
        break;
      case GateKind::cx:
        if (arity != 2) throw layout_error("cx needs 2 operands");
        break;
      case GateKind::mcx:
        if (arity < 2) throw layout_error("mcx needs a target and controls");
        break;
      case GateKind::mcz:
        if (arity < 1) throw layout_error("mcz needs at least 1 operand");
        break;
    }
    for (std::size_t i = 0; i < arity; ++i) {
      if (gate.qubits[i] >= num_qubits_)
        throw layout_error("operand " + std::to_string(gate.qubits[i]) +
                           " outside layout of " + std::to_string(num_qubits_) +
                           " qubits");
      for (std::size_t j = 0; j < i; ++j)
        if (gate.qubits[i] == gate.qubits[j])
          throw layout_error("repeated operand " +
                             std::to_string(gate.qubits[i]));
    }
  }

  std::vector<Register> registers_;
  std::vector<Gate> gates_;
  std::uint32_t num_qubits_ = 0;
};

/// Reversed gate order with RZ angles negated; all other kinds are
/// self-inverse.
inline Circuit inverse(const Circuit& circuit) {
  Circuit out = circuit.empty_copy();
  const auto& gates = circuit.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::rz) g.angle = normalize_angle(-g.angle);
    out.add(std::move(g));
  }
  return out;
}

/// True when the circuit only uses H, X, RZ and CX.
inline bool is_lowered(const Circuit& circuit) {
  return std::none_of(circuit.gates().begin(), circuit.gates().end(),
                      [](const Gate& g) { return g.is_composite(); });
}

}  // namespace qoracle
