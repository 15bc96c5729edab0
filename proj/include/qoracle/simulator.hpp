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

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <nlohmann/json.hpp>
#include <numbers>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "circuit.hpp"

namespace qoracle {

using Amplitude = std::complex<double>;

inline constexpr unsigned kDefaultMaxQubits = 24;

/// Qubit cap for dense simulation: QORACLE_MAX_QUBITS if set, else 24.
inline unsigned default_max_qubits() {
  if (const char* env = std::getenv("QORACLE_MAX_QUBITS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0 && v <= 40) return static_cast<unsigned>(v);
  }
  return kDefaultMaxQubits;
}

namespace detail {

// Inserts a zero bit at position `bit` of `i`.
inline std::uint64_t insert_zero(std::uint64_t i, unsigned bit) {
  const std::uint64_t low = i & ((std::uint64_t{1} << bit) - 1);
  return ((i >> bit) << (bit + 1)) | low;
}

inline std::uint64_t mask_of(std::span<const Qubit> qubits) {
  std::uint64_t m = 0;
  for (Qubit q : qubits) m |= std::uint64_t{1} << q;
  return m;
}

}  // namespace detail

/// Dense 2^q amplitude vector; qubit 0 is the least significant basis bit.
class StateVector {
 public:
  StateVector(std::vector<Register> layout, std::uint64_t basis = 0,
              unsigned max_qubits = default_max_qubits())
      : layout_(std::move(layout)) {
    for (const auto& r : layout_) qubits_ += r.size;
    if (qubits_ > max_qubits)
      throw resource_error("dense simulation of " + std::to_string(qubits_) +
                           " qubits exceeds the cap of " +
                           std::to_string(max_qubits));
    amps_.assign(std::size_t{1} << qubits_, Amplitude{});
    if (basis >= amps_.size()) throw layout_error("basis state out of range");
    amps_[basis] = 1.0;
  }

  unsigned num_qubits() const { return qubits_; }
  const std::vector<Register>& layout() const { return layout_; }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  std::vector<Amplitude>& amplitudes() { return amps_; }
  Amplitude operator[](std::uint64_t i) const { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  void apply(const Gate& g) {
    const std::size_t half = amps_.size() / 2;
    switch (g.kind) {
      case GateKind::h: {
        const unsigned q = g.qubits[0];
        const std::uint64_t bit = std::uint64_t{1} << q;
        const double s = std::numbers::sqrt2 / 2.0;
        for (std::size_t k = 0; k < half; ++k) {
          const std::uint64_t i = detail::insert_zero(k, q);
          const Amplitude a = amps_[i];
          const Amplitude b = amps_[i | bit];
          amps_[i] = s * (a + b);
          amps_[i | bit] = s * (a - b);
        }
        break;
      }
      case GateKind::x: {
        const unsigned q = g.qubits[0];
        const std::uint64_t bit = std::uint64_t{1} << q;
        for (std::size_t k = 0; k < half; ++k) {
          const std::uint64_t i = detail::insert_zero(k, q);
          std::swap(amps_[i], amps_[i | bit]);
        }
        break;
      }
      case GateKind::rz: {
        const std::uint64_t bit = std::uint64_t{1} << g.qubits[0];
        const Amplitude lo = std::polar(1.0, -g.angle / 2.0);
        const Amplitude hi = std::polar(1.0, g.angle / 2.0);
        for (std::size_t i = 0; i < amps_.size(); ++i)
          amps_[i] *= (i & bit) ? hi : lo;
        break;
      }
      case GateKind::cx:
      case GateKind::mcx: {
        const unsigned t = g.target();
        const std::uint64_t tbit = std::uint64_t{1} << t;
        const std::uint64_t cmask = detail::mask_of(g.controls());
        for (std::size_t k = 0; k < half; ++k) {
          const std::uint64_t i = detail::insert_zero(k, t);
          if ((i & cmask) == cmask) std::swap(amps_[i], amps_[i | tbit]);
        }
        break;
      }
      case GateKind::mcz: {
        const std::uint64_t m = detail::mask_of(g.qubits);
        for (std::size_t i = 0; i < amps_.size(); ++i)
          if ((i & m) == m) amps_[i] = -amps_[i];
        break;
      }
    }
  }

  void apply(const Circuit& circuit) {
    if (circuit.num_qubits() > qubits_)
      throw layout_error("circuit is wider than the state");
    for (const auto& g : circuit.gates()) apply(g);
  }

 private:
  std::vector<Register> layout_;
  unsigned qubits_ = 0;
  std::vector<Amplitude> amps_;
};

/// Runs the circuit from basis state |initial>. Composite gates are applied
/// exactly by their own kernels.
inline StateVector run(const Circuit& circuit, std::uint64_t initial = 0,
                       unsigned max_qubits = default_max_qubits()) {
  StateVector state(circuit.registers(), initial, max_qubits);
  state.apply(circuit);
  return state;
}

/// Column-major dense unitary, column x = run(circuit, x).
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  Amplitude& operator()(std::size_t row, std::size_t col) {
    return data_[col * dim_ + row];
  }
  Amplitude operator()(std::size_t row, std::size_t col) const {
    return data_[col * dim_ + row];
  }

 private:
  std::size_t dim_;
  std::vector<Amplitude> data_;
};

inline constexpr unsigned kMatrixMaxQubits = 10;

inline ComplexMatrix matrix(const Circuit& circuit) {
  if (circuit.num_qubits() > kMatrixMaxQubits)
    throw resource_error("matrix reconstruction is limited to " +
                         std::to_string(kMatrixMaxQubits) + " qubits");
  const std::size_t dim = std::size_t{1} << circuit.num_qubits();
  ComplexMatrix m(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const StateVector s = run(circuit, col, kMatrixMaxQubits);
    for (std::size_t row = 0; row < dim; ++row) m(row, col) = s[row];
  }
  return m;
}

/// max_i |a_i - e^{i gamma} b_i| with gamma aligning the largest-magnitude
/// entry of `a`.
template <class A, class B>
double deviation_up_to_global_phase(const A& a, const B& b, std::size_t n) {
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(a(i)) > std::abs(a(pivot))) pivot = i;
  Amplitude phase = 1.0;
  if (std::abs(b(pivot)) > 1e-12 && std::abs(a(pivot)) > 1e-12)
    phase = (a(pivot) / b(pivot)) / std::abs(a(pivot) / b(pivot));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(a(i) - phase * b(i)));
  return worst;
}

inline double deviation_up_to_global_phase(const std::vector<Amplitude>& a,
                                           const std::vector<Amplitude>& b) {
  if (a.size() != b.size()) return INFINITY;
  return deviation_up_to_global_phase(
      [&](std::size_t i) { return a[i]; }, [&](std::size_t i) { return b[i]; },
      a.size());
}

inline double deviation_up_to_global_phase(const ComplexMatrix& a,
                                           const ComplexMatrix& b) {
  if (a.dim() != b.dim()) return INFINITY;
  const std::size_t d = a.dim();
  return deviation_up_to_global_phase(
      [&](std::size_t i) { return a(i % d, i / d); },
      [&](std::size_t i) { return b(i % d, i / d); }, d * d);
}

/// Marginal probabilities of the named register, indexed by its value.
inline std::vector<double> measure_distribution(const StateVector& state,
                                                std::string_view reg) {
  unsigned offset = 0;
  unsigned size = 0;
  bool found = false;
  for (const auto& r : state.layout()) {
    if (r.name == reg) {
      size = r.size;
      found = true;
      break;
    }
    offset += r.size;
  }
  if (!found) throw layout_error("unknown register '" + std::string(reg) + "'");
  std::vector<double> p(std::size_t{1} << size, 0.0);
  const std::uint64_t m = (std::uint64_t{1} << size) - 1;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i)
    p[(i >> offset) & m] += std::norm(amps[i]);
  return p;
}

/// Basis-state-sparse amplitudes for wide circuits whose states stay close to
/// a few basis states (reversible logic with local H pairs). Up to 64 qubits.
using SparseState = std::unordered_map<std::uint64_t, Amplitude>;

inline void apply_sparse(SparseState& state, const Gate& g) {
  SparseState next;
  next.reserve(state.size() * 2);
  switch (g.kind) {
    case GateKind::h: {
      const std::uint64_t bit = std::uint64_t{1} << g.qubits[0];
      const double s = std::numbers::sqrt2 / 2.0;
      for (const auto& [b, a] : state) {
        next[b & ~bit] += s * a;
        next[b | bit] += (b & bit) ? -s * a : s * a;
      }
      std::erase_if(next, [](const auto& kv) { return std::abs(kv.second) < 1e-13; });
      break;
    }
    case GateKind::x: {
      const std::uint64_t bit = std::uint64_t{1} << g.qubits[0];
      for (const auto& [b, a] : state) next[b ^ bit] = a;
      break;
    }
    case GateKind::rz: {
      const std::uint64_t bit = std::uint64_t{1} << g.qubits[0];
      const Amplitude lo = std::polar(1.0, -g.angle / 2.0);
      const Amplitude hi = std::polar(1.0, g.angle / 2.0);
      for (auto& [b, a] : state) a *= (b & bit) ? hi : lo;
      return;
    }
    case GateKind::cx:
    case GateKind::mcx: {
      const std::uint64_t tbit = std::uint64_t{1} << g.target();
      const std::uint64_t cmask = detail::mask_of(g.controls());
      for (const auto& [b, a] : state)
        next[(b & cmask) == cmask ? b ^ tbit : b] = a;
      break;
    }
    case GateKind::mcz: {
      const std::uint64_t m = detail::mask_of(g.qubits);
      for (auto& [b, a] : state)
        if ((b & m) == m) a = -a;
      return;
    }
  }
  state = std::move(next);
}

inline SparseState run_sparse(const Circuit& circuit, std::uint64_t initial) {
  if (circuit.num_qubits() > 64)
    throw resource_error("sparse simulation is limited to 64 qubits");
  SparseState state{{initial, Amplitude{1.0}}};
  for (const auto& g : circuit.gates()) apply_sparse(state, g);
  return state;
}

/// Probability table rows sorted by index: (index, bitstring MSB first, p).
inline std::string distribution_csv(const std::vector<double>& p, unsigned bits) {
  std::string out = "index,bitstring,probability\n";
  char buf[64];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::string s;
    for (unsigned b = bits; b-- > 0;) s.push_back(((i >> b) & 1u) ? '1' : '0');
    std::snprintf(buf, sizeof buf, "%.12g", p[i]);
    out += std::to_string(i) + "," + s + "," + buf + "\n";
  }
  return out;
}

inline nlohmann::json distribution_json(const std::vector<double>& p, unsigned bits) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::string s;
    for (unsigned b = bits; b-- > 0;) s.push_back(((i >> b) & 1u) ? '1' : '0');
    rows.push_back({{"index", i}, {"bitstring", s}, {"probability", p[i]}});
  }
  return rows;
}

}  // namespace qoracle
