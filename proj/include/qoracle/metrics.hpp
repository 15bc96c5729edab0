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
#include <cstdint>
#include <map>
#include <numbers>
#include <string>

#include "circuit.hpp"

namespace qoracle {

/// Gate counts of a lowered circuit.
///
/// Every single-qubit instruction counts as one U gate; adjacent rotations are
/// not fused. Each RZ(pi * a / 2^m) with a odd is expanded into T_k gates by
/// the binary digits of |a|: bit j contributes one T_{m-j}.
struct GateMetrics {
  std::uint64_t cnot_count = 0;
  std::uint64_t u_count = 0;
  std::map<int, std::uint64_t> tm_histogram;
  int t_order = 0;
  std::uint32_t qubit_count = 0;

  std::uint64_t tm_total() const {
    std::uint64_t total = 0;
    for (const auto& [m, count] : tm_histogram) total += count;
    return total;
  }

  /// Sums the additive counts; qubit count and T-order take the maximum.
  GateMetrics& operator+=(const GateMetrics& other) {
    cnot_count += other.cnot_count;
    u_count += other.u_count;
    for (const auto& [m, count] : other.tm_histogram) tm_histogram[m] += count;
    t_order = std::max(t_order, other.t_order);
    qubit_count = std::max(qubit_count, other.qubit_count);
    return *this;
  }

  friend bool operator==(const GateMetrics&, const GateMetrics&) = default;
};

/// Dyadic form theta = pi * numerator / 2^exponent with an odd numerator.
struct DyadicAngle {
  std::int64_t numerator = 0;
  int exponent = 0;
};

inline constexpr double kDyadicTolerance = 1e-9;
inline constexpr int kMaxDyadicExponent = 40;

/// Smallest exponent m <= 40 with theta within 1e-9 of pi * a / 2^m. A zero
/// angle yields numerator 0.
inline DyadicAngle dyadic_angle(double theta) {
  constexpr double pi = std::numbers::pi;
  if (std::abs(theta) <= kDyadicTolerance) return {};
  for (int m = 0; m <= kMaxDyadicExponent; ++m) {
    const double scale = std::ldexp(1.0, m) / pi;
    const double a = std::round(theta * scale);
    if (std::abs(theta - a / scale) <= kDyadicTolerance) {
      auto numerator = static_cast<std::int64_t>(a);
      int exponent = m;
      while (exponent > 0 && numerator % 2 == 0) {
        numerator /= 2;
        --exponent;
      }
      return {numerator, exponent};
    }
  }
  throw non_dyadic_angle_error("rz angle " + std::to_string(theta) +
                               " is not a dyadic multiple of pi");
}

/// Metrics of a lowered circuit; composite gates raise must_lower_error.
inline GateMetrics metrics(const Circuit& circuit) {
  GateMetrics m;
  m.qubit_count = circuit.num_qubits();
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::cx:
        ++m.cnot_count;
        break;
      case GateKind::h:
      case GateKind::x:
        ++m.u_count;
        break;
      case GateKind::rz: {
        ++m.u_count;
        const DyadicAngle d = dyadic_angle(g.angle);
        auto a = static_cast<std::uint64_t>(std::llabs(d.numerator));
        for (int j = 0; a != 0; ++j, a >>= 1) {
          if (a & 1u) {
            const int order = d.exponent - j;
            ++m.tm_histogram[order];
            m.t_order = std::max(m.t_order, order);
          }
        }
        break;
      }
      case GateKind::mcx:
      case GateKind::mcz:
        throw must_lower_error("metrics need a lowered circuit, found " +
                               std::string(to_string(g.kind)));
    }
  }
  return m;
}

}  // namespace qoracle
