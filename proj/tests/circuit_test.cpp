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

#include <gtest/gtest.h>

#include <numbers>

#include "qoracle/circuit.hpp"
#include "qoracle/lowering.hpp"
#include "qoracle/metrics.hpp"
#include "qoracle/serialization.hpp"
#include "qoracle/simulator.hpp"
#include "test_util.hpp"

namespace qoracle {
namespace {

constexpr double pi = std::numbers::pi;

Circuit one_register(unsigned n) {
  Circuit c;
  c.add_register("q", n);
  return c;
}

TEST(Circuit, RejectsOperandOutsideLayout) {
  Circuit c = one_register(2);
  EXPECT_THROW(c.h(2), layout_error);
  EXPECT_THROW(c.cx(1, 1), layout_error);
  EXPECT_THROW(c.qubit({"q", 5}), layout_error);
  EXPECT_THROW(c.qubit({"r", 0}), layout_error);
}

TEST(Circuit, ResolvesRegisterOffsets) {
  Circuit c;
  c.add_register("idx", 3);
  c.add_register("label", 4);
  EXPECT_EQ(c.qubit({"label", 2}), 5u);
  EXPECT_EQ(c.ref(4).reg, "label");
  EXPECT_EQ(c.ref(4).index, 1u);
  EXPECT_EQ(c.num_qubits(), 7u);
}

TEST(Circuit, NormalizesRotationAngles) {
  EXPECT_DOUBLE_EQ(Gate::rz(0, -pi).angle, pi);
  EXPECT_NEAR(Gate::rz(0, 3 * pi / 2).angle, -pi / 2, 1e-15);
  EXPECT_DOUBLE_EQ(Gate::rz(0, pi).angle, pi);
}

TEST(Circuit, McxWithFewControlsCollapses) {
  EXPECT_EQ(Gate::mcx({}, 2).kind, GateKind::x);
  EXPECT_EQ(Gate::mcx({1}, 2).kind, GateKind::cx);
  EXPECT_EQ(Gate::mcz({2, 0, 1}).qubits, (std::vector<Qubit>{0, 1, 2}));
}

TEST(Inverse, HadamardIsSelfInverse) {
  Circuit c = one_register(1);
  c.h(0);
  EXPECT_EQ(inverse(c), c);
}

TEST(Inverse, ReversesAndNegatesRotations) {
  Circuit c = one_register(2);
  c.rz(0, pi / 4);
  c.cx(0, 1);
  Circuit expected = one_register(2);
  expected.cx(0, 1);
  expected.rz(0, -pi / 4);
  EXPECT_EQ(inverse(c), expected);
}

TEST(Inverse, IsAnInvolutionAndUndoesTheCircuit) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Circuit c = testing::random_circuit(5, 30, seed);
    EXPECT_EQ(inverse(inverse(c)), c);
    Circuit round = c;
    round.append(inverse(c));
    for (std::uint64_t x = 0; x < 32; ++x) {
      const StateVector s = run(round, x);
      EXPECT_NEAR(std::abs(s[x]), 1.0, 1e-9) << "seed " << seed << " x " << x;
    }
  }
}

TEST(Lower, ToffoliUsesSixCnots) {
  Circuit c = one_register(3);
  c.mcx({0, 1}, 2);
  const Circuit lowered = lower(c);
  EXPECT_TRUE(is_lowered(lowered));
  const GateMetrics m = metrics(lowered);
  EXPECT_EQ(m.cnot_count, 6u);
  EXPECT_EQ(m.t_order, 2);
  EXPECT_LE(deviation_up_to_global_phase(matrix(lowered), matrix(c)), 1e-9);
}

TEST(Lower, PrimitiveCircuitIsFixedPoint) {
  const Circuit c = testing::random_circuit(4, 40, 3, false);
  EXPECT_EQ(lower(c), c);
}

TEST(Lower, ThreeQubitMczIsDiagonalSignFlip) {
  Circuit c = one_register(3);
  c.mcz({0, 1, 2});
  const ComplexMatrix m = matrix(lower(c));
  ComplexMatrix expected(8);
  for (std::size_t i = 0; i < 8; ++i) expected(i, i) = i == 7 ? -1.0 : 1.0;
  EXPECT_LE(deviation_up_to_global_phase(m, expected), 1e-9);
}

TEST(Lower, WideMultiControlledGatesMatchExactKernels) {
  for (unsigned controls = 3; controls <= 6; ++controls) {
    Circuit c = one_register(controls + 2);
    std::vector<Qubit> ctrl;
    for (unsigned i = 0; i < controls; ++i) ctrl.push_back(i + 1);
    c.mcx(ctrl, 0);
    c.mcz(ctrl);
    EXPECT_LE(deviation_up_to_global_phase(matrix(lower(c)), matrix(c)), 1e-9)
        << controls << " controls";
  }
}

TEST(Lower, RandomCircuitsAreEquivalentUpToGlobalPhase) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const unsigned qubits = 2 + seed % 5;
    const Circuit c = testing::random_circuit(qubits, 25, 100 + seed);
    EXPECT_LE(deviation_up_to_global_phase(matrix(lower(c)), matrix(c)), 1e-9)
        << "seed " << seed;
  }
}

TEST(Metrics, QuarterPiIsOneT2) {
  Circuit c = one_register(1);
  c.rz(0, pi / 4);
  const GateMetrics m = metrics(c);
  EXPECT_EQ(m.tm_histogram, (std::map<int, std::uint64_t>{{2, 1}}));
  EXPECT_EQ(m.t_order, 2);
  EXPECT_EQ(m.u_count, 1u);
}

TEST(Metrics, ThreeQuarterPiExpandsByBinaryDigits) {
  Circuit c = one_register(1);
  c.rz(0, 3 * pi / 4);
  const GateMetrics m = metrics(c);
  EXPECT_EQ(m.tm_histogram, (std::map<int, std::uint64_t>{{1, 1}, {2, 1}}));
  EXPECT_EQ(m.t_order, 2);
}

TEST(Metrics, EmptyCircuitHasZeroOrder) {
  const GateMetrics m = metrics(one_register(3));
  EXPECT_EQ(m.t_order, 0);
  EXPECT_EQ(m.tm_total(), 0u);
  EXPECT_EQ(m.qubit_count, 3u);
}

TEST(Metrics, RequiresLoweredCircuit) {
  Circuit c = one_register(3);
  c.mcz({0, 1, 2});
  EXPECT_THROW(metrics(c), must_lower_error);
}

TEST(Metrics, AdditiveUnderConcatenation) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Circuit a = lower(testing::random_circuit(4, 20, seed));
    const Circuit b = lower(testing::random_circuit(4, 20, seed + 50));
    Circuit ab = a;
    ab.append(b);
    GateMetrics sum = metrics(a);
    sum += metrics(b);
    const GateMetrics joint = metrics(ab);
    EXPECT_EQ(joint.cnot_count, sum.cnot_count);
    EXPECT_EQ(joint.u_count, sum.u_count);
    EXPECT_EQ(joint.tm_histogram, sum.tm_histogram);
  }
}

TEST(Metrics, DyadicDetection) {
  EXPECT_EQ(dyadic_angle(pi).exponent, 0);
  EXPECT_EQ(dyadic_angle(-pi / 2).numerator, -1);
  EXPECT_EQ(dyadic_angle(5 * pi / 16).exponent, 4);
  EXPECT_EQ(dyadic_angle(0.0).numerator, 0);
  // Arbitrary angles resolve only at a very fine exponent.
  EXPECT_GE(dyadic_angle(1.0).exponent, 25);
}

TEST(Export, JsonRoundTrip) {
  Circuit c;
  c.add_register("idx", 2);
  c.add_register("label", 2);
  c.h(0);
  c.rz(3, 0.123456789012345);
  c.mcx({0, 1}, 2);
  c.mcz({1, 3});
  c.cx(2, 3);
  EXPECT_EQ(import_json(export_json(c)), c);
}

TEST(Export, EmptyQasmHasHeaderAndRegistersOnly) {
  Circuit c;
  c.add_register("idx", 3);
  c.add_register("label", 4);
  EXPECT_EQ(export_qasm2(c),
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg idx[3];\n"
            "qreg label[4];\n");
}

TEST(Export, CnotLine) {
  Circuit c = one_register(2);
  c.cx(0, 1);
  const std::string qasm = export_qasm2(c);
  EXPECT_NE(qasm.find("cx q[0],q[1];\n"), std::string::npos);
}

TEST(Export, QasmRejectsCompositeGates) {
  Circuit c = one_register(3);
  c.mcx({0, 1}, 2);
  EXPECT_THROW(export_qasm2(c), must_lower_error);
  EXPECT_NO_THROW(export_qasm2(lower(c)));
}

}  // namespace
}  // namespace qoracle
