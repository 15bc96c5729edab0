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

#include <cstdlib>
#include <numbers>
#include <random>

#include "qoracle/lowering.hpp"
#include "qoracle/simulator.hpp"
#include "test_util.hpp"

namespace qoracle {
namespace {

constexpr double pi = std::numbers::pi;

Circuit one_register(unsigned n) { return Circuit({{"q", n}}); }

TEST(Simulator, HadamardOnZero) {
  Circuit c = one_register(1);
  c.h(0);
  const StateVector s = run(c);
  EXPECT_NEAR(s[0].real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(s[1].real(), std::sqrt(0.5), 1e-15);
}

TEST(Simulator, CnotControlIsQubitZero) {
  Circuit c = one_register(2);
  c.cx(0, 1);
  EXPECT_NEAR(std::abs(run(c, 0b10)[0b10]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(run(c, 0b01)[0b11]), 1.0, 1e-15);
}

TEST(Simulator, RzSignConvention) {
  Circuit c = one_register(1);
  c.rz(0, pi / 2);
  EXPECT_LE(std::abs(run(c, 0)[0] - std::polar(1.0, -pi / 4)), 1e-15);
  EXPECT_LE(std::abs(run(c, 1)[1] - std::polar(1.0, pi / 4)), 1e-15);
}

TEST(Simulator, QubitCap) {
  const Circuit c = one_register(6);
  EXPECT_THROW(run(c, 0, 5), resource_error);
  EXPECT_NO_THROW(run(c, 0, 6));
  EXPECT_THROW(run(c, 64), layout_error);
}

TEST(Simulator, CapFromEnvironment) {
  ::setenv("QORACLE_MAX_QUBITS", "7", 1);
  EXPECT_EQ(default_max_qubits(), 7u);
  ::setenv("QORACLE_MAX_QUBITS", "junk", 1);
  EXPECT_EQ(default_max_qubits(), kDefaultMaxQubits);
  ::unsetenv("QORACLE_MAX_QUBITS");
  EXPECT_EQ(default_max_qubits(), kDefaultMaxQubits);
}

TEST(Matrix, IdentityCircuit) {
  const ComplexMatrix m = matrix(one_register(3));
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      EXPECT_EQ(m(r, c), Amplitude(r == c ? 1.0 : 0.0));
}

TEST(Matrix, ThreeQubitMcz) {
  Circuit c = one_register(3);
  c.mcz({0, 1, 2});
  const ComplexMatrix m = matrix(c);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(m(i, i), Amplitude(i == 7 ? -1.0 : 1.0));
  EXPECT_EQ(testing::off_diagonal_mass(m), 0.0);
}

TEST(Matrix, TooWide) { EXPECT_THROW(matrix(one_register(11)), resource_error); }

TEST(Matrix, EveryGateKindIsUnitary) {
  std::vector<Gate> gates{Gate::h(1),        Gate::x(2),           Gate::rz(0, 0.7),
                          Gate::cx(3, 0),    Gate::mcx({0, 2}, 1), Gate::mcx({0, 1, 3}, 2),
                          Gate::mcz({1, 3}), Gate::mcz({0, 1, 2, 3})};
  for (const auto& g : gates) {
    Circuit c = one_register(4);
    c.add(g);
    const ComplexMatrix m = matrix(c);
    for (std::size_t a = 0; a < 16; ++a)
      for (std::size_t b = 0; b < 16; ++b) {
        Amplitude dot{};
        for (std::size_t r = 0; r < 16; ++r) dot += std::conj(m(r, a)) * m(r, b);
        EXPECT_LE(std::abs(dot - Amplitude(a == b ? 1.0 : 0.0)), 1e-12)
            << to_string(g.kind);
      }
  }
}

TEST(Simulator, NormPreservedOverLongSequence) {
  const Circuit c = testing::random_circuit(8, 100000, 17);
  const StateVector s = run(c);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-9);
}

TEST(Simulator, InverseReturnsToBasisState) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Circuit c = testing::random_circuit(6, 40, 70 + seed);
    for (std::uint64_t x = 0; x < 64; x += 7) {
      StateVector s = run(c, x);
      s.apply(inverse(c));
      EXPECT_NEAR(std::abs(s[x]), 1.0, 1e-9);
    }
  }
}

TEST(Distribution, UniformThreeQubits) {
  Circuit c = one_register(3);
  for (Qubit q = 0; q < 3; ++q) c.h(q);
  const auto p = measure_distribution(run(c), "q");
  for (double v : p) EXPECT_NEAR(v, 0.125, 1e-12);
}

TEST(Distribution, MarginalOverOneRegister) {
  Circuit c({{"a", 1}, {"b", 2}});
  c.h(0);
  c.cx(0, 2);
  const auto p = measure_distribution(run(c), "b");
  ASSERT_EQ(p.size(), 4u);
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  EXPECT_NEAR(p[2], 0.5, 1e-12);
  EXPECT_THROW(measure_distribution(run(c), "z"), layout_error);
}

TEST(Distribution, CsvAndJson) {
  const std::vector<double> p{0.25, 0.75};
  EXPECT_EQ(distribution_csv(p, 1), "index,bitstring,probability\n0,0,0.25\n1,1,0.75\n");
  const auto j = distribution_json({0, 0, 1, 0}, 2);
  EXPECT_EQ(j[2]["bitstring"], "10");
  EXPECT_EQ(j[2]["probability"], 1.0);
}

TEST(Sparse, AgreesWithDenseSimulation) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Circuit c = lower(testing::random_circuit(6, 30, 300 + seed));
    const std::uint64_t x = seed % 64;
    const StateVector dense = run(c, x);
    const SparseState sparse = run_sparse(c, x);
    for (std::uint64_t i = 0; i < 64; ++i) {
      auto it = sparse.find(i);
      const Amplitude a = it == sparse.end() ? Amplitude{} : it->second;
      EXPECT_LE(std::abs(a - dense[i]), 1e-9);
    }
  }
}

TEST(Sparse, WideRegisters) {
  Circuit c = one_register(60);
  c.x(0);
  c.cx(0, 59);
  c.mcx({0, 59}, 30);
  const SparseState s = run_sparse(c, 0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.begin()->first, (std::uint64_t{1} << 59) | (std::uint64_t{1} << 30) | 1);
  EXPECT_THROW(run_sparse(one_register(65), 0), resource_error);
}

}  // namespace
}  // namespace qoracle
