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

#include <bit>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "circuit.hpp"

namespace qoracle {

inline bool is_power_of_two(std::size_t n) { return std::has_single_bit(n); }

inline unsigned log2_exact(std::size_t n) {
  if (!is_power_of_two(n))
    throw std::invalid_argument("length " + std::to_string(n) +
                                " is not a power of two");
  return static_cast<unsigned>(std::countr_zero(n));
}

/// In-place unnormalized Walsh-Hadamard transform, values <- H_N * values.
inline void fwht_inplace(std::span<double> values) {
  const std::size_t n = values.size();
  log2_exact(n);
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t block = 0; block < n; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = values[i];
        const double b = values[i + half];
        values[i] = a + b;
        values[i + half] = a - b;
      }
    }
  }
}

inline std::vector<double> fwht(std::vector<double> values) {
  fwht_inplace(values);
  return values;
}

}  // namespace qoracle
