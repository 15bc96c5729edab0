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
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "parity_network.hpp"

namespace qoracle {

/// RZ(-(-1)^{l_j} 2 pi / k) on label qubit j. Basis label l picks up
/// exp(i pi/k * sum_j (-1)^{l_j xor target_j}), i.e. pi on an exact match.
inline Circuit hamming_similarity_tag(std::uint64_t target, unsigned k) {
  if (k < 1) throw std::invalid_argument("label size must be at least 1");
  Circuit c({{"label", k}});
  const double step = 2.0 * std::numbers::pi / k;
  for (unsigned j = 0; j < k; ++j) c.rz(j, ((target >> j) & 1) ? step : -step);
  return c;
}

/// 2|x & y| / (|x| + |y|) on equal-length bit strings; two empty sets give 1.
inline double dice_coefficient(const std::string& x, const std::string& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dice: length mismatch");
  int both = 0, total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int a = x[i] == '1', b = y[i] == '1';
    both += a & b;
    total += a + b;
  }
  return total == 0 ? 1.0 : 2.0 * both / total;
}

inline double dice_coefficient(std::uint64_t x, std::uint64_t y) {
  const int total = std::popcount(x) + std::popcount(y);
  return total == 0 ? 1.0 : 2.0 * std::popcount(x & y) / total;
}

/// Logistic contrast 1 / (exp(30 (0.78 - x)) + 1).
inline double default_contrast(double x) {
  return 1.0 / (std::exp(30.0 * (0.78 - x)) + 1.0);
}

/// f(label) in [0, 1] for a fixed query, with an optional contrast applied
/// on top (identity when empty).
struct SimilarityMeasure {
  std::function<double(std::uint64_t)> evaluate;
  std::function<double(double)> contrast;

  double operator()(std::uint64_t label) const {
    const double f = evaluate(label);
    if (!(f >= 0.0 && f <= 1.0))
      throw std::out_of_range("similarity value " + std::to_string(f) +
                              " outside [0, 1]");
    return contrast ? contrast(f) : f;
  }
};

inline SimilarityMeasure dice_measure(std::uint64_t query_label,
                                      std::function<double(double)> contrast = {}) {
  return {[query_label](std::uint64_t y) { return dice_coefficient(query_label, y); },
          std::move(contrast)};
}

/// True when the contrast never decreases on a 1e-3 grid over [0, 1] and
/// stays inside [0, 1].
inline bool is_monotone_contrast(const std::function<double(double)>& contrast) {
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = contrast(i / 1000.0);
    if (v < prev || v < 0.0 || v > 1.0) return false;
    prev = v;
  }
  return true;
}

inline constexpr unsigned kMaxAdvancedTagBits = 12;

/// Alternating-sign phase of label y: (-1)^y * pi * measure(y), where the
/// sign follows the parity of the label's integer value.
inline double advanced_tag_phase(const SimilarityMeasure& measure, std::uint64_t y) {
  return ((y & 1) ? -1.0 : 1.0) * std::numbers::pi * measure(y);
}

/// Gray-synthesized diagonal over the label register with the phases of
/// advanced_tag_phase; at most 2^k CNOTs.
inline Circuit advanced_similarity_tag(const SimilarityMeasure& measure, unsigned k) {
  if (k < 1 || k > kMaxAdvancedTagBits)
    throw std::invalid_argument("advanced similarity tags support 1 to " +
                                std::to_string(kMaxAdvancedTagBits) + " label bits");
  PhaseSpec spec{std::vector<double>(std::size_t{1} << k)};
  for (std::uint64_t y = 0; y < spec.phis.size(); ++y)
    spec.phis[y] = advanced_tag_phase(measure, y);
  Circuit c({{"label", k}});
  c.append(gray_synthesize_diagonal(spec));
  return c;
}

struct Amplification {
  double r_cm = 0.0;
  double phi_cm = 0.0;
  std::vector<double> factors;  ///< A_x
};

/// Centre of mass r e^{i phi} = mean of exp(i phases) and the diffuser's
/// amplification A_x = sqrt(1 + 4r^2 - 4r cos(phi_x - phi)).
inline Amplification amplification_analysis(const std::vector<double>& phases) {
  Amplification out;
  std::complex<double> sum{};
  for (double p : phases) sum += std::polar(1.0, p);
  if (!phases.empty()) sum /= static_cast<double>(phases.size());
  out.r_cm = std::abs(sum);
  out.phi_cm = out.r_cm <= 1e-12 ? 0.0 : std::arg(sum);
  if (out.r_cm <= 1e-12) out.r_cm = 0.0;
  for (double p : phases)
    out.factors.push_back(std::sqrt(std::max(
        0.0, 1.0 + 4.0 * out.r_cm * out.r_cm - 4.0 * out.r_cm * std::cos(p - out.phi_cm))));
  return out;
}

}  // namespace qoracle
