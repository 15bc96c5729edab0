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
#include <nlohmann/json.hpp>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "database.hpp"
#include "similarity.hpp"
#include "simulator.hpp"
#include "synthesis.hpp"
#include "truth_table.hpp"

namespace qoracle {

/// U_D with |i>|0>|0> -> (phase) |i>|l(e_i)>|garbage> on registers "idx",
/// "label" and, for cse, "anc".
struct EncodedDatabase {
  Circuit u_d;
  unsigned n = 0;
  unsigned k = 0;
  std::size_t entries = 0;
  std::vector<std::uint64_t> labels;  ///< one per padded row
  SynthesisMethod method = SynthesisMethod::gray;
  std::size_t ancillas = 0;

  std::size_t rows() const { return labels.size(); }
  bool padded() const { return rows() > entries; }
};

/// Label size used when none is given: the fixture width, else log2 of the
/// padded row count.
inline unsigned default_label_bits(const Database& db) {
  if (db.labels) return db.fixture_k;
  return log2_exact(padded_size(db.size()));
}

inline EncodedDatabase encode_database(const Database& db, unsigned k,
                                       SynthesisMethod method) {
  if (db.size() < 2) throw std::invalid_argument("a database needs at least 2 entries");
  if (k == 0) k = default_label_bits(db);
  std::vector<std::uint64_t> labels;
  for (std::size_t i = 0; i < db.size(); ++i) labels.push_back(label_of(db, i, k));
  const TruthTable table = table_from_labels(labels, k);
  SynthesisResult r = synthesize_table(table, method);

  EncodedDatabase enc;
  enc.u_d = std::move(r.circuit);
  enc.n = table.n_inputs;
  enc.k = k;
  enc.entries = db.size();
  for (std::uint64_t x = 0; x < table.rows(); ++x) enc.labels.push_back(table.row_value(x));
  enc.method = r.method;
  enc.ancillas = r.ancillas;
  return enc;
}

/// Sign flip on label == target: X on the zero bits, MCZ, X again.
inline Circuit phase_tag(std::uint64_t target, unsigned k) {
  Circuit c({{"label", k}});
  std::vector<Qubit> all;
  for (unsigned j = 0; j < k; ++j) all.push_back(j);
  for (unsigned j = 0; j < k; ++j)
    if (!((target >> j) & 1)) c.x(j);
  c.mcz(all);
  for (unsigned j = 0; j < k; ++j)
    if (!((target >> j) & 1)) c.x(j);
  return c;
}

enum class TagKind { exact, hamming, advanced };

inline TagKind tag_kind_from_name(std::string_view name) {
  if (name == "exact") return TagKind::exact;
  if (name == "hamming") return TagKind::hamming;
  if (name == "advanced" || name == "dice") return TagKind::advanced;
  throw std::invalid_argument("unknown tag kind '" + std::string(name) + "'");
}

struct Tag {
  TagKind kind = TagKind::exact;
  std::uint64_t target = 0;                  ///< query label
  std::optional<SimilarityMeasure> measure;  ///< advanced only
};

inline Circuit tag_circuit(const Tag& tag, unsigned k) {
  switch (tag.kind) {
    case TagKind::exact: return phase_tag(tag.target, k);
    case TagKind::hamming: return hamming_similarity_tag(tag.target, k);
    case TagKind::advanced:
      if (!tag.measure) throw std::invalid_argument("advanced tag needs a measure");
      return advanced_similarity_tag(*tag.measure, k);
  }
  throw std::invalid_argument("unknown tag kind");
}

/// O = U_D^dagger . Tag . U_D over the encoded layout.
inline Circuit build_query_oracle(const EncodedDatabase& enc, const Tag& tag) {
  Circuit o = enc.u_d;
  const Circuit t = tag_circuit(tag, enc.k);
  o.append(t, o.qubits("label"));
  o.append(inverse(enc.u_d));
  return o;
}

/// Warning text when the query cannot be told apart from the zero labels
/// used to pad the database.
inline std::optional<std::string> padding_warning(const EncodedDatabase& enc,
                                                  std::uint64_t query_label) {
  if (!enc.padded() || query_label != 0) return std::nullopt;
  return "query label is all-zero and matches the " +
         std::to_string(enc.rows() - enc.entries) + " padding row(s)";
}

inline std::size_t count_matches(const EncodedDatabase& enc, std::uint64_t query_label) {
  return static_cast<std::size_t>(
      std::count(enc.labels.begin(), enc.labels.end(), query_label));
}

/// H X MCZ X H on `n` index qubits: 2|s><s| - I up to global phase.
inline Circuit diffuser(unsigned n) {
  if (n < 1) throw std::invalid_argument("diffuser needs at least one qubit");
  Circuit c({{"idx", n}});
  std::vector<Qubit> all;
  for (Qubit q = 0; q < n; ++q) all.push_back(q);
  for (Qubit q : all) c.h(q);
  for (Qubit q : all) c.x(q);
  c.mcz(all);
  for (Qubit q : all) c.x(q);
  for (Qubit q : all) c.h(q);
  return c;
}

/// Expected number of entries sharing the query's label: 1 + (N-1) 2^-k.
inline double expected_collisions(std::size_t n_entries, unsigned k) {
  return 1.0 + static_cast<double>(n_entries - 1) * std::ldexp(1.0, -static_cast<int>(k));
}

struct IterationCount {
  std::size_t optimal = 1;
  std::size_t upper_bound = 1;
};

inline IterationCount iteration_count(std::size_t n, std::size_t m) {
  if (m < 1 || m > n) throw std::invalid_argument("need 1 <= M <= N");
  const double ratio = static_cast<double>(m) / static_cast<double>(n);
  IterationCount out;
  out.upper_bound = static_cast<std::size_t>(
      std::ceil(std::numbers::pi / 4.0 * std::sqrt(1.0 / ratio) - 1e-12));
  out.optimal = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::floor(std::numbers::pi / (4.0 * std::asin(std::sqrt(ratio))) + 1e-12)));
  return out;
}

inline std::size_t estimated_winners(std::size_t n_entries, unsigned k) {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(expected_collisions(n_entries, k))));
}

struct GroverProgram {
  Circuit circuit;
  std::size_t iterations = 0;
  std::size_t estimated_m = 0;
};

/// H on the index register, then `iterations` rounds of oracle and
/// diffuser. Without a count, M is estimated from the collision formula
/// over the padded register size.
inline GroverProgram build_grover(const EncodedDatabase& enc, const Tag& tag,
                                  std::optional<std::size_t> iterations = {}) {
  GroverProgram g;
  g.estimated_m = std::min(estimated_winners(enc.entries, enc.k), enc.rows());
  g.iterations = iterations ? *iterations : iteration_count(enc.rows(), g.estimated_m).optimal;
  if (g.iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  g.circuit = enc.u_d.empty_copy();
  const auto idx = g.circuit.qubits("idx");
  for (Qubit q : idx) g.circuit.h(q);
  const Circuit oracle = build_query_oracle(enc, tag);
  const Circuit diff = diffuser(enc.n);
  for (std::size_t r = 0; r < g.iterations; ++r) {
    g.circuit.append(oracle);
    g.circuit.append(diff, idx);
  }
  return g;
}

/// Index-register distribution of the program's final state.
inline std::vector<double> grover_distribution(const GroverProgram& g,
                                               unsigned max_qubits = default_max_qubits()) {
  return measure_distribution(run(g.circuit, 0, max_qubits), "idx");
}

inline nlohmann::json grover_report(const GroverProgram& g, const std::vector<double>& p,
                                    std::size_t top = 5) {
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b] + 1e-12; });
  nlohmann::json hits = nlohmann::json::array();
  for (std::size_t i = 0; i < std::min(top, order.size()); ++i)
    hits.push_back({{"index", order[i]}, {"p", p[order[i]]}});
  return {{"probabilities", p},
          {"top", hits},
          {"iterations", g.iterations},
          {"estimated_M", g.estimated_m}};
}

}  // namespace qoracle
