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

#include <cstddef>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "walsh.hpp"

namespace qoracle {

/// Multi-output Boolean function. columns[c][x] is output bit c on input row
/// x, rows in natural order of the little-endian input integer.
struct TruthTable {
  unsigned n_inputs = 0;
  std::vector<std::vector<std::uint8_t>> columns;

  TruthTable() = default;
  TruthTable(unsigned n, std::size_t num_columns)
      : n_inputs(n),
        columns(num_columns, std::vector<std::uint8_t>(std::size_t{1} << n, 0)) {}

  std::size_t rows() const { return std::size_t{1} << n_inputs; }
  std::size_t num_columns() const { return columns.size(); }

  bool bit(std::size_t column, std::uint64_t x) const {
    return columns.at(column).at(x) != 0;
  }

  /// Output word on row x, column c at bit c.
  std::uint64_t row_value(std::uint64_t x) const {
    std::uint64_t v = 0;
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c][x]) v |= std::uint64_t{1} << c;
    return v;
  }

  void validate() const {
    if (n_inputs < 1) throw std::invalid_argument("truth table needs n_inputs >= 1");
    for (const auto& col : columns)
      if (col.size() != rows())
        throw std::invalid_argument("truth table column has " +
                                    std::to_string(col.size()) + " rows, expected " +
                                    std::to_string(rows()));
  }

  bool operator==(const TruthTable&) const = default;
};

/// Label text is l_0 first, so "0101" has integer value 0b1010.
inline std::uint64_t label_value(const std::string& bits) {
  if (bits.size() > 64) throw std::invalid_argument("label longer than 64 bits");
  std::uint64_t v = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1')
      v |= std::uint64_t{1} << j;
    else if (bits[j] != '0')
      throw std::invalid_argument("label '" + bits + "' is not a bit string");
  }
  return v;
}

inline std::string label_text(std::uint64_t value, unsigned k) {
  std::string s(k, '0');
  for (unsigned j = 0; j < k; ++j)
    if ((value >> j) & 1) s[j] = '1';
  return s;
}

inline std::size_t padded_size(std::size_t n) {
  return n < 2 ? 2 : std::bit_ceil(n);
}

/// Builds the table whose row i is label i. Short lists are padded with the
/// all-zero label up to the next power of two (at least 2).
inline TruthTable table_from_labels(const std::vector<std::uint64_t>& labels,
                                    unsigned k) {
  if (labels.empty()) throw std::invalid_argument("no labels to tabulate");
  if (k < 1 || k > 64) throw std::invalid_argument("label size must be in [1, 64]");
  const std::size_t rows = padded_size(labels.size());
  TruthTable t(log2_exact(rows), k);
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (unsigned c = 0; c < k; ++c) t.columns[c][i] = (labels[i] >> c) & 1;
  return t;
}

inline TruthTable table_from_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) throw std::invalid_argument("no labels to tabulate");
  const std::size_t k = labels.front().size();
  std::vector<std::uint64_t> values;
  for (const auto& l : labels) {
    if (l.size() != k) throw std::invalid_argument("labels differ in length");
    values.push_back(label_value(l));
  }
  return table_from_labels(values, static_cast<unsigned>(k));
}

inline nlohmann::json to_json(const TruthTable& t) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& col : t.columns) {
    std::string s;
    for (auto b : col) s.push_back(b ? '1' : '0');
    cols.push_back(s);
  }
  return {{"n_inputs", t.n_inputs}, {"columns", cols}};
}

inline TruthTable truth_table_from_json(const nlohmann::json& j) {
  TruthTable t;
  t.n_inputs = j.at("n_inputs").get<unsigned>();
  for (const auto& c : j.at("columns")) {
    std::vector<std::uint8_t> col;
    for (char ch : c.get<std::string>()) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("bad truth table bit");
      col.push_back(ch == '1');
    }
    t.columns.push_back(std::move(col));
  }
  t.validate();
  return t;
}

}  // namespace qoracle
