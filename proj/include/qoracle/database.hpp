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

#include <cstdint>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "circuit.hpp"
#include "truth_table.hpp"

namespace qoracle {

using Blob = std::vector<std::uint8_t>;
using Entry = std::variant<std::string, std::int64_t, Blob>;

/// Items in index order. When `labels` is set (fixture mode) entry i has
/// label labels[i] instead of its hash.
struct Database {
  std::vector<Entry> entries;
  std::optional<std::vector<std::uint64_t>> labels;
  unsigned fixture_k = 0;

  std::size_t size() const { return entries.size(); }

  /// Index of the first entry equal to e, if any.
  std::optional<std::size_t> find(const Entry& e) const {
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (entries[i] == e) return i;
    return std::nullopt;
  }

  bool all_integers() const {
    for (const auto& e : entries)
      if (!std::holds_alternative<std::int64_t>(e)) return false;
    return !entries.empty();
  }
};

inline std::string entry_text(const Entry& e) {
  if (auto s = std::get_if<std::string>(&e)) return *s;
  if (auto i = std::get_if<std::int64_t>(&e)) return std::to_string(*i);
  std::string hex;
  char buf[3];
  for (auto b : std::get<Blob>(e)) {
    std::snprintf(buf, sizeof buf, "%02x", b);
    hex += buf;
  }
  return "0x" + hex;
}

/// 64-bit FNV-1a over the entry's canonical bytes: UTF-8 for strings,
/// 8-byte little-endian for integers, raw bytes for blobs.
inline std::uint64_t fnv1a(const Entry& e) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint8_t b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  if (auto s = std::get_if<std::string>(&e)) {
    for (char c : *s) feed(static_cast<std::uint8_t>(c));
  } else if (auto i = std::get_if<std::int64_t>(&e)) {
    const auto u = static_cast<std::uint64_t>(*i);
    for (int k = 0; k < 8; ++k) feed(static_cast<std::uint8_t>(u >> (8 * k)));
  } else {
    for (auto b : std::get<Blob>(e)) feed(b);
  }
  return h;
}

inline std::uint64_t low_bits(std::uint64_t v, unsigned k) {
  return k >= 64 ? v : v & ((std::uint64_t{1} << k) - 1);
}

/// k-bit label of an entry: the low k bits of its FNV-1a hash.
inline std::uint64_t label(const Entry& e, unsigned k) {
  if (k < 1 || k > 64) throw std::invalid_argument("label size must be in [1, 64]");
  return low_bits(fnv1a(e), k);
}

/// Label of entry i, honouring fixture labels.
inline std::uint64_t label_of(const Database& db, std::size_t i, unsigned k) {
  if (db.labels) return low_bits(db.labels->at(i), k);
  return label(db.entries.at(i), k);
}

/// Label of an arbitrary query; in fixture mode an entry present in the
/// database takes its fixture label.
inline std::uint64_t query_label(const Database& db, const Entry& q, unsigned k) {
  if (db.labels) {
    if (auto i = db.find(q)) return label_of(db, *i, k);
  }
  return label(q, k);
}

inline Entry entry_from_json(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  throw std::invalid_argument("database entries must be strings or integers, got " +
                              j.dump());
}

/// JSON array of strings/integers, fixture array of {"entry","label"}
/// objects, or NDJSON with one entry per line.
inline Database parse_database(const std::string& text) {
  Database db;
  nlohmann::json doc;
  bool is_array = false;
  try {
    doc = nlohmann::json::parse(text);
    is_array = doc.is_array();
  } catch (const nlohmann::json::parse_error&) {
  }
  if (is_array) {
    bool fixture = !doc.empty() && doc.front().is_object();
    if (fixture) db.labels.emplace();
    for (const auto& item : doc) {
      if (fixture) {
        if (!item.is_object()) throw std::invalid_argument("mixed fixture entries");
        db.entries.push_back(entry_from_json(item.at("entry")));
        const std::string bits = item.at("label").get<std::string>();
        if (db.fixture_k && bits.size() != db.fixture_k)
          throw std::invalid_argument("fixture labels differ in length");
        db.fixture_k = static_cast<unsigned>(bits.size());
        db.labels->push_back(label_value(bits));
      } else {
        db.entries.push_back(entry_from_json(item));
      }
    }
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      db.entries.push_back(entry_from_json(nlohmann::json::parse(line)));
    }
  }
  if (db.entries.size() < 2)
    throw std::invalid_argument("a database needs at least 2 entries");
  return db;
}

inline Database load_database(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open database '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_database(ss.str());
}

/// The eight-name example database with its published 4-bit labels.
inline Database name_fixture() {
  Database db;
  const std::vector<std::pair<std::string, std::string>> rows{
      {"Alice", "1100"}, {"Bob", "0101"},    {"Craig", "0011"}, {"Dan", "1101"},
      {"Eve", "0001"},   {"Faythe", "0010"}, {"Grace", "0101"}, {"Heidi", "1001"}};
  db.labels.emplace();
  for (const auto& [name, bits] : rows) {
    db.entries.emplace_back(name);
    db.labels->push_back(label_value(bits));
  }
  db.fixture_k = 4;
  return db;
}

}  // namespace qoracle
