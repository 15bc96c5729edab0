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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "database.hpp"
#include "lowering.hpp"
#include "metrics.hpp"
#include "oracle.hpp"
#include "simulator.hpp"
#include "synthesis.hpp"

namespace qoracle {

inline constexpr std::size_t kMinBenchmarkSize = 4;
inline constexpr std::size_t kMaxBenchmarkSize = 1024;
/// Largest size whose circuits are simulator-checked inside run_suite.
inline constexpr std::size_t kVerifyLimit = 64;

/// N random 64-bit integers from mt19937_64 seeded with `seed`.
inline Database random_database(std::size_t n, std::uint64_t seed) {
  if (n < kMinBenchmarkSize || n > kMaxBenchmarkSize || !std::has_single_bit(n))
    throw std::invalid_argument("benchmark size must be a power of two in [4, 1024], got " +
                                std::to_string(n));
  std::mt19937_64 rng(seed);
  Database db;
  db.entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) db.entries.emplace_back(static_cast<std::int64_t>(rng()));
  return db;
}

struct BenchmarkRow {
  std::size_t size = 0;
  std::string method;
  std::uint64_t seed = 0;
  std::uint64_t cnot = 0;
  std::uint64_t u = 0;
  std::uint64_t tm = 0;
  int t_order = 0;
  std::uint32_t qubits = 0;
  double ms = 0.0;

  friend bool operator==(const BenchmarkRow&, const BenchmarkRow&) = default;
};

inline void to_json(nlohmann::json& j, const BenchmarkRow& r) {
  j = {{"size", r.size}, {"method", r.method}, {"seed", r.seed},     {"cnot", r.cnot},
       {"u", r.u},       {"tm", r.tm},         {"t_order", r.t_order}, {"qubits", r.qubits},
       {"ms", r.ms}};
}

inline void from_json(const nlohmann::json& j, BenchmarkRow& r) {
  j.at("size").get_to(r.size);
  j.at("method").get_to(r.method);
  j.at("seed").get_to(r.seed);
  j.at("cnot").get_to(r.cnot);
  j.at("u").get_to(r.u);
  j.at("tm").get_to(r.tm);
  j.at("t_order").get_to(r.t_order);
  j.at("qubits").get_to(r.qubits);
  j.at("ms").get_to(r.ms);
}

/// Per (size, method) means rounded to integers; t_order is the maximum, as
/// for a combined circuit.
struct SummaryRow {
  std::size_t size = 0;
  std::string method;
  std::size_t trials = 0;
  std::uint64_t cnot = 0;
  std::uint64_t u = 0;
  std::uint64_t tm = 0;
  int t_order = 0;
  std::uint32_t qubits = 0;
  double ms = 0.0;
};

inline void to_json(nlohmann::json& j, const SummaryRow& r) {
  j = {{"size", r.size}, {"method", r.method}, {"trials", r.trials},   {"cnot", r.cnot},
       {"u", r.u},       {"tm", r.tm},         {"t_order", r.t_order}, {"qubits", r.qubits},
       {"ms", r.ms}};
}

struct BenchmarkConfig {
  std::vector<std::size_t> sizes{4, 8, 16, 32, 64, 128, 256, 512, 1024};
  std::vector<SynthesisMethod> methods{SynthesisMethod::phase_tolerant,
                                       SynthesisMethod::phase_tolerant_htsp,
                                       SynthesisMethod::gray};
  std::size_t trials = 30;
  std::uint64_t seed = 0;
  bool verify = true;
  bool timing = false;  ///< wall time breaks byte-identical reports, so off by default
  unsigned threads = 0;  ///< 0 = hardware concurrency
  std::string out;

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (sizes.empty()) throw std::invalid_argument("no benchmark sizes given");
    if (methods.empty()) throw std::invalid_argument("no benchmark methods given");
    for (std::size_t n : sizes)
      if (n < kMinBenchmarkSize || n > kMaxBenchmarkSize || !std::has_single_bit(n))
        throw std::invalid_argument("benchmark size must be a power of two in [4, 1024], got " +
                                    std::to_string(n));
    for (SynthesisMethod m : methods)
      if (m == SynthesisMethod::automatic)
        throw std::invalid_argument("'auto' is not a benchmark method");
  }
};

/// Reads {"sizes", "methods", "trials", "seed", "out", "verify", "timing",
/// "threads"}; every key is optional.
inline BenchmarkConfig benchmark_config_from_json(const nlohmann::json& j) {
  BenchmarkConfig c;
  if (!j.is_object()) throw std::invalid_argument("benchmark config must be a JSON object");
  if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
  if (j.contains("methods")) {
    c.methods.clear();
    for (const auto& m : j.at("methods")) c.methods.push_back(method_from_name(m.get<std::string>()));
  }
  if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (j.contains("verify")) c.verify = j.at("verify").get<bool>();
  if (j.contains("timing")) c.timing = j.at("timing").get<bool>();
  if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  c.validate();
  return c;
}

/// Checks that U_D maps every |i>|0> to a single basis state holding the
/// row's label.
inline void verify_encoding(const EncodedDatabase& enc, const Circuit& circuit) {
  const Qubit label_at = circuit.offset("label");
  const std::uint64_t label_mask = (std::uint64_t{1} << enc.k) - 1;
  for (std::uint64_t x = 0; x < enc.rows(); ++x) {
    const SparseState s = run_sparse(circuit, x);
    bool ok = s.size() == 1;
    if (ok) {
      const auto& [basis, amp] = *s.begin();
      ok = std::abs(std::abs(amp) - 1.0) < 1e-9 &&
           (basis & ((std::uint64_t{1} << enc.n) - 1)) == x &&
           ((basis >> label_at) & label_mask) == enc.labels[x];
    }
    if (!ok)
      throw std::logic_error(std::string(method_name(enc.method)) + " circuit does not encode row " +
                             std::to_string(x));
  }
}

inline BenchmarkRow run_trial(std::size_t size, SynthesisMethod method, std::uint64_t seed,
                              bool verify, bool timing) {
  const Database db = random_database(size, seed);
  const auto start = std::chrono::steady_clock::now();
  const EncodedDatabase enc = encode_database(db, log2_exact(size), method);
  const auto stop = std::chrono::steady_clock::now();
  const Circuit lowered = lower(enc.u_d);
  if (verify && size <= kVerifyLimit) verify_encoding(enc, lowered);
  const GateMetrics m = metrics(lowered);
  BenchmarkRow row;
  row.size = size;
  row.method = std::string(method_name(method));
  row.seed = seed;
  row.cnot = m.cnot_count;
  row.u = m.u_count;
  row.tm = m.tm_total();
  row.t_order = m.t_order;
  row.qubits = m.qubit_count;
  if (timing) row.ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return row;
}

/// Rows sorted by (size, method, seed); trial t of every size uses seed
/// base_seed + t.
inline std::vector<BenchmarkRow> run_suite(const BenchmarkConfig& config) {
  config.validate();
  struct Job {
    std::size_t size;
    SynthesisMethod method;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t n : config.sizes)
    for (SynthesisMethod m : config.methods)
      for (std::size_t t = 0; t < config.trials; ++t) jobs.push_back({n, m, config.seed + t});
  // Largest first so the long jobs do not trail at the end.
  std::stable_sort(jobs.begin(), jobs.end(),
                   [](const Job& a, const Job& b) { return a.size > b.size; });

  std::vector<BenchmarkRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        rows[i] = run_trial(jobs[i].size, jobs[i].method, jobs[i].seed, config.verify,
                            config.timing);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::sort(rows.begin(), rows.end(), [](const BenchmarkRow& a, const BenchmarkRow& b) {
    return std::tie(a.size, a.method, a.seed) < std::tie(b.size, b.method, b.seed);
  });
  return rows;
}

/// Rows are expected in run_suite order; the summary keeps the sizes
/// ascending and methods in first-seen order per size.
inline std::vector<SummaryRow> summarize(const std::vector<BenchmarkRow>& rows) {
  struct Acc {
    std::size_t trials = 0;
    double cnot = 0, u = 0, tm = 0, t_order = 0, qubits = 0, ms = 0;
  };
  std::map<std::pair<std::size_t, std::string>, Acc> acc;
  std::vector<std::pair<std::size_t, std::string>> order;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.size, r.method);
    auto [it, fresh] = acc.try_emplace(key);
    if (fresh) order.push_back(key);
    Acc& a = it->second;
    ++a.trials;
    a.cnot += r.cnot;
    a.u += r.u;
    a.tm += r.tm;
    a.t_order = std::max(a.t_order, double(r.t_order));
    a.qubits += r.qubits;
    a.ms += r.ms;
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const Acc& a = acc.at(key);
    const double t = static_cast<double>(a.trials);
    SummaryRow s;
    s.size = key.first;
    s.method = key.second;
    s.trials = a.trials;
    s.cnot = static_cast<std::uint64_t>(std::llround(a.cnot / t));
    s.u = static_cast<std::uint64_t>(std::llround(a.u / t));
    s.tm = static_cast<std::uint64_t>(std::llround(a.tm / t));
    s.t_order = static_cast<int>(a.t_order);
    s.qubits = static_cast<std::uint32_t>(std::lround(a.qubits / t));
    s.ms = std::round(a.ms / t * 1000.0) / 1000.0;
    out.push_back(s);
  }
  return out;
}

enum class ReportFormat { csv, json, markdown };

inline ReportFormat report_format_from_name(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  if (name == "markdown" || name == "md") return ReportFormat::markdown;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

namespace detail {

inline std::string format_ms(double ms) {
  std::ostringstream s;
  s << ms;
  return s.str();
}

inline std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", v);
  return buf;
}

inline std::string markdown_report(const std::vector<BenchmarkRow>& rows) {
  const auto summary = summarize(rows);
  std::vector<std::string> methods;
  std::vector<std::size_t> sizes;
  std::map<std::pair<std::size_t, std::string>, const SummaryRow*> cell;
  for (const auto& s : summary) {
    if (std::find(methods.begin(), methods.end(), s.method) == methods.end())
      methods.push_back(s.method);
    if (std::find(sizes.begin(), sizes.end(), s.size) == sizes.end()) sizes.push_back(s.size);
    cell[{s.size, s.method}] = &s;
  }
  const bool compare = cell.end() != std::find_if(cell.begin(), cell.end(), [](const auto& kv) {
                         return kv.first.second == "gray";
                       }) &&
                       cell.end() != std::find_if(cell.begin(), cell.end(), [](const auto& kv) {
                         return kv.first.second == "phase-tolerant";
                       });

  std::ostringstream md;
  md << "### Average CNOT count\n\n| N | Qubits |";
  for (const auto& m : methods) md << ' ' << m << " |";
  if (compare) md << " Difference |";
  md << "\n|---:|---:|";
  for (std::size_t i = 0; i < methods.size(); ++i) md << "---:|";
  if (compare) md << "---:|";
  md << '\n';
  for (std::size_t n : sizes) {
    // Narrowest method, i.e. the index plus label registers without ancillas.
    std::uint32_t qubits = std::numeric_limits<std::uint32_t>::max();
    for (const auto& m : methods)
      if (auto it = cell.find({n, m}); it != cell.end()) qubits = std::min(qubits, it->second->qubits);
    md << "| " << n << " | " << qubits << " |";
    for (const auto& m : methods) {
      auto it = cell.find({n, m});
      md << ' ' << (it == cell.end() ? std::string("-") : std::to_string(it->second->cnot)) << " |";
    }
    if (compare) {
      auto g = cell.find({n, "gray"});
      auto p = cell.find({n, "phase-tolerant"});
      if (g != cell.end() && p != cell.end() && p->second->cnot > 0)
        md << ' '
           << percent((double(g->second->cnot) - double(p->second->cnot)) /
                      double(p->second->cnot) * 100.0)
           << " |";
      else
        md << " - |";
    }
    md << '\n';
  }

  md << "\n### All metrics (means over trials)\n\n"
        "| N | Method | Trials | CNOT | U | T_m | max T-order | Qubits | ms |\n"
        "|---:|---|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& s : summary)
    md << "| " << s.size << " | " << s.method << " | " << s.trials << " | " << s.cnot << " | "
       << s.u << " | " << s.tm << " | " << s.t_order << " | " << s.qubits << " | "
       << format_ms(s.ms) << " |\n";
  return md.str();
}

}  // namespace detail

inline std::string emit_report(const std::vector<BenchmarkRow>& rows, ReportFormat format) {
  if (rows.empty()) throw std::invalid_argument("no benchmark rows to report");
  switch (format) {
    case ReportFormat::csv: {
      std::ostringstream csv;
      csv << "size,method,seed,cnot,u,tm,t_order,qubits,ms\n";
      for (const auto& r : rows)
        csv << r.size << ',' << r.method << ',' << r.seed << ',' << r.cnot << ',' << r.u << ','
            << r.tm << ',' << r.t_order << ',' << r.qubits << ',' << detail::format_ms(r.ms)
            << '\n';
      return csv.str();
    }
    case ReportFormat::json: {
      nlohmann::json j = {{"rows", rows}, {"summary", summarize(rows)}};
      return j.dump(2) + "\n";
    }
    case ReportFormat::markdown:
      return detail::markdown_report(rows);
  }
  return {};
}

inline std::vector<BenchmarkRow> rows_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  return (j.is_object() ? j.at("rows") : j).get<std::vector<BenchmarkRow>>();
}

}  // namespace qoracle
