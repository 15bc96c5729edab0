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

#include <cmath>

#include "qoracle/benchmark.hpp"

namespace qoracle {
namespace {

using enum SynthesisMethod;

BenchmarkConfig config(std::vector<std::size_t> sizes, std::vector<SynthesisMethod> methods,
                       std::size_t trials, std::uint64_t seed = 0) {
  BenchmarkConfig c;
  c.sizes = std::move(sizes);
  c.methods = std::move(methods);
  c.trials = trials;
  c.seed = seed;
  return c;
}

const SummaryRow& find(const std::vector<SummaryRow>& s, std::size_t n, std::string_view m) {
  for (const auto& r : s)
    if (r.size == n && r.method == m) return r;
  throw std::out_of_range("missing summary row");
}

TEST(RandomDatabase, PinnedGolden) {
  const Database db = random_database(8, 0);
  const std::vector<std::int64_t> golden{2947667278772165694,  -144895307711186549,
                                         729919693006235833,   -7424912945573528338,
                                         -8443352017236712020, 1054412044467431918,
                                         -6797101773838687953, 7813497161378842344};
  ASSERT_EQ(db.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(std::get<std::int64_t>(db.entries[i]), golden[i]);
}

TEST(RandomDatabase, SeedDeterminism) {
  EXPECT_EQ(random_database(64, 5).entries, random_database(64, 5).entries);
  const auto a = encode_database(random_database(64, 5), 6, phase_tolerant).labels;
  const auto b = encode_database(random_database(64, 6), 6, phase_tolerant).labels;
  EXPECT_NE(a, b);
}

TEST(RandomDatabase, RejectsBadSizes) {
  for (std::size_t n : {0u, 2u, 3u, 12u, 2048u})
    EXPECT_THROW(random_database(n, 0), std::invalid_argument) << n;
}

TEST(Suite, PhaseTolerantCnotIsNLogN) {
  const auto rows = run_suite(config({4, 8, 16, 32, 64, 128, 256, 512, 1024}, {phase_tolerant}, 2));
  const std::vector<std::uint64_t> table{8, 24, 64, 160, 384, 896, 2048, 4608, 10240};
  for (const auto& r : rows) {
    const unsigned n = log2_exact(r.size);
    EXPECT_EQ(r.cnot, r.size * n) << r.size;
    EXPECT_EQ(r.cnot, table[n - 2]);
    EXPECT_EQ(r.qubits, 2 * n);
  }
}

TEST(Suite, HtspNeverWorseOnAverage) {
  const auto s = summarize(run_suite(config({4, 8, 16, 32, 64, 128}, {phase_tolerant, phase_tolerant_htsp}, 30)));
  for (std::size_t n : {4, 8, 16, 32, 64, 128})
    EXPECT_LE(find(s, n, "phase-tolerant-htsp").cnot, find(s, n, "phase-tolerant").cnot) << n;
}

TEST(Suite, FullGrayRatio) {
  const auto s = summarize(run_suite(config({64, 128, 256}, {gray, phase_tolerant}, 2)));
  for (std::size_t n : {64, 128, 256}) {
    const double n_log_n = double(n) * std::log2(double(n));
    const double ratio = double(find(s, n, "gray").cnot) / n_log_n;
    EXPECT_GE(ratio, 1.7) << n;
    EXPECT_LE(ratio, 2.2) << n;
    EXPECT_EQ(find(s, n, "gray").qubits, 2 * log2_exact(n));
  }
}

TEST(Suite, CseKeepsTOrderTwoAndCutsTm) {
  const auto rows = run_suite(config({4, 8, 16, 32, 64}, {cse, phase_tolerant}, 5));
  for (const auto& r : rows) {
    if (r.method != "cse") continue;
    // Affine label tables need no T gates at all.
    EXPECT_EQ(r.t_order, r.tm > 0 ? 2 : 0) << r.size << " seed " << r.seed;
  }
  const auto s = summarize(rows);
  for (std::size_t n : {4, 8, 16, 32, 64}) {
    EXPECT_EQ(find(s, n, "cse").t_order, 2) << n;
    const double pt = double(find(s, n, "phase-tolerant").tm);
    EXPECT_LE(double(find(s, n, "cse").tm), 0.75 * pt) << n;
  }
}

TEST(Suite, DeterministicCsv) {
  const auto c = config({4, 16, 64}, {phase_tolerant, phase_tolerant_htsp, gray, cse}, 3, 7);
  EXPECT_EQ(emit_report(run_suite(c), ReportFormat::csv), emit_report(run_suite(c), ReportFormat::csv));
  auto single = c;
  single.threads = 1;
  EXPECT_EQ(emit_report(run_suite(c), ReportFormat::csv),
            emit_report(run_suite(single), ReportFormat::csv));
}

TEST(Suite, SortedAndSeeded) {
  const auto rows = run_suite(config({16, 4}, {gray, phase_tolerant}, 2, 11));
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows.front().size, 4u);
  EXPECT_EQ(rows.front().method, "gray");
  EXPECT_EQ(rows.front().seed, 11u);
  EXPECT_EQ(rows[1].seed, 12u);
  for (const auto& r : rows) EXPECT_EQ(r.ms, 0.0);
}

TEST(Suite, RejectsBadConfig) {
  EXPECT_THROW(run_suite(config({4}, {phase_tolerant}, 0)), std::invalid_argument);
  EXPECT_THROW(run_suite(config({5}, {phase_tolerant}, 1)), std::invalid_argument);
  EXPECT_THROW(run_suite(config({4}, {automatic}, 1)), std::invalid_argument);
  EXPECT_THROW(run_suite(config({4}, {}, 1)), std::invalid_argument);
}

TEST(Suite, TimingIsOptIn) {
  auto c = config({64}, {cse}, 1);
  c.timing = true;
  EXPECT_GT(run_suite(c).front().ms, 0.0);
}

TEST(Report, CsvLayout) {
  BenchmarkRow r{8, "gray", 3, 42, 40, 37, 3, 6, 0.0};
  EXPECT_EQ(emit_report({r}, ReportFormat::csv),
            "size,method,seed,cnot,u,tm,t_order,qubits,ms\n8,gray,3,42,40,37,3,6,0\n");
  EXPECT_THROW(emit_report({}, ReportFormat::csv), std::invalid_argument);
}

TEST(Report, JsonRoundTrip) {
  const auto rows = run_suite(config({4, 8}, {phase_tolerant, cse}, 2));
  EXPECT_EQ(rows_from_json(emit_report(rows, ReportFormat::json)), rows);
}

TEST(Report, MarkdownDifferenceColumn) {
  const std::string md = emit_report(run_suite(config({256, 1024}, {phase_tolerant, gray}, 1)),
                                     ReportFormat::markdown);
  EXPECT_NE(md.find("| N | Qubits | gray | phase-tolerant | Difference |"), std::string::npos);
  // Full Gray costs 2(2^n - 1) per column against 2^n, so the gap tends to 100%.
  EXPECT_NE(md.find("| 256 | 16 | 4080 | 2048 | 99.2% |"), std::string::npos) << md;
  EXPECT_NE(md.find("| 1024 | 20 | 20460 | 10240 | 99.8% |"), std::string::npos) << md;
}

TEST(Config, ParsesJson) {
  const auto c = benchmark_config_from_json(nlohmann::json::parse(
      R"({"sizes":[4,8],"methods":["cse","phase-tolerant-htsp"],"trials":3,"seed":9,"out":"r.csv"})"));
  EXPECT_EQ(c.sizes, (std::vector<std::size_t>{4, 8}));
  EXPECT_EQ(c.methods, (std::vector<SynthesisMethod>{cse, phase_tolerant_htsp}));
  EXPECT_EQ(c.trials, 3u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.out, "r.csv");
  EXPECT_THROW(benchmark_config_from_json(nlohmann::json::parse(R"({"methods":["nope"]})")),
               std::invalid_argument);
  EXPECT_THROW(benchmark_config_from_json(nlohmann::json::parse("[1]")), std::invalid_argument);
}

}  // namespace
}  // namespace qoracle
