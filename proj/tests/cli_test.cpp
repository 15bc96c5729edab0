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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "qoracle/serialization.hpp"
#include "qoracle/truth_table.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("qoracle_cli_" + std::to_string(::getpid()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path scratch_dir() {
  static const ScratchDir dir;
  return dir.path;
}

Result run_cli(const std::string& args) {
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(QORACLE_CLI_PATH) + " " + args + " 2>" + err.string();
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

std::string data(const std::string& name) { return std::string(QORACLE_TEST_DATA) + "/" + name; }

std::vector<double> histogram(const json& j) {
  std::vector<double> p;
  for (const auto& row : j.at("histogram")) p.push_back(row.at("probability").get<double>());
  return p;
}

TEST(Cli, EncodeFixtureReproducesLabels) {
  const Result r = run_cli("encode --input " + data("names.json") + " --method phase-tolerant");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("n"), 3);
  EXPECT_EQ(j.at("k"), 4);
  const qoracle::Circuit c = qoracle::circuit_from_json(j.at("circuit"));
  const auto labels = j.at("labels").get<std::vector<std::string>>();
  for (std::uint64_t x = 0; x < 8; ++x) {
    const auto image = qoracle::testing::basis_image(c, x);
    ASSERT_TRUE(image.has_value());
    EXPECT_EQ(*image >> 3, qoracle::label_value(labels[x])) << x;
  }
}

TEST(Cli, EncodeTwoEntriesIsCx) {
  const fs::path circuit = scratch_dir() / "two.json";
  const Result r = run_cli("encode --input " + data("two_entries.json") + " --out " + circuit.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("metrics").at("cnot"), 1);
  const qoracle::Circuit c = qoracle::import_json(slurp(circuit));
  qoracle::Circuit cx(c.registers());
  cx.cx(0, 1);
  EXPECT_LE(qoracle::deviation_up_to_global_phase(qoracle::matrix(c), qoracle::matrix(cx)), 1e-12);
}

TEST(Cli, MissingFileFails) {
  const Result r = run_cli("encode --input /definitely/not/here.json");
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("not/here.json"), std::string::npos);
}

TEST(Cli, UsageErrorsFail) {
  EXPECT_NE(run_cli("").code, 0);
  EXPECT_NE(run_cli("search --input " + data("names.json")).code, 0);
  EXPECT_NE(run_cli("search --input " + data("names.json") + " --query Eve --method nope").code, 0);
  EXPECT_NE(run_cli("search --input " + data("names.json") + " --query Eve --iterations 0").code, 0);
  EXPECT_NE(run_cli("search --input " + data("names.json") + " --query Eve --max-qubits 5").code, 0);
}

TEST(Cli, SearchEve) {
  const Result r = run_cli("search --input " + data("names.json") + " --query Eve");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("top")[0].at("index"), 4);
  EXPECT_NEAR(j.at("top")[0].at("p").get<double>(), 0.9453125, 1e-6);
  EXPECT_EQ(j.at("iterations"), 2);
  EXPECT_EQ(j.at("estimated_M"), 1);
}

TEST(Cli, SearchBobFindsTheCollision) {
  const Result r = run_cli("search --input " + data("names.json") + " --query Bob --iterations 1");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  std::set<int> top{j.at("top")[0].at("index").get<int>(), j.at("top")[1].at("index").get<int>()};
  EXPECT_EQ(top, (std::set<int>{1, 6}));
  EXPECT_NEAR(j.at("top")[0].at("p").get<double>(), j.at("top")[1].at("p").get<double>(), 1e-9);
  EXPECT_EQ(j.at("matches"), 2);
}

TEST(Cli, AbsentQueryWarns) {
  const Result r = run_cli("search --input " + data("names.json") + " --query Oscar");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("matches"), 0);
  for (double p : j.at("probabilities")) EXPECT_NEAR(p, 1.0 / 8, 1e-9);
}

TEST(Cli, NdjsonAndCsv) {
  const Result r = run_cli("search --input " + data("names.ndjson") + " --k 4 --query Eve --format csv");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("index,bitstring,probability\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 9);
}

TEST(Cli, IntegerQueryInference) {
  const Result r = run_cli("search --input " + data("ints64.json") + " --query 1017 --method phase-tolerant");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GE(json::parse(r.out).at("matches").get<int>(), 1);
  EXPECT_NE(run_cli("search --input " + data("ints64.json") + " --query abc").code, 0);
}

TEST(Cli, SimilarityFixtureRanking) {
  const Result r = run_cli("similarity --input " + data("similarity_fixture.json") + " --query item06");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto p = histogram(json::parse(r.out));
  ASSERT_EQ(p.size(), 16u);
  EXPECT_GT(p[6], p[10]);
  EXPECT_GT(p[6], p[12]);
  for (std::size_t i = 0; i < 16; ++i)
    if (i != 6 && i != 10 && i != 12) {
      EXPECT_GT(p[10], p[i]);
      EXPECT_GT(p[12], p[i]);
    }
}

TEST(Cli, DiceContrastSharpensTopHit) {
  auto top = [](const std::string& contrast) {
    const Result r = run_cli("similarity --input " + data("ints64.json") +
                             " --query 1017 --k 6 --tag dice --iterations 1 --contrast " + contrast);
    EXPECT_EQ(r.code, 0) << r.err;
    const auto p = histogram(json::parse(r.out));
    return *std::max_element(p.begin(), p.end());
  };
  EXPECT_GT(top("default"), top("none"));
  EXPECT_NE(run_cli("similarity --input " + data("ints64.json") + " --query 1017 --k 13 --tag dice").code, 0);
}

TEST(Cli, BenchIsDeterministic) {
  const fs::path a = scratch_dir() / "a.csv";
  const fs::path b = scratch_dir() / "b.csv";
  const std::string args = "bench --sizes 4 16 64 --methods phase-tolerant gray cse --trials 1 --seed 7 --out ";
  ASSERT_EQ(run_cli(args + a.string()).code, 0);
  ASSERT_EQ(run_cli(args + b.string()).code, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, BenchPhaseTolerantMatchesNLogN) {
  const Result r = run_cli("bench --sizes 4 8 16 32 64 128 256 512 1024 --methods phase-tolerant --trials 1 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& row : json::parse(r.out).at("rows")) {
    const auto n = row.at("size").get<std::uint64_t>();
    EXPECT_EQ(row.at("cnot").get<std::uint64_t>(), n * std::bit_width(n - 1));
  }
}

TEST(Cli, BenchCseTOrder) {
  const fs::path cfg = scratch_dir() / "bench.json";
  std::ofstream(cfg) << R"({"sizes":[4,8,16,32,64],"methods":["cse"],"trials":2,"seed":1})";
  const Result r = run_cli("bench --input " + cfg.string() + " --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& row : json::parse(r.out).at("summary")) EXPECT_EQ(row.at("t_order"), 2);
}

TEST(Cli, SimulateCircuit) {
  const fs::path circuit = scratch_dir() / "bell.json";
  qoracle::Circuit c({{"q", 2}});
  c.h(0);
  c.cx(0, 1);
  std::ofstream(circuit) << qoracle::export_json(c);
  const Result r = run_cli("simulate --input " + circuit.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_NEAR(j[0].at("probability").get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j[3].at("probability").get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j[3].at("bitstring"), "11");
}

}  // namespace
