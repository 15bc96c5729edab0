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

// qoracle command-line front end. Data goes to stdout (or --out), logs and
// warnings to stderr.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qoracle/qoracle.hpp"

namespace {

using namespace qoracle;

struct Options {
  std::string input;
  std::string query;
  std::string as;
  unsigned k = 0;
  std::string method = "auto";
  std::string tag;
  std::string iterations = "auto";
  std::string contrast = "default";
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  unsigned max_qubits = 0;
  std::string out;
  std::string qasm;
  // bench
  std::vector<std::size_t> sizes;
  std::vector<std::string> methods;
  std::optional<std::size_t> trials;
  unsigned threads = 0;
  bool no_verify = false;
  bool timing = false;
  // simulate
  std::uint64_t initial = 0;
  std::string reg;
};

void log(const std::string& msg) { std::cerr << "qoracle: " << msg << '\n'; }

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + o.out + "'");
  f << text;
  log("wrote " + o.out);
}

unsigned qubit_cap(const Options& o) { return o.max_qubits ? o.max_qubits : default_max_qubits(); }

Entry parse_query(const Database& db, const Options& o) {
  std::string as = o.as;
  if (as.empty()) as = db.all_integers() ? "int" : "string";
  if (as == "string") return o.query;
  if (as == "int") {
    std::int64_t v = 0;
    const char* end = o.query.data() + o.query.size();
    auto [ptr, ec] = std::from_chars(o.query.data(), end, v);
    if (ec != std::errc{} || ptr != end)
      throw std::invalid_argument("query '" + o.query + "' is not a 64-bit integer");
    return v;
  }
  throw std::invalid_argument("--as must be 'string' or 'int'");
}

std::optional<std::size_t> parse_iterations(const std::string& s) {
  if (s == "auto") return std::nullopt;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1)
    throw std::invalid_argument("--iterations must be 'auto' or a positive integer");
  return v;
}

std::function<double(double)> parse_contrast(const std::string& s) {
  if (s == "default") return default_contrast;
  if (s == "none") return {};
  throw std::invalid_argument("--contrast must be 'default' or 'none'");
}

nlohmann::json metrics_json(const GateMetrics& m) {
  nlohmann::json tm = nlohmann::json::object();
  for (const auto& [order, count] : m.tm_histogram) tm["T" + std::to_string(order)] = count;
  return {{"cnot", m.cnot_count}, {"u", m.u_count},         {"tm", m.tm_total()},
          {"tm_histogram", tm},   {"t_order", m.t_order},   {"qubits", m.qubit_count}};
}

int cmd_encode(const Options& o) {
  const Database db = load_database(o.input);
  const EncodedDatabase enc = encode_database(db, o.k, method_from_name(o.method));
  log("encoded " + std::to_string(db.size()) + " entries with " +
      std::string(method_name(enc.method)));
  nlohmann::json labels = nlohmann::json::array();
  for (std::uint64_t l : enc.labels) labels.push_back(label_text(l, enc.k));
  nlohmann::json stats = {{"entries", enc.entries},
                          {"rows", enc.rows()},
                          {"n", enc.n},
                          {"k", enc.k},
                          {"method", method_name(enc.method)},
                          {"ancillas", enc.ancillas},
                          {"labels", labels},
                          {"metrics", metrics_json(metrics(lower(enc.u_d)))}};
  if (!o.qasm.empty()) {
    std::ofstream f(o.qasm, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + o.qasm + "'");
    f << export_qasm2(lower(enc.u_d));
  }
  if (o.out.empty()) {
    stats["circuit"] = circuit_to_json(enc.u_d);
    std::cout << stats.dump(2) << '\n';
  } else {
    emit(o, export_json(enc.u_d));
    std::cout << stats.dump(2) << '\n';
  }
  return 0;
}

struct SearchRun {
  EncodedDatabase enc;
  std::uint64_t query_label = 0;
  GroverProgram program;
  std::vector<double> p;
};

SearchRun run_search(const Options& o, TagKind kind) {
  const Database db = load_database(o.input);
  if (o.query.empty()) throw std::invalid_argument("--query is required");
  const Entry q = parse_query(db, o);
  SearchRun r{encode_database(db, o.k, method_from_name(o.method)), 0, {}, {}};
  r.query_label = query_label(db, q, r.enc.k);
  if (auto w = padding_warning(r.enc, r.query_label)) log("warning: " + *w);
  if (kind == TagKind::exact && count_matches(r.enc, r.query_label) == 0)
    log("warning: no entry carries the query label " + label_text(r.query_label, r.enc.k) +
        "; the distribution stays near uniform");
  Tag tag{kind, r.query_label, {}};
  if (kind == TagKind::advanced) tag.measure = dice_measure(r.query_label, parse_contrast(o.contrast));
  r.program = build_grover(r.enc, tag, parse_iterations(o.iterations));
  const unsigned cap = qubit_cap(o);
  if (r.program.circuit.num_qubits() > cap)
    throw resource_error("program needs " + std::to_string(r.program.circuit.num_qubits()) +
                         " qubits, the cap is " + std::to_string(cap));
  log(std::to_string(r.program.iterations) + " Grover iteration(s) on " +
      std::to_string(r.program.circuit.num_qubits()) + " qubits");
  r.p = grover_distribution(r.program, cap);
  return r;
}

int cmd_search(const Options& o) {
  const SearchRun r = run_search(o, tag_kind_from_name(o.tag.empty() ? "exact" : o.tag));
  if (o.format == "csv") {
    emit(o, distribution_csv(r.p, r.enc.n));
    return 0;
  }
  if (o.format != "json") throw std::invalid_argument("search supports --format json or csv");
  nlohmann::json j = grover_report(r.program, r.p);
  j["query_label"] = label_text(r.query_label, r.enc.k);
  j["matches"] = count_matches(r.enc, r.query_label);
  j["method"] = method_name(r.enc.method);
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_similarity(const Options& o) {
  const TagKind kind = tag_kind_from_name(o.tag.empty() ? "hamming" : o.tag);
  if (kind == TagKind::exact) throw std::invalid_argument("similarity needs --tag hamming or dice");
  const SearchRun r = run_search(o, kind);
  if (o.format == "csv") {
    emit(o, distribution_csv(r.p, r.enc.n));
    return 0;
  }
  if (o.format != "json") throw std::invalid_argument("similarity supports --format json or csv");
  nlohmann::json j = {{"query_label", label_text(r.query_label, r.enc.k)},
                      {"tag", kind == TagKind::hamming ? "hamming" : "dice"},
                      {"contrast", kind == TagKind::advanced ? o.contrast : "none"},
                      {"iterations", r.program.iterations},
                      {"estimated_M", r.program.estimated_m},
                      {"histogram", distribution_json(r.p, r.enc.n)}};
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_bench(const Options& o) {
  BenchmarkConfig c;
  if (!o.input.empty()) {
    std::ifstream f(o.input);
    if (!f) throw std::runtime_error("cannot open '" + o.input + "'");
    c = benchmark_config_from_json(nlohmann::json::parse(f));
  }
  if (!o.sizes.empty()) c.sizes = o.sizes;
  if (!o.methods.empty()) {
    c.methods.clear();
    for (const auto& m : o.methods) c.methods.push_back(method_from_name(m));
  }
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.seed = *o.seed;
  if (o.threads) c.threads = o.threads;
  if (o.no_verify) c.verify = false;
  if (o.timing) c.timing = true;
  Options out = o;
  if (out.out.empty()) out.out = c.out;
  log("running " + std::to_string(c.sizes.size() * c.methods.size() * c.trials) + " trial(s)");
  const auto rows = run_suite(c);
  emit(out, emit_report(rows, report_format_from_name(o.format)));
  return 0;
}

int cmd_simulate(const Options& o) {
  std::ifstream f(o.input, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + o.input + "'");
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  const Circuit c = import_json(text);
  const StateVector s = run(c, o.initial, qubit_cap(o));
  std::vector<double> p;
  unsigned bits = c.num_qubits();
  if (o.reg.empty()) {
    for (const auto& a : s.amplitudes()) p.push_back(std::norm(a));
  } else {
    p = measure_distribution(s, o.reg);
    bits = c.reg(o.reg).size;
  }
  if (o.format == "csv")
    emit(o, distribution_csv(p, bits));
  else if (o.format == "json")
    emit(o, distribution_json(p, bits).dump(2) + "\n");
  else
    throw std::invalid_argument("simulate supports --format json or csv");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum database oracles: encode, search and benchmark"};
  app.require_subcommand(1);
  Options o;

  auto add_db = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "Database file (JSON array, fixture or NDJSON)")->required();
    sub->add_option("--k", o.k, "Label size in bits (default: log2 of the row count)");
    sub->add_option("--method", o.method, "pprm, pprm-pt, gray, phase-tolerant, phase-tolerant-htsp, cse or auto");
    sub->add_option("--out", o.out, "Write the result here instead of stdout");
    sub->add_option("--format", o.format, "Output format");
  };
  auto add_query = [&](CLI::App* sub) {
    add_db(sub);
    sub->add_option("--query", o.query, "Item to search for")->required();
    sub->add_option("--as", o.as, "Query type: string or int (default: inferred)");
    sub->add_option("--tag", o.tag, "exact, hamming or dice");
    sub->add_option("--iterations", o.iterations, "Grover iterations: N or auto");
    sub->add_option("--contrast", o.contrast, "Contrast for dice: default or none");
    sub->add_option("--max-qubits", o.max_qubits, "Simulator qubit cap (env QORACLE_MAX_QUBITS)");
    sub->add_option("--seed", o.seed, "Unused by search; accepted for uniformity");
  };

  auto* encode = app.add_subcommand("encode", "Synthesize the database circuit U_D");
  add_db(encode);
  encode->add_option("--qasm", o.qasm, "Also write the lowered circuit as OpenQASM 2");
  auto* search = app.add_subcommand("search", "Exact-match Grover search");
  add_query(search);
  auto* similarity = app.add_subcommand("similarity", "Similarity search histogram");
  add_query(similarity);

  auto* bench = app.add_subcommand("bench", "Gate-count benchmark on random databases");
  bench->add_option("--input", o.input, "JSON config {sizes, methods, trials, seed, out}");
  bench->add_option("--sizes", o.sizes, "Database sizes (powers of two, 4..1024)");
  bench->add_option("--methods", o.methods, "Synthesis methods");
  bench->add_option("--trials", o.trials, "Trials per size and method");
  bench->add_option("--seed", o.seed, "Base seed");
  bench->add_option("--threads", o.threads, "Worker threads (default: all cores)");
  bench->add_flag("--no-verify", o.no_verify, "Skip simulator checks for N <= 64");
  bench->add_flag("--timing", o.timing, "Record synthesis wall time");
  bench->add_option("--format", o.format, "csv, json or markdown");
  bench->add_option("--out", o.out, "Report path");

  auto* simulate = app.add_subcommand("simulate", "Simulate a circuit JSON file");
  simulate->add_option("--input", o.input, "Circuit JSON")->required();
  simulate->add_option("--initial", o.initial, "Initial basis state");
  simulate->add_option("--register", o.reg, "Marginalize onto this register");
  simulate->add_option("--format", o.format, "json or csv");
  simulate->add_option("--max-qubits", o.max_qubits, "Simulator qubit cap");
  simulate->add_option("--out", o.out, "Write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*encode) return cmd_encode(o);
    if (*search) return cmd_search(o);
    if (*similarity) return cmd_similarity(o);
    if (*bench) {
      if (bench->count("--format") == 0) o.format = "csv";
      return cmd_bench(o);
    }
    if (*simulate) return cmd_simulate(o);
  } catch (const std::exception& e) {
    log(std::string("error: ") + e.what());
    return 1;
  }
  return 1;
}
