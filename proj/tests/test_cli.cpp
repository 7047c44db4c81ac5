// Copyright 2026 The sbcast Authors
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

#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sbcast/cli.hpp"
#include "sbcast/fit.hpp"
#include "sbcast/schedule_io.hpp"

using namespace sbcast;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sbcast");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("sbcast_test_" + name);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  return rows;
}

}  // namespace

TEST_CASE("compile emits schedule JSON", "[cli]") {
  const Run r = run({"compile", "2,13", "--scheme", "compiled"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["n_qubits"] == 2);
  CHECK(j["events"].size() == 3);
  CHECK(j["events"][0]["pulse"] == "Y90");
  CHECK(j["events"][0]["mask"] == json::array({1, 1}));
  CHECK(j["timing"]["pulse_ns"] == 16);

  const json five = json::parse(run({"compile", "1", "--scheme", "five-primitives"}).out);
  CHECK(five["n_slots"] == 5);
  CHECK(five["events"].empty());

  const json seq = json::parse(run({"compile", "4", "--scheme", "sequential"}).out);
  REQUIRE(seq["events"].size() == 1);
  CHECK(seq["events"][0]["pulse"] == "X180");
  CHECK(seq["events"][0]["mask"] == json::array({1}));
}

TEST_CASE("schedule JSON round trip", "[cli]") {
  const Run r = run({"compile", "5,18,1,7", "--scheme", "five-primitives-symmetric", "--round", "1"});
  REQUIRE(r.code == kExitOk);
  const Schedule s = schedule_from_json(json::parse(r.out));
  CHECK(s.scheme == Scheme::FivePrimitivesSymmetric);
  CHECK(validate_schedule(s, parse_combo("5,18,1,7")));
  CHECK(schedule_to_json(s).dump(2) + "\n" == r.out);

  json extra = json::parse(r.out);
  extra["colour"] = "red";
  CHECK_THROWS_AS(schedule_from_json(extra), std::invalid_argument);
  json narrow = json::parse(r.out);
  narrow["events"][0]["mask"] = json::array({1});
  CHECK_THROWS_AS(schedule_from_json(narrow), std::invalid_argument);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"compile", "2,99"}).code == kExitUsage);
  CHECK(run({"compile", "2", "--scheme", "bogus"}).code == kExitUsage);
  const Run big = run({"stats", "--n", "6", "--exact"});
  CHECK(big.code == kExitUsage);
  CHECK(big.err.find("24^6") != std::string::npos);
  CHECK(run({"stats", "--n", "5", "--exact"}).code == kExitUsage);
  CHECK(run({"rb", temp_path("missing.json").string()}).code == kExitValidation);
}

TEST_CASE("stats", "[cli]") {
  const json one = json::parse(run({"stats", "--n", "1", "--exact"}).out);
  CHECK(one["mean_np"] == 1.875);
  CHECK(one["mode"] == "exact");
  CHECK(one.contains("runtime_s"));
  const json two = json::parse(run({"stats", "--n", "2", "--exact"}).out);
  CHECK(two["mean_np"].get<double>() == Catch::Approx(2.925).margin(5e-4));
  const Run csv = run({"stats", "--n", "3", "--samples", "500", "--seed", "7", "--format", "csv"});
  REQUIRE(csv.code == kExitOk);
  CHECK(data_rows(csv.out).size() == 2);
  CHECK(csv.out.find('\r') == std::string::npos);
}

TEST_CASE("rb config handling", "[cli]") {
  const fs::path cfg = temp_path("noiseless.json");
  write_file(cfg, R"({"qubits":[{"t1_ns":"inf"},{"t1_ns":"inf"}],"scheme":"compiled",
                      "m_values":[1,2,5,10,20],"n_seeds":3,"rng_seed":4})");
  const Run r = run({"rb", cfg.string(), "--csv", temp_path("noiseless.csv").string()});
  REQUIRE(r.code == kExitOk);
  const auto rows = data_rows(read_file(temp_path("noiseless.csv")));
  REQUIRE(rows.size() == 1 + 5 * 2);
  CHECK(rows[0] == "m,qubit,p0,p1");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].substr(rows[i].find(',', rows[i].find(',') + 1) + 1, 2) == "1,");
  }
  const json summary = json::parse(r.out);
  CHECK(summary["qubits"].size() == 2);

  const fs::path bad = temp_path("bad.json");
  for (const char* text :
       {R"({"qubits":[{"t1":1}]})", R"({"qubits":[]})", R"({"qubits":[{}],"scheme":"x"})",
        R"({"qubits":[{}],"m_values":[3,2]})", R"({"qubits":[{}],"idle_qubit":0})",
        R"({"qubits":[{"t1_ns":-5}]})", R"({"qubits":[{}],"extra":1})", "not json"}) {
    write_file(bad, text);
    INFO(text);
    const Run b = run({"rb", bad.string()});
    CHECK(b.code == kExitValidation);
    CHECK_FALSE(b.err.empty());
  }
}

TEST_CASE("rb output is byte-identical across runs", "[cli]") {
  const fs::path cfg = temp_path("t1.json");
  write_file(cfg, R"({"qubits":[{"t1_ns":10000}],"scheme":"sequential","m_max":200,
                      "m_points":12,"n_seeds":8,"rng_seed":9,"threads":2})");
  const fs::path a = temp_path("a.csv"), b = temp_path("b.csv");
  const fs::path sa = temp_path("a.json"), sb = temp_path("b.json");
  REQUIRE(run({"rb", cfg.string(), "--csv", a.string(), "--summary", sa.string()}).code == kExitOk);
  REQUIRE(run({"rb", cfg.string(), "--csv", b.string(), "--summary", sb.string(), "--threads", "1"})
              .code == kExitOk);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(sa) == read_file(sb));
  const json s = json::parse(read_file(sa));
  CHECK(s["qubits"][0].contains("t1_limit_fidelity"));
  CHECK(s["qubits"][0].contains("difference_sigma"));
}

TEST_CASE("allxy, calib and swap tables", "[cli]") {
  const Run a = run({"allxy"});
  REQUIRE(a.code == kExitOk);
  const auto rows = data_rows(a.out);
  REQUIRE(rows.size() == 22);
  CHECK(rows[0] == "id,first,second,ideal_p1,p1");
  CHECK(rows[1] == "1,I,I,0,0");
  CHECK(rows[21].substr(0, 3) == "21,");

  const Run c = run({"calib", "--over", "1.01"});
  REQUIRE(c.code == kExitOk);
  const auto slope_at = c.out.find("initial_slope=");
  REQUIRE(slope_at != std::string::npos);
  CHECK(std::stod(c.out.substr(slope_at + 14)) > 0);
  CHECK(data_rows(c.out).size() == 51);

  const Run s = run({"swap", "--t1-a-ns", "8000", "--t1-b-ns", "12000", "--points", "41"});
  REQUIRE(s.code == kExitOk);
  const auto tau_at = s.out.find("total_tau_ns=");
  REQUIRE(tau_at != std::string::npos);
  const double tau = std::stod(s.out.substr(tau_at + 13));
  CHECK(tau > 8000);
  CHECK(tau < 12000);
  CHECK(run({"swap", "--t1-a-ns", "abc"}).code == kExitUsage);
}

TEST_CASE("leakfit recovers synthetic parameters", "[cli]") {
  const double tp = 20.0, np = 1.875, kappa = 4.1e-6 / (tp * np), t21 = 12000.0;
  std::string csv = "# synthetic\nm,p2\n";
  for (int m = 0; m <= 2000; m += 50) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d,%.17g\n", m, leakage_model(m, kappa, t21, np, tp));
    csv += buf;
  }
  const fs::path data = temp_path("leak.csv");
  write_file(data, csv);
  const Run r = run({"leakfit", data.string(), "--np", "1.875", "--tp-ns", "20"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["kappa_per_ns"].get<double>() == Catch::Approx(kappa).epsilon(1e-3));
  CHECK(j["t21_ns"].get<double>() == Catch::Approx(t21).epsilon(1e-3));

  write_file(data, "m,q\n1,2\n");
  CHECK(run({"leakfit", data.string()}).code == kExitValidation);
}
