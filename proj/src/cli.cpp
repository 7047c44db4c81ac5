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

#include "sbcast/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbcast/compiler.hpp"
#include "sbcast/fit.hpp"
#include "sbcast/schedule_io.hpp"
#include "sbcast/sim.hpp"

namespace sbcast {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// JSON has no inf/nan; such values are written as null.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw ValidationError("cannot open output file '" + path + "'");
    os_ = &file_;
  }
  ~Sink() {
    if (file_.is_open()) file_.close();
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string join(const std::vector<std::string>& cols) {
  std::string s;
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
  return s;
}

void csv_header(std::ostream& os, const std::string& kind,
                const std::vector<std::string>& cols, const std::string& extra = "") {
  os << "# sbcast " << kind << " v1: " << join(cols);
  if (!extra.empty()) os << "; " << extra;
  os << "\n" << join(cols) << "\n";
}

void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  os << join(cells) << "\n";
}

double parse_time_text(const std::string& text, const std::string& what) {
  if (text == "inf") return kInfiniteT1;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + " must be a number or 'inf', got '" + text + "'");
  }
}

FourPulsePass parse_pass(const std::string& s) {
  return s == "per-qubit" ? FourPulsePass::PerQubit : FourPulsePass::Complete;
}

// ---------------------------------------------------------------------------
// Config helpers

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + "." + key + " has the wrong type");
  }
}

double time_field(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_string() && v.get<std::string>() == "inf") return kInfiniteT1;
  if (!v.is_number()) throw ValidationError(where + "." + key + " must be a number or \"inf\"");
  return v.get<double>();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

struct RbConfig {
  std::vector<QubitModel> qubits;
  RbOptions options;
  std::string csv_path;
  std::string summary_path;
};

RbConfig parse_rb_config(const json& j) {
  only_keys(j,
            {"qubits", "scheme", "m_values", "m_max", "m_points", "n_seeds", "rng_seed",
             "idle_qubit", "threads", "output"},
            "config");
  RbConfig c;
  if (!j.contains("qubits") || !j.at("qubits").is_array() || j.at("qubits").empty()) {
    throw ValidationError("config.qubits must be a non-empty array");
  }
  std::size_t index = 0;
  for (const json& q : j.at("qubits")) {
    const std::string where = "qubits[" + std::to_string(index++) + "]";
    only_keys(q, {"t1_ns", "slot_ns", "cross_ratio", "over_ratio"}, where);
    QubitModel m;
    m.t1_ns = time_field(q, "t1_ns", m.t1_ns, where);
    m.slot_ns = time_field(q, "slot_ns", m.slot_ns, where);
    m.cross_ratio = get_or(q, "cross_ratio", m.cross_ratio, where);
    m.over_ratio = get_or(q, "over_ratio", m.over_ratio, where);
    try {
      validate_model(m);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(where + ": " + e.what());
    }
    c.qubits.push_back(m);
  }

  const auto scheme_text = get_or<std::string>(j, "scheme", "sequential", "config");
  const auto scheme = parse_scheme(scheme_text);
  if (!scheme) throw ValidationError("config.scheme '" + scheme_text + "' is not a scheme");
  c.options.scheme = *scheme;

  if (j.contains("m_values")) {
    if (j.contains("m_max") || j.contains("m_points")) {
      throw ValidationError("config: give either m_values or m_max/m_points, not both");
    }
    c.options.m_values = get_or<std::vector<int>>(j, "m_values", {}, "config");
  } else {
    const int m_max = get_or(j, "m_max", 800, "config");
    const int m_points = get_or(j, "m_points", 30, "config");
    if (m_max < 1 || m_points < 2) {
      throw ValidationError("config: need m_max >= 1 and m_points >= 2");
    }
    c.options.m_values = log_spaced_lengths(m_max, m_points);
  }
  int last = 0;
  for (int m : c.options.m_values) {
    if (m <= last) throw ValidationError("config.m_values must be positive and increasing");
    last = m;
  }
  if (c.options.m_values.empty()) throw ValidationError("config.m_values is empty");

  c.options.n_seeds = get_or(j, "n_seeds", 50, "config");
  if (c.options.n_seeds < 1) throw ValidationError("config.n_seeds must be >= 1");
  c.options.seed = get_or<std::uint64_t>(j, "rng_seed", 1, "config");
  c.options.threads = get_or<unsigned>(j, "threads", 0, "config");
  if (j.contains("idle_qubit") && !j.at("idle_qubit").is_null()) {
    const auto idle = get_or<std::size_t>(j, "idle_qubit", 0, "config");
    if (idle >= c.qubits.size()) throw ValidationError("config.idle_qubit out of range");
    if (c.qubits.size() < 2) throw ValidationError("config.idle_qubit needs >= 2 qubits");
    c.options.idle_qubit = idle;
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    only_keys(o, {"csv", "summary"}, "output");
    c.csv_path = get_or<std::string>(o, "csv", "", "output");
    c.summary_path = get_or<std::string>(o, "summary", "", "output");
  }
  return c;
}

// ---------------------------------------------------------------------------
// Subcommands

struct CompileArgs {
  std::string combo;
  std::string scheme = "compiled";
  int round = 0;
  std::string pass = "complete";
  std::string output;
};

int cmd_compile(const CompileArgs& a, std::ostream& out) {
  CliffordCombo combo;
  try {
    combo = parse_combo(a.combo);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Scheme scheme = *parse_scheme(a.scheme);
  Schedule s;
  if (scheme == Scheme::Compiled) {
    OptimalCompiler compiler({parse_pass(a.pass)});
    s = compiler.compile(combo);
  } else {
    s = compile_round(combo, scheme, a.round);
  }
  if (!validate_schedule(s, combo)) throw NumericalError("schedule failed re-validation");
  Sink sink(a.output, out);
  *sink << schedule_to_json(s).dump(2) << "\n";
  return kExitOk;
}

struct StatsArgs {
  int n = 1;
  bool exact = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  bool long_run = false;
  unsigned threads = 0;
  std::string pass = "per-qubit";
  std::string format = "json";
  std::string output;
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  if (a.exact == (a.samples > 0)) {
    throw UsageError("choose exactly one of --exact or --samples");
  }
  if (a.n < 1) throw UsageError("--n must be >= 1");
  if (a.exact && a.n > 5) {
    throw UsageError("exact census would enumerate 24^" + std::to_string(a.n) +
                     " combos; limited to n <= 5 (use --samples)");
  }
  if (a.exact && a.n == 5 && !a.long_run) {
    throw UsageError("exact census at n = 5 is a long run; pass --long");
  }
  if (!a.exact && a.samples < 100) throw UsageError("--samples must be >= 100");

  CensusOptions opts;
  opts.four_pulse_pass = parse_pass(a.pass);
  opts.threads = a.threads;
  const auto t0 = std::chrono::steady_clock::now();
  const NpStats st = a.exact ? mean_np_exact(a.n, opts)
                             : mean_np_sampled(a.n, a.samples, a.seed, opts);
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Sink sink(a.output, out);
  const char* mode = st.mode == NpMode::Exact ? "exact" : "sampled";
  if (a.format == "csv") {
    csv_header(*sink, "stats",
               {"n", "mode", "mean_np", "std_error", "samples", "four_pulse_pass", "runtime_s"});
    csv_row(*sink, {std::to_string(st.n), mode, num(st.mean_np), num(st.std_error),
                    std::to_string(st.samples), a.pass, num(runtime)});
  } else {
    json j;
    j["n"] = st.n;
    j["mode"] = mode;
    j["mean_np"] = st.mean_np;
    j["std_error"] = st.std_error;
    j["samples"] = st.samples;
    j["total_cost"] = st.total_cost;
    j["four_pulse_pass"] = a.pass;
    if (!a.exact) j["seed"] = a.seed;
    j["runtime_s"] = runtime;
    *sink << j.dump(2) << "\n";
  }
  return kExitOk;
}

struct RbArgs {
  std::string config;
  std::string csv;
  std::string summary;
  int threads = -1;
};

int cmd_rb(const RbArgs& a, std::ostream& out) {
  RbConfig c = parse_rb_config(read_json_file(a.config));
  if (!a.csv.empty()) c.csv_path = a.csv;
  if (!a.summary.empty()) c.summary_path = a.summary;
  if (a.threads >= 0) c.options.threads = static_cast<unsigned>(a.threads);

  const RbResult r = run_rb(c.qubits, c.options);
  {
    Sink sink(c.csv_path, out);
    csv_header(*sink, "rb", {"m", "qubit", "p0", "p1"},
               "scheme=" + std::string(scheme_name(c.options.scheme)));
    for (std::size_t i = 0; i < c.options.m_values.size(); ++i) {
      for (std::size_t q = 0; q < r.curves.size(); ++q) {
        csv_row(*sink, {std::to_string(c.options.m_values[i]), std::to_string(q),
                        num(r.curves[q].p0[i]), num(r.curves[q].p1[i])});
      }
    }
  }

  json summary;
  summary["scheme"] = std::string(scheme_name(c.options.scheme));
  summary["n_seeds"] = c.options.n_seeds;
  summary["rng_seed"] = c.options.seed;
  summary["mean_round_slots"] = r.mean_round_slots;
  json qubits = json::array();
  bool fit_failed = false;
  const std::vector<double> m(c.options.m_values.begin(), c.options.m_values.end());
  for (std::size_t q = 0; q < r.curves.size(); ++q) {
    const RbCurve& curve = r.curves[q];
    json jq;
    jq["qubit"] = q;
    if (c.options.idle_qubit == q) {
      jq["role"] = "idle";
      double peak = 0;
      for (double v : curve.p1) peak = std::max(peak, v);
      jq["max_p1"] = peak;
      jq["final_p1"] = curve.p1.back();
      qubits.push_back(jq);
      continue;
    }
    jq["role"] = "driven";
    if (m.size() < 4) {
      jq["fit"] = nullptr;
      qubits.push_back(jq);
      continue;
    }
    const ExpFit f = fit_exp_offset(m, curve.p0);
    fit_failed = fit_failed || !f.converged;
    const Estimate fc = curve.seed_p0.size() >= 2 ? jackknife_fidelity(m, curve.seed_p0)
                                                  : fidelity_from_fit(f);
    const QubitModel& model = c.qubits[q];
    const double limit = std::isinf(model.t1_ns)
                             ? 1.0
                             : t1_limit_fidelity(model.t1_ns, model.slot_ns,
                                                 r.mean_round_slots);
    jq["fit"] = {{"amplitude", f.amplitude},
                 {"decay", f.decay},
                 {"offset", f.offset},
                 {"converged", f.converged}};
    jq["fidelity"] = fc.value;
    jq["fidelity_stderr"] = fc.error;
    jq["t1_limit_fidelity"] = limit;
    jq["difference_sigma"] = fc.error > 0 ? jnum((fc.value - limit) / fc.error) : json(nullptr);
    qubits.push_back(jq);
  }
  summary["qubits"] = qubits;
  Sink sink(c.summary_path, out);
  *sink << summary.dump(2) << "\n";
  if (fit_failed) throw NumericalError("RB fit did not converge");
  return kExitOk;
}

struct AllxyArgs {
  double amplitude = 1.0;
  double phase = 0.0;
  std::string output;
};

int cmd_allxy(const AllxyArgs& a, std::ostream& out) {
  const auto p1 = simulate_allxy({a.amplitude, a.phase});
  Sink sink(a.output, out);
  csv_header(*sink, "allxy", {"id", "first", "second", "ideal_p1", "p1"},
             "amplitude_scale=" + num(a.amplitude) + " phase_error=" + num(a.phase));
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const auto& [first, second] = allxy_pairs()[i];
    csv_row(*sink, {std::to_string(i + 1), std::string(pulse_name(first)),
                    std::string(pulse_name(second)), num(allxy_ideal()[i]), num(p1[i])});
  }
  return kExitOk;
}

struct CalibArgs {
  double over = 1.0;
  int n_max = 49;
  std::string output;
};

int cmd_calib(const CalibArgs& a, std::ostream& out) {
  if (!(a.over > 0)) throw UsageError("--over must be > 0");
  if (a.n_max < 1) throw UsageError("--n-max must be >= 1");
  const auto curve = simulate_amp_calibration(a.over, a.n_max);
  Sink sink(a.output, out);
  csv_header(*sink, "calib", {"n", "p1"},
             "over_ratio=" + num(a.over) + " initial_slope=" + num(initial_slope(curve)));
  for (std::size_t n = 0; n < curve.size(); ++n) {
    csv_row(*sink, {std::to_string(n), num(curve[n])});
  }
  return kExitOk;
}

struct SwapArgs {
  double j_khz = 36.0;
  std::string t1_a = "inf";
  std::string t1_b = "inf";
  double t_max_ns = 40000.0;
  int points = 401;
  double max_step_ns = 1.0;
  std::string output;
};

int cmd_swap(const SwapArgs& a, std::ostream& out) {
  if (a.points < 2) throw UsageError("--points must be >= 2");
  if (!(a.t_max_ns > 0)) throw UsageError("--t-max-ns must be > 0");
  ExchangeParams p;
  p.j_over_2pi_khz = a.j_khz;
  p.t1_a_us = parse_time_text(a.t1_a, "--t1-a-ns") * 1e-3;
  p.t1_b_us = parse_time_text(a.t1_b, "--t1-b-ns") * 1e-3;
  std::vector<double> grid(static_cast<std::size_t>(a.points));
  for (int i = 0; i < a.points; ++i) {
    grid[static_cast<std::size_t>(i)] = a.t_max_ns * 1e-3 * i / (a.points - 1);
  }
  SwapTrace tr;
  try {
    tr = exchange_swap(p, grid, a.max_step_ns);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<double> total(tr.t_us.size());
  for (std::size_t i = 0; i < total.size(); ++i) total[i] = tr.p1_a[i] + tr.p1_b[i];

  std::string extra = "j_khz=" + num(a.j_khz) + " period_ns=" +
                      num(std::acos(-1.0) / exchange_rate(p) * 1e3);
  if (std::isfinite(p.t1_a_us) || std::isfinite(p.t1_b_us)) {
    const ExpFit f = fit_exp_offset(tr.t_us, total);
    if (!f.converged) throw NumericalError("total-excitation fit did not converge");
    extra += " total_tau_ns=" + num(-1e3 / std::log(f.decay));
  }
  Sink sink(a.output, out);
  csv_header(*sink, "swap", {"t_ns", "p1_a", "p1_b", "total"}, extra);
  for (std::size_t i = 0; i < tr.t_us.size(); ++i) {
    csv_row(*sink, {num(tr.t_us[i] * 1e3), num(tr.p1_a[i]), num(tr.p1_b[i]), num(total[i])});
  }
  return kExitOk;
}

struct LeakfitArgs {
  std::string data;
  double np_mean = 1.875;
  double tp_ns = 20.0;
  std::string output;
};

void read_leak_csv(std::istream& in, std::vector<double>& m, std::vector<double>& p2) {
  std::string line;
  int col_m = -1, col_p2 = -1;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (col_m < 0) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "m") col_m = static_cast<int>(i);
        if (cells[i] == "p2") col_p2 = static_cast<int>(i);
      }
      if (col_m < 0 || col_p2 < 0) throw ValidationError("data header must name columns m and p2");
      continue;
    }
    const auto need = static_cast<std::size_t>(std::max(col_m, col_p2));
    if (cells.size() <= need) {
      throw ValidationError("data line " + std::to_string(line_no) + " is short");
    }
    try {
      m.push_back(std::stod(cells[static_cast<std::size_t>(col_m)]));
      p2.push_back(std::stod(cells[static_cast<std::size_t>(col_p2)]));
    } catch (const std::exception&) {
      throw ValidationError("data line " + std::to_string(line_no) + " is not numeric");
    }
  }
  if (col_m < 0) throw ValidationError("data has no header row");
}

int cmd_leakfit(const LeakfitArgs& a, std::ostream& out) {
  std::vector<double> m, p2;
  if (a.data == "-") {
    read_leak_csv(std::cin, m, p2);
  } else {
    std::ifstream in(a.data, std::ios::binary);
    if (!in) throw ValidationError("cannot read data '" + a.data + "'");
    read_leak_csv(in, m, p2);
  }
  LeakageFit f;
  try {
    f = fit_leakage(m, p2, a.np_mean, a.tp_ns);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  json j;
  j["kappa_per_ns"] = f.kappa;
  j["kappa_per_clifford"] = f.kappa_per_clifford;
  j["t21_ns"] = jnum(f.t21);
  j["t21_identifiable"] = f.t21_identifiable;
  j["np_mean"] = f.np_mean;
  j["tp_ns"] = f.tp;
  j["rms_residual"] = f.rms_residual;
  j["converged"] = f.converged;
  Sink sink(a.output, out);
  *sink << j.dump(2) << "\n";
  if (!f.converged) throw NumericalError("leakage fit did not converge");
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Selective-broadcast pulse compiler and RB simulator.\n"
      "Times are in ns, exchange frequencies in kHz."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sbcast 0.1.0");

  const std::vector<std::string> schemes = {"sequential", "minimal-set", "five-primitives",
                                            "five-primitives-symmetric", "compiled"};
  const std::vector<std::string> passes = {"complete", "per-qubit"};

  CompileArgs compile_args;
  auto* compile = app.add_subcommand("compile", "Compile one Clifford round to schedule JSON");
  compile->add_option("combo", compile_args.combo, "Clifford ids 1..24, one per qubit: 2,13")
      ->required();
  compile->add_option("--scheme", compile_args.scheme, "Broadcast scheme")
      ->check(CLI::IsMember(schemes))
      ->capture_default_str();
  compile->add_option("--round", compile_args.round,
                      "Round index; odd rounds use the inverted primitives")
      ->check(CLI::NonNegativeNumber);
  compile->add_option("--four-pulse-pass", compile_args.pass, "Four-pulse pass semantics")
      ->check(CLI::IsMember(passes))
      ->capture_default_str();
  compile->add_option("-o,--output", compile_args.output, "Write to file instead of stdout");

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Average pulses per round over random combos");
  stats->add_option("--n", stats_args.n, "Number of qubits")->required();
  stats->add_flag("--exact", stats_args.exact, "Enumerate all 24^n combos (n <= 5)");
  stats->add_option("--samples", stats_args.samples, "Sample this many uniform combos");
  stats->add_option("--seed", stats_args.seed, "Sampling seed")->capture_default_str();
  stats->add_flag("--long", stats_args.long_run, "Allow the n = 5 exact census");
  stats->add_option("--threads", stats_args.threads, "Worker threads, 0 = all cores");
  stats->add_option("--four-pulse-pass", stats_args.pass, "Four-pulse pass semantics")
      ->check(CLI::IsMember(passes))
      ->capture_default_str();
  stats->add_option("--format", stats_args.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  stats->add_option("-o,--output", stats_args.output, "Write to file instead of stdout");

  RbArgs rb_args;
  auto* rb = app.add_subcommand("rb", "Simulate randomized benchmarking from a JSON config");
  rb->add_option("config", rb_args.config, "Config file")->required();
  rb->add_option("--csv", rb_args.csv, "CSV output path (overrides config)");
  rb->add_option("--summary", rb_args.summary, "Summary JSON path (overrides config)");
  rb->add_option("--threads", rb_args.threads, "Worker threads, 0 = all cores");
  rb->footer(
      "Config keys: qubits [{t1_ns (number or \"inf\"), slot_ns, cross_ratio, over_ratio}],\n"
      "scheme, m_values | m_max + m_points, n_seeds, rng_seed, idle_qubit, threads,\n"
      "output {csv, summary}. Unknown keys are rejected. Times are in ns.");

  AllxyArgs allxy_args;
  auto* allxy = app.add_subcommand("allxy", "Noiseless AllXY populations");
  allxy->add_option("--amplitude-scale", allxy_args.amplitude, "Angle multiplier");
  allxy->add_option("--phase-error", allxy_args.phase, "Axis tilt in rad");
  allxy->add_option("-o,--output", allxy_args.output, "Write to file instead of stdout");

  CalibArgs calib_args;
  auto* calib = app.add_subcommand("calib", "Amplitude calibration curve X90 (X180)^2N");
  calib->add_option("--over", calib_args.over, "Over-drive ratio r_o")->required();
  calib->add_option("--n-max", calib_args.n_max, "Largest N")->capture_default_str();
  calib->add_option("-o,--output", calib_args.output, "Write to file instead of stdout");

  SwapArgs swap_args;
  auto* swap = app.add_subcommand("swap", "Exchange swap of a single excitation");
  swap->add_option("--j-khz", swap_args.j_khz, "J/2pi in kHz")->capture_default_str();
  swap->add_option("--t1-a-ns", swap_args.t1_a, "T1 of qubit A in ns or 'inf'");
  swap->add_option("--t1-b-ns", swap_args.t1_b, "T1 of qubit B in ns or 'inf'");
  swap->add_option("--t-max-ns", swap_args.t_max_ns, "End of time grid")->capture_default_str();
  swap->add_option("--points", swap_args.points, "Grid points")->capture_default_str();
  swap->add_option("--max-step-ns", swap_args.max_step_ns, "Integration step bound");
  swap->add_option("-o,--output", swap_args.output, "Write to file instead of stdout");

  LeakfitArgs leak_args;
  auto* leakfit = app.add_subcommand("leakfit", "Fit the leakage model to m,p2 CSV data");
  leakfit->add_option("data", leak_args.data, "CSV with columns m and p2, or - for stdin")
      ->required();
  leakfit->add_option("--np", leak_args.np_mean, "Mean pulses per Clifford")
      ->capture_default_str();
  leakfit->add_option("--tp-ns", leak_args.tp_ns, "Pulse slot in ns")->capture_default_str();
  leakfit->add_option("-o,--output", leak_args.output, "Write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compile->parsed()) return cmd_compile(compile_args, out);
    if (stats->parsed()) return cmd_stats(stats_args, out);
    if (rb->parsed()) return cmd_rb(rb_args, out);
    if (allxy->parsed()) return cmd_allxy(allxy_args, out);
    if (calib->parsed()) return cmd_calib(calib_args, out);
    if (swap->parsed()) return cmd_swap(swap_args, out);
    if (leakfit->parsed()) return cmd_leakfit(leak_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace sbcast
