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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "sbcast/clifford.hpp"
#include "sbcast/compiler.hpp"
#include "sbcast/fit.hpp"
#include "sbcast/schedule_io.hpp"
#include "sbcast/sim.hpp"

namespace py = pybind11;
using namespace sbcast;

namespace {

Scheme scheme_from(const std::string& name) {
  const auto s = parse_scheme(name);
  if (!s) throw py::value_error("unknown scheme '" + name + "'");
  return *s;
}

CliffordCombo combo_from(const std::vector<int>& ids) {
  CliffordCombo combo;
  for (int v : ids) {
    if (v < 1 || v > 24) throw py::value_error("Clifford ids are 1..24, got " + std::to_string(v));
    combo.emplace_back(v);
  }
  if (combo.empty()) throw py::value_error("empty Clifford combo");
  return combo;
}

FourPulsePass pass_from(const std::string& s) {
  if (s == "complete") return FourPulsePass::Complete;
  if (s == "per-qubit") return FourPulsePass::PerQubit;
  throw py::value_error("four_pulse_pass is 'complete' or 'per-qubit'");
}

std::vector<std::string> names_of(std::span<const Pulse> pulses) {
  std::vector<std::string> out;
  for (Pulse p : pulses) out.emplace_back(pulse_name(p));
  return out;
}

py::dict stats_dict(const NpStats& s) {
  py::dict d;
  d["n"] = s.n;
  d["mean_np"] = s.mean_np;
  d["std_error"] = s.std_error;
  d["mode"] = s.mode == NpMode::Exact ? "exact" : "sampled";
  d["samples"] = s.samples;
  d["total_cost"] = s.total_cost;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Selective-broadcast pulse compiler, RB simulator and analysis kernels.";

  m.def("pulse_names", [] {
    std::vector<std::string> out;
    for (Pulse p : kAllPulses) out.emplace_back(pulse_name(p));
    return out;
  });
  m.def("minimal_decomposition", [](int c) { return names_of(minimal_decomposition(CliffordId(c))); },
        py::arg("clifford"));
  m.def("clifford_of_pulses", [](const std::vector<std::string>& names) {
    std::vector<Pulse> pulses;
    for (const auto& n : names) {
      const auto p = parse_pulse(n);
      if (!p) throw py::value_error("unknown pulse '" + n + "'");
      pulses.push_back(*p);
    }
    return clifford_of_pulses(pulses)->value();
  }, py::arg("pulses"));
  m.def("compose", [](int a, int b) { return compose(CliffordId(a), CliffordId(b)).value(); },
        py::arg("first"), py::arg("second"));
  m.def("inverse", [](int a) { return inverse(CliffordId(a)).value(); }, py::arg("clifford"));
  m.def("five_primitive_mask", [](int c, bool inverted) {
    return five_primitive_mask(CliffordId(c), inverted).bits;
  }, py::arg("clifford"), py::arg("inverted") = false);

  m.def("compile_json", [](const std::vector<int>& ids, const std::string& scheme, int round,
                           const std::string& pass) {
    const CliffordCombo combo = combo_from(ids);
    const Scheme s = scheme_from(scheme);
    const Schedule out = s == Scheme::Compiled ? compile_optimal(combo, {pass_from(pass)})
                                               : compile_round(combo, s, round);
    return schedule_to_json(out).dump();
  }, py::arg("combo"), py::arg("scheme") = "compiled", py::arg("round") = 0,
     py::arg("four_pulse_pass") = "complete");
  m.def("pulse_count", [](const std::vector<int>& ids, const std::string& pass) {
    OptimalCompiler compiler({pass_from(pass)});
    return compiler.pulse_count(combo_from(ids));
  }, py::arg("combo"), py::arg("four_pulse_pass") = "complete");

  m.def("mean_np_exact", [](int n, const std::string& pass, unsigned threads) {
    NpStats s;
    {
      py::gil_scoped_release release;
      s = mean_np_exact(n, {pass_from(pass), threads});
    }
    return stats_dict(s);
  }, py::arg("n"), py::arg("four_pulse_pass") = "per-qubit", py::arg("threads") = 0);
  m.def("mean_np_sampled", [](int n, std::uint64_t samples, std::uint64_t seed,
                              const std::string& pass, unsigned threads) {
    NpStats s;
    {
      py::gil_scoped_release release;
      s = mean_np_sampled(n, samples, seed, {pass_from(pass), threads});
    }
    return stats_dict(s);
  }, py::arg("n"), py::arg("samples"), py::arg("seed") = 1,
     py::arg("four_pulse_pass") = "per-qubit", py::arg("threads") = 0);

  py::class_<QubitModel>(m, "QubitModel")
      .def(py::init([](double t1_ns, double slot_ns, double cross_ratio, double over_ratio) {
             QubitModel q{t1_ns, slot_ns, cross_ratio, over_ratio};
             validate_model(q);
             return q;
           }),
           py::arg("t1_ns") = kInfiniteT1, py::arg("slot_ns") = 20.0,
           py::arg("cross_ratio") = 0.0, py::arg("over_ratio") = 1.0)
      .def_readwrite("t1_ns", &QubitModel::t1_ns)
      .def_readwrite("slot_ns", &QubitModel::slot_ns)
      .def_readwrite("cross_ratio", &QubitModel::cross_ratio)
      .def_readwrite("over_ratio", &QubitModel::over_ratio);

  m.def("run_rb", [](const std::vector<QubitModel>& models, const std::string& scheme,
                     const std::vector<int>& m_values, int n_seeds, std::uint64_t seed,
                     std::optional<std::size_t> idle_qubit, unsigned threads) {
    RbOptions o;
    o.scheme = scheme_from(scheme);
    o.m_values = m_values;
    o.n_seeds = n_seeds;
    o.seed = seed;
    o.idle_qubit = idle_qubit;
    o.threads = threads;
    RbResult r;
    {
      py::gil_scoped_release release;
      r = run_rb(models, o);
    }
    py::list curves;
    for (const auto& c : r.curves) {
      py::dict d;
      d["m"] = c.m_values;
      d["p0"] = c.p0;
      d["p1"] = c.p1;
      d["seed_p0"] = c.seed_p0;
      curves.append(d);
    }
    py::dict out;
    out["curves"] = curves;
    out["mean_round_slots"] = r.mean_round_slots;
    return out;
  }, py::arg("models"), py::arg("scheme") = "sequential", py::arg("m_values"),
     py::arg("n_seeds") = 50, py::arg("seed") = 1, py::arg("idle_qubit") = py::none(),
     py::arg("threads") = 0);
  m.def("log_spaced_lengths", &log_spaced_lengths, py::arg("max_m"), py::arg("count"));

  m.def("fit_exp_offset", [](const std::vector<double>& x, const std::vector<double>& y) {
    const ExpFit f = fit_exp_offset(x, y);
    py::dict d;
    d["amplitude"] = f.amplitude;
    d["decay"] = f.decay;
    d["offset"] = f.offset;
    d["decay_stderr"] = f.decay_stderr();
    d["rms_residual"] = f.rms_residual;
    d["converged"] = f.converged;
    return d;
  }, py::arg("x"), py::arg("y"));
  m.def("jackknife_fidelity", [](const std::vector<double>& m_values,
                                 const std::vector<std::vector<double>>& seeds) {
    const Estimate e = jackknife_fidelity(m_values, seeds);
    return py::make_tuple(e.value, e.error);
  }, py::arg("m_values"), py::arg("seed_curves"));
  m.def("t1_limit_fidelity", &t1_limit_fidelity, py::arg("t1"), py::arg("tp"), py::arg("np_mean"));
  m.def("leakage_model", &leakage_model, py::arg("m"), py::arg("kappa"), py::arg("t21"),
        py::arg("np_mean"), py::arg("tp"));
  m.def("fit_leakage", [](const std::vector<double>& m_values, const std::vector<double>& p2,
                          double np_mean, double tp) {
    const LeakageFit f = fit_leakage(m_values, p2, np_mean, tp);
    py::dict d;
    d["kappa"] = f.kappa;
    d["kappa_per_clifford"] = f.kappa_per_clifford;
    d["t21"] = f.t21;
    d["t21_identifiable"] = f.t21_identifiable;
    d["converged"] = f.converged;
    return d;
  }, py::arg("m_values"), py::arg("p2_values"), py::arg("np_mean"), py::arg("tp"));
  m.def("extract_populations", [](double v0, double v1, double v2, double s, double s_prime) {
    const Populations p = extract_populations({v0, v1, v2, s, s_prime});
    return py::make_tuple(p.p0, p.p1, p.p2);
  }, py::arg("v0"), py::arg("v1"), py::arg("v2"), py::arg("s"), py::arg("s_prime"));

  m.def("simulate_allxy", [](double amplitude_scale, double phase_error) {
    return simulate_allxy({amplitude_scale, phase_error});
  }, py::arg("amplitude_scale") = 1.0, py::arg("phase_error") = 0.0);
  m.def("simulate_amp_calibration", &simulate_amp_calibration, py::arg("over_ratio"),
        py::arg("n_max") = 49);
  m.def("exchange_swap", [](double j_khz, double t1_a_ns, double t1_b_ns,
                            const std::vector<double>& t_ns) {
    ExchangeParams p{j_khz, t1_a_ns * 1e-3, t1_b_ns * 1e-3};
    std::vector<double> t_us;
    for (double t : t_ns) t_us.push_back(t * 1e-3);
    const SwapTrace tr = exchange_swap(p, t_us);
    return py::make_tuple(tr.p1_a, tr.p1_b);
  }, py::arg("j_khz"), py::arg("t1_a_ns"), py::arg("t1_b_ns"), py::arg("t_ns"));
}
