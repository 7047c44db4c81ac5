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

// Acceptance checks, one line per criterion. Run without arguments for all
// of them or with `--criterion N` for one; the exit status is nonzero when
// any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bridge.hpp"
#include "oracles.hpp"
#include "sbcast/clifford.hpp"
#include "sbcast/compiler.hpp"
#include "sbcast/fit.hpp"
#include "sbcast/rng.hpp"
#include "sbcast/sim.hpp"

using namespace sbcast;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double truncate3(double v) { return std::floor(v * 1000.0 + 1e-9) / 1000.0; }

constexpr double kT1 = 10000.0;  // ns
constexpr double kSlot = 20.0;   // ns

std::vector<double> as_double(const std::vector<int>& m) { return {m.begin(), m.end()}; }

RbResult t1_rb(std::size_t n_qubits, Scheme scheme, std::uint64_t seed,
               double cross = 0.0, double over = 1.0) {
  RbOptions o;
  o.scheme = scheme;
  o.m_values = log_spaced_lengths(800, 30);
  o.n_seeds = 50;
  o.seed = seed;
  return run_rb(std::vector<QubitModel>(n_qubits, QubitModel{kT1, kSlot, cross, over}), o);
}

Estimate fidelity_of(const RbCurve& c) {
  return jackknife_fidelity(as_double(c.m_values), c.seed_p0);
}

// ---------------------------------------------------------------------------

Outcome exact_census() {
  Outcome o;
  const std::array<double, 5> want = {1.875, 2.925, 3.521, 3.874, 4.137};
  for (int n = 1; n <= 5; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const NpStats s = mean_np_exact(n);
    const double t = seconds_since(t0);
    const double limit = n <= 3 ? 60.0 : 1800.0;
    o.require(truncate3(s.mean_np) == want[static_cast<std::size_t>(n - 1)] && t < limit,
              fmt("n=%d %.6f (%.2fs)", n, s.mean_np, t));
  }
  return o;
}

Outcome sampled_census() {
  Outcome o;
  const std::array<double, 5> want = {4.380, 4.570, 4.721, 4.808, 4.857};
  const std::array<double, 5> want_err = {0.012, 0.015, 0.010, 0.014, 0.024};
  for (int n = 6; n <= 10; ++n) {
    const auto i = static_cast<std::size_t>(n - 6);
    const NpStats s = mean_np_sampled(n, 20000, 1000 + static_cast<std::uint64_t>(n));
    const double sigma = std::hypot(s.std_error, want_err[i]);
    const double z = (s.mean_np - want[i]) / sigma;
    o.require(std::abs(z) < 3, fmt("n=%d %.4f+-%.4f z=%.2f", n, s.mean_np, s.std_error, z));
  }
  return o;
}

Outcome compiler_correctness() {
  Outcome o;
  const auto mats = bridge::oracle_cliffords();
  Rng rng(20261014);
  for (Scheme scheme : {Scheme::Sequential, Scheme::FivePrimitives,
                        Scheme::FivePrimitivesSymmetric, Scheme::Compiled}) {
    int bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int n = 1 + static_cast<int>(rng.below(4));
      CliffordCombo combo;
      for (int q = 0; q < n; ++q) combo.push_back(CliffordId::from_index(rng.below(24)));
      const Schedule s = compile_round(combo, scheme, trial);
      for (int q = 0; q < n; ++q) {
        std::vector<Pulse> routed;
        for (const auto& e : s.events) {
          if (e.mask[static_cast<std::size_t>(q)]) routed.push_back(e.pulse);
        }
        if (!oracle::same(bridge::oracle_product(routed),
                          mats[combo[static_cast<std::size_t>(q)].index()], 1e-9)) {
          ++bad;
        }
      }
    }
    o.require(bad == 0, fmt("%s 1000 combos, %d mismatches",
                            std::string(scheme_name(scheme)).c_str(), bad));
  }
  const auto words = oracle::build_words(4);
  OptimalCompiler compiler;
  int disagree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const CliffordId a = CliffordId::from_index(rng.below(24));
    const CliffordId b = CliffordId::from_index(rng.below(24));
    if (compiler.pulse_count(CliffordCombo{a, b}) !=
        oracle::brute_force_pair(words, mats[a.index()], mats[b.index()])) {
      ++disagree;
    }
  }
  o.require(disagree == 0, fmt("brute force 200 pairs, %d disagree", disagree));
  return o;
}

Outcome decomposition_tables() {
  Outcome o;
  int minimal_ok = 0, masks_ok = 0;
  for (auto c : all_cliffords()) {
    const oracle::Mat canon = bridge::to_mat(clifford_unitary(c));
    if (oracle::same(bridge::oracle_product(minimal_decomposition(c)), canon)) ++minimal_ok;
    bool both = true;
    for (bool inverted : {false, true}) {
      const auto p = masked_pulses(five_primitives(inverted), five_primitive_mask(c, inverted));
      both = both && oracle::same(bridge::oracle_product(p), canon);
    }
    if (both) ++masks_ok;
  }
  o.require(minimal_ok == 24, fmt("minimal %d/24", minimal_ok));
  o.require(masks_ok == 24, fmt("five-primitive masks %d/24 (normal and inverted)", masks_ok));
  std::size_t total = 0;
  for (auto c : all_cliffords()) total += minimal_decomposition(c).size();
  o.require(total == 45 && mean_minimal_length() == 1.875,
            fmt("mean minimal length %.6f", mean_minimal_length()));
  return o;
}

Outcome t1_consistency() {
  Outcome o;
  constexpr double kClosedForm = 0.998751;
  const auto t0 = std::chrono::steady_clock::now();
  const RbResult one = t1_rb(1, Scheme::Sequential, 11);
  const double t = seconds_since(t0);
  const Estimate f = fidelity_of(one.curves[0]);
  const double z = (f.value - kClosedForm) / f.error;
  o.require(std::abs(z) < 3 && t < 300,
            fmt("1Q minimal-set F=%.6f+-%.6f vs %.6f z=%.2f (%.2fs)", f.value, f.error,
                kClosedForm, z, t));

  const auto mean_f = [](const RbResult& r) {
    double s = 0;
    for (const auto& c : r.curves) s += fidelity_of(c).value;
    return s / static_cast<double>(r.curves.size());
  };
  const double compiled = mean_f(t1_rb(2, Scheme::Compiled, 11));
  const double sequential = mean_f(t1_rb(2, Scheme::Sequential, 11));
  const double five = mean_f(t1_rb(2, Scheme::FivePrimitives, 11));
  o.require(compiled > sequential && sequential > five,
            fmt("2Q compiled %.6f > sequential %.6f > five-primitives %.6f", compiled,
                sequential, five));
  return o;
}

Outcome asymptote() {
  Outcome o;
  struct Case {
    const char* name;
    std::size_t n;
    Scheme scheme;
  };
  for (const Case& c : {Case{"1Q minimal-set", 1, Scheme::Sequential},
                        Case{"2Q sequential", 2, Scheme::Sequential},
                        Case{"2Q five-primitives", 2, Scheme::FivePrimitives},
                        Case{"2Q symmetric", 2, Scheme::FivePrimitivesSymmetric},
                        Case{"2Q compiled", 2, Scheme::Compiled}}) {
    const RbResult r = t1_rb(c.n, c.scheme, 11);
    for (std::size_t q = 0; q < r.curves.size(); ++q) {
      const RbCurve& curve = r.curves[q];
      const ExpFit fit = fit_exp_offset(as_double(curve.m_values), curve.p0);
      const double end = curve.p0.back();
      o.require(std::abs(end - 0.5) <= 0.02,
                fmt("%s q%zu p0(800)=%.4f (fit offset %.4f)", c.name, q, end, fit.offset));
    }
  }
  return o;
}

Outcome cross_driving() {
  Outcome o;
  RbOptions idle;
  idle.m_values = log_spaced_lengths(800, 30);
  idle.n_seeds = 50;
  idle.seed = 21;
  const std::vector<QubitModel> pair(2, QubitModel{kT1, kSlot, 0.0076, 1.0});
  const auto peak = [](const RbCurve& c) { return *std::max_element(c.p1.begin(), c.p1.end()); };
  idle.scheme = Scheme::Sequential;
  const double seq = peak(run_idle_crossdrive(pair, 1, idle));
  idle.scheme = Scheme::FivePrimitivesSymmetric;
  const double sym = peak(run_idle_crossdrive(pair, 1, idle));
  o.require(seq > 0.05, fmt("minimal-set idle max p1 %.4f", seq));
  o.require(sym < 0.02, fmt("symmetric idle max p1 %.2e", sym));

  // Independent 50-seed experiments per setting; each qubit's F_C against the
  // error-free baseline with the two jackknife errors combined.
  const RbResult base = t1_rb(2, Scheme::Sequential, 300);
  struct Setting {
    double cross, over;
  };
  std::uint64_t seed = 301;
  double worst = 0;
  std::string worst_at;
  for (const Setting& s : {Setting{0.0037, 1.0}, Setting{0.0076, 1.0}, Setting{0.01, 1.0},
                           Setting{0.0, 0.99}, Setting{0.0, 1.01}}) {
    const RbResult r = t1_rb(2, Scheme::Sequential, seed++, s.cross, s.over);
    for (std::size_t q = 0; q < 2; ++q) {
      const Estimate a = fidelity_of(base.curves[q]);
      const Estimate b = fidelity_of(r.curves[q]);
      const double z = (b.value - a.value) / std::hypot(a.error, b.error);
      if (std::abs(z) > std::abs(worst)) {
        worst = z;
        worst_at = fmt("r_c=%.4f r_o=%.2f q%zu dF=%.1e", s.cross, s.over, q, b.value - a.value);
      }
    }
  }
  o.require(std::abs(worst) < 3, fmt("F_C flat, worst z=%.2f at %s", worst, worst_at.c_str()));
  return o;
}

Outcome leakage() {
  Outcome o;
  const double tp = kSlot, np = 1.875;
  double worst = 0;
  for (double per_clifford : {1.3e-6, 4.1e-6}) {
    const double kappa = per_clifford / (tp * np);
    for (double t21 : {5000.0, 10000.0, 20000.0}) {
      double p2 = 0;
      for (int m = 0; m <= 5000; ++m) {
        worst = std::max(worst, std::abs(p2 - leakage_model(m, kappa, t21, np, tp)));
        p2 = rate_step(p2, kappa, t21, np, tp);
      }
    }
  }
  o.require(worst < 1e-6, fmt("closed form vs iteration max gap %.2e", worst));

  double worst_rel = 0;
  for (double per_clifford : {1.3e-6, 4.1e-6}) {
    const double kappa = per_clifford / (tp * np);
    for (double t21 : {5000.0, 10000.0, 20000.0}) {
      std::vector<double> m, p2;
      for (int k = 0; k <= 80; ++k) {
        m.push_back(25.0 * k);
        p2.push_back(leakage_model(25.0 * k, kappa, t21, np, tp));
      }
      const LeakageFit f = fit_leakage(m, p2, np, tp);
      worst_rel = std::max({worst_rel, std::abs(f.kappa / kappa - 1), std::abs(f.t21 / t21 - 1)});
    }
  }
  o.require(worst_rel < 1e-3, fmt("fit round trip worst relative error %.2e", worst_rel));
  return o;
}

Outcome populations() {
  Outcome o;
  Rng rng(9);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    double v0, v1, v2;
    do {
      v0 = 2 * rng.uniform() - 1;
      v1 = 2 * rng.uniform() - 1;
      v2 = 2 * rng.uniform() - 1;
    } while (std::abs((v0 - v2) * (v0 - v2) - (v1 - v2) * (v1 - v2)) < 0.05);
    // Uniform on the probability simplex.
    const double u = rng.uniform(), w = rng.uniform();
    const double lo = std::min(u, w), hi = std::max(u, w);
    const Populations p{lo, hi - lo, 1 - hi};
    const Populations q = extract_populations(forward_signals(v0, v1, v2, p));
    worst = std::max({worst, std::abs(q.p0 - p.p0), std::abs(q.p1 - p.p1),
                      std::abs(q.p2 - p.p2)});
  }
  o.require(worst <= 1e-12, fmt("1000 round trips, max error %.1e", worst));
  return o;
}

Outcome allxy_and_calibration() {
  Outcome o;
  const std::array<double, 21> column = {0, 0, 0, 0, 0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5,
                                         0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 1, 1, 1, 1};
  const auto sim = simulate_allxy();
  double worst = 0;
  for (std::size_t i = 0; i < 21; ++i) worst = std::max(worst, std::abs(sim[i] - column[i]));
  o.require(allxy_ideal() == column && worst < 1e-12,
            fmt("AllXY ideal column, simulated max deviation %.1e", worst));
  std::string slopes;
  bool signs = true;
  for (double ro : {0.98, 0.99, 1.01, 1.02}) {
    const double s = initial_slope(simulate_amp_calibration(ro));
    signs = signs && ((s > 0) == (ro > 1)) && s != 0;
    slopes += fmt(" %.2f:%+.4f", ro, s);
  }
  o.require(signs, "calibration slopes" + slopes);
  return o;
}

Outcome exchange() {
  Outcome o;
  ExchangeParams p;
  const double period = std::numbers::pi / exchange_rate(p);
  const auto back = exchange_swap(p, std::vector<double>{period});
  o.require(std::abs(back.p1_a[0] - 1) < 1e-6,
            fmt("p_A(pi/J=%.4fus)=%.12f", period, back.p1_a[0]));

  for (auto [ta, tb] : {std::pair{8.0, 12.0}, std::pair{15.0, 6.0}}) {
    p.t1_a_us = ta;
    p.t1_b_us = tb;
    std::vector<double> t;
    for (int i = 0; i <= 400; ++i) t.push_back(0.1 * i);
    const auto tr = exchange_swap(p, t);
    std::vector<double> total(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) total[i] = tr.p1_a[i] + tr.p1_b[i];
    const ExpFit f = fit_exp_offset(t, total);
    const double tau = -1.0 / std::log(f.decay);
    o.require(f.converged && tau > std::min(ta, tb) && tau < std::max(ta, tb),
              fmt("T1 %.0f/%.0fus total tau %.3fus", ta, tb, tau));
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "exact pulse census", exact_census},
      {2, "sampled pulse census", sampled_census},
      {3, "compiler correctness", compiler_correctness},
      {4, "decomposition tables", decomposition_tables},
      {5, "T1-limited fidelity", t1_consistency},
      {6, "RB asymptote", asymptote},
      {7, "cross-driving robustness", cross_driving},
      {8, "leakage pipeline", leakage},
      {9, "population extraction", populations},
      {10, "AllXY and calibration", allxy_and_calibration},
      {11, "exchange swap", exchange},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  bool ok = true;
  bool ran = false;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    Outcome r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %2d %s  %s (%.1fs): %s\n", c.id, r.pass ? "PASS" : "FAIL", c.name,
                seconds_since(t0), r.detail.c_str());
    std::fflush(stdout);
    ok = ok && r.pass;
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return ok ? 0 : 1;
}
