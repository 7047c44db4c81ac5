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
#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "sbcast/fit.hpp"
#include "sbcast/rng.hpp"

using namespace sbcast;

namespace {

// Average fidelity of `steps` amplitude-damping slots over the six cardinal
// states (a 2-design), evaluated with the oracle's Kraus map.
double cardinal_fidelity(double t1, double tp, int steps) {
  using oracle::cd;
  const double gamma = 1 - std::exp(-tp / t1);
  const double h = std::sqrt(0.5);
  const std::array<std::array<cd, 2>, 6> states = {{{cd(1), cd(0)},
                                                    {cd(0), cd(1)},
                                                    {cd(h), cd(h)},
                                                    {cd(h), cd(-h)},
                                                    {cd(h), cd(0, h)},
                                                    {cd(h), cd(0, -h)}}};
  double total = 0;
  for (const auto& psi : states) {
    oracle::Mat rho = {psi[0] * std::conj(psi[0]), psi[0] * std::conj(psi[1]),
                       psi[1] * std::conj(psi[0]), psi[1] * std::conj(psi[1])};
    for (int k = 0; k < steps; ++k) rho = oracle::damp(rho, gamma);
    total += (std::conj(psi[0]) * rho[0] * psi[0] + std::conj(psi[0]) * rho[1] * psi[1] +
              std::conj(psi[1]) * rho[2] * psi[0] + std::conj(psi[1]) * rho[3] * psi[1])
                 .real();
  }
  return total / 6;
}

}  // namespace

TEST_CASE("exponential fit recovers exact data", "[fit]") {
  std::vector<double> x, y;
  for (int m = 1; m <= 800; m = m * 3 / 2 + 1) {
    x.push_back(m);
    y.push_back(0.48 * std::pow(0.9951, m) + 0.51);
  }
  const ExpFit f = fit_exp_offset(x, y);
  CHECK(f.converged);
  CHECK(f.amplitude == Catch::Approx(0.48).epsilon(1e-8));
  CHECK(f.decay == Catch::Approx(0.9951).epsilon(1e-10));
  CHECK(f.offset == Catch::Approx(0.51).epsilon(1e-8));
  CHECK(f.rms_residual < 1e-10);
  CHECK(f(10) == Catch::Approx(0.48 * std::pow(0.9951, 10) + 0.51));
}

TEST_CASE("exponential fit on noisy data has honest errors", "[fit]") {
  Rng rng(17);
  std::vector<double> x, y;
  for (int m = 1; m <= 400; m += 7) {
    x.push_back(m);
    const double noise = 0.003 * (rng.uniform() + rng.uniform() + rng.uniform() - 1.5);
    y.push_back(0.5 * std::pow(0.99, m) + 0.5 + noise);
  }
  const ExpFit f = fit_exp_offset(x, y);
  CHECK(f.converged);
  CHECK(f.decay_stderr() > 0);
  CHECK(std::abs(f.decay - 0.99) < 5 * f.decay_stderr());
  const Estimate e = fidelity_from_fit(f);
  CHECK(e.value == Catch::Approx((1 + f.decay) / 2));
  CHECK(e.error == Catch::Approx(f.decay_stderr() / 2));
}

TEST_CASE("exponential fit edge cases", "[fit]") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const ExpFit flat = fit_exp_offset(x, std::vector<double>(5, 1.0));
  CHECK(flat.degenerate);
  CHECK(flat.decay == 1.0);
  CHECK(flat.offset == 1.0);
  CHECK_THROWS_AS(fit_exp_offset(std::vector<double>{1, 2, 3}, std::vector<double>{1, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_exp_offset(x, std::vector<double>{1, 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_exp_offset(x, std::vector<double>{1, 1, 1, 1, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(fit_exp_offset(x, std::vector<double>{1, 1, NAN, 1, 1}), std::invalid_argument);
}

TEST_CASE("jackknife over identical seeds has zero spread", "[fit]") {
  std::vector<double> x;
  std::vector<double> curve;
  for (int m : {1, 2, 4, 8, 16, 32, 64, 128}) {
    x.push_back(m);
    curve.push_back(0.5 * std::pow(0.98, m) + 0.5);
  }
  const std::vector<std::vector<double>> seeds(5, curve);
  const Estimate e = jackknife_fidelity(x, seeds);
  CHECK(e.value == Catch::Approx(0.99).epsilon(1e-10));
  CHECK(e.error < 1e-9);
  CHECK_THROWS_AS(jackknife_fidelity(x, std::vector<std::vector<double>>(1, curve)),
                  std::invalid_argument);
}

TEST_CASE("T1-limited fidelity matches a cardinal-state average", "[fit][oracle]") {
  // Frozen value for T1 = 10 us, 20 ns slots, 1.875 slots per Clifford.
  CHECK(t1_limit_fidelity(10000.0, 20.0, 1.875) == Catch::Approx(0.998751).margin(5e-7));
  for (double t1 : {3000.0, 10000.0, 25000.0}) {
    CHECK(t1_limit_fidelity(t1, 20.0, 1) ==
          Catch::Approx(cardinal_fidelity(t1, 20.0, 1)).epsilon(1e-12));
    // Per-slot fidelities multiply.
    CHECK(t1_limit_fidelity(t1, 20.0, 2.5) ==
          Catch::Approx(std::pow(cardinal_fidelity(t1, 20.0, 1), 2.5)).epsilon(1e-12));
  }
  CHECK(t1_limit_fidelity(std::numeric_limits<double>::infinity(), 20.0, 3.0) == 1.0);
  CHECK(fidelity_from_decay(1.0) == 1.0);
  CHECK(fidelity_from_decay(0.0) == 0.5);
}

TEST_CASE("leakage closed form against the difference equation", "[fit][oracle]") {
  const double tp = 20.0, np = 1.875;
  for (double per_clifford : {1.3e-6, 4.1e-6}) {
    const double kappa = per_clifford / (tp * np);
    for (double t21 : {5000.0, 20000.0}) {
      double p2 = 0;  // iterated directly, not through rate_step
      double worst = 0;
      for (int m = 0; m <= 3000; ++m) {
        worst = std::max(worst, std::abs(p2 - leakage_model(m, kappa, t21, np, tp)));
        CHECK(rate_step(p2, kappa, t21, np, tp) ==
              Catch::Approx(p2 + tp * np * kappa - tp * np / t21 * p2).epsilon(1e-15));
        p2 += tp * np * kappa - tp * np / t21 * p2;
      }
      CHECK(worst < 1e-6);
    }
  }
  CHECK(leakage_model(0, 1e-7, 1e4, np, tp) == 0.0);
  CHECK(leakage_model(1e9, 1e-7, 1e4, np, tp) == Catch::Approx(1e-7 * 1e4));
  const double fixed = 1e-7 * 1e4;
  CHECK(rate_step(fixed, 1e-7, 1e4, np, tp) == Catch::Approx(fixed).epsilon(1e-15));
}

TEST_CASE("leakage fit round trip", "[fit]") {
  const double tp = 20.0, np = 1.875;
  const double kappa = 4.1e-6 / (tp * np);
  const double t21 = 15000.0;
  std::vector<double> m, p2;
  for (int k = 0; k <= 40; ++k) {
    m.push_back(50.0 * k);
    p2.push_back(leakage_model(50.0 * k, kappa, t21, np, tp));
  }
  const LeakageFit f = fit_leakage(m, p2, np, tp);
  CHECK(f.converged);
  CHECK(f.t21_identifiable);
  CHECK(f.kappa == Catch::Approx(kappa).epsilon(1e-3));
  CHECK(f.t21 == Catch::Approx(t21).epsilon(1e-3));
  CHECK(f.kappa_per_clifford == Catch::Approx(4.1e-6).epsilon(1e-3));

  const LeakageFit zero = fit_leakage(m, std::vector<double>(m.size(), 0.0), np, tp);
  CHECK(zero.kappa == 0.0);
  CHECK_FALSE(zero.t21_identifiable);
  CHECK_THROWS_AS(fit_leakage(m, p2, 0.0, tp), std::invalid_argument);
}

TEST_CASE("population extraction round trip", "[fit]") {
  Rng rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    double v0, v1, v2;
    do {
      v0 = 2 * rng.uniform() - 1;
      v1 = 2 * rng.uniform() - 1;
      v2 = 2 * rng.uniform() - 1;
    } while (std::abs((v0 - v2) * (v0 - v2) - (v1 - v2) * (v1 - v2)) < 0.05);
    const double a = rng.uniform(), b = rng.uniform() * (1 - a);
    const Populations p{a, b, 1 - a - b};
    const Populations q = extract_populations(forward_signals(v0, v1, v2, p));
    CHECK(std::abs(q.p0 - p.p0) < 1e-12);
    CHECK(std::abs(q.p1 - p.p1) < 1e-12);
    CHECK(std::abs(q.p2 - p.p2) < 1e-12);
  }
  CHECK_THROWS_AS(extract_populations(forward_signals(1, 1, 0, {1, 0, 0})),
                  std::invalid_argument);
}

TEST_CASE("interleaved gate fidelity", "[fit]") {
  const auto f = interleaved_gate_fidelity(0.98, 0.99);
  CHECK(f.fidelity == Catch::Approx(1 - (1 - 0.98 / 0.99) / 2));
  CHECK_FALSE(f.unphysical);
  CHECK(interleaved_gate_fidelity(0.995, 0.99).unphysical);
  CHECK_THROWS_AS(interleaved_gate_fidelity(0.0, 0.99), std::invalid_argument);
  CHECK_THROWS_AS(interleaved_gate_fidelity(0.9, 1.01), std::invalid_argument);
}
