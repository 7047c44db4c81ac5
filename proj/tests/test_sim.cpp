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
#include <numbers>

#include "bridge.hpp"
#include "oracles.hpp"
#include "sbcast/fit.hpp"
#include "sbcast/sim.hpp"

using namespace sbcast;

namespace {

std::vector<double> as_double(const std::vector<int>& m) { return {m.begin(), m.end()}; }

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST_CASE("state primitives", "[sim]") {
  CHECK(QubitState::ground().p0() == 1.0);
  CHECK(QubitState::excited().p1() == 1.0);
  const QubitState x = apply_pulse(QubitState::ground(), Pulse::XpiOver2, 1.0);
  CHECK(x.p1() == Catch::Approx(0.5).margin(1e-15));
  CHECK(x.is_valid());
  // Kraus oracle for amplitude damping.
  const double gamma = 1 - std::exp(-20.0 / 10000.0);
  const oracle::Mat ref = oracle::damp(x.rho, gamma);
  const QubitState r = relax(x, 20.0, 10000.0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(r.rho[i] - ref[i]) < 1e-15);
  CHECK(relax(x, 20.0, kInfiniteT1).rho == x.rho);
  CHECK(apply_pulse(QubitState::ground(), Pulse::Xpi, 0.0).rho == QubitState::ground().rho);

  QubitState bad;
  bad.rho = {1.2, 0, 0, -0.2};
  CHECK_FALSE(bad.is_valid());
}

TEST_CASE("model validation", "[sim]") {
  CHECK_NOTHROW(validate_model({}));
  CHECK_THROWS_AS(validate_model({0.0, 20.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_model({1e4, -1.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_model({1e4, 20.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_model({1e4, 20.0, 0.0, -0.5}), std::invalid_argument);
}

TEST_CASE("log-spaced lengths", "[sim]") {
  const auto m = log_spaced_lengths(800, 30);
  CHECK(m.front() == 1);
  CHECK(m.back() == 800);
  CHECK(std::is_sorted(m.begin(), m.end()));
  CHECK(std::adjacent_find(m.begin(), m.end()) == m.end());
  CHECK_THROWS(log_spaced_lengths(0, 10));
}

TEST_CASE("noiseless RB stays in the ground state", "[sim]") {
  const auto ms = std::vector<int>{1, 3, 10, 40};
  for (Scheme scheme : {Scheme::Sequential, Scheme::FivePrimitives,
                        Scheme::FivePrimitivesSymmetric, Scheme::Compiled}) {
    for (std::size_t n : {1u, 3u}) {
      RbOptions o;
      o.scheme = scheme;
      o.m_values = ms;
      o.n_seeds = 4;
      const auto r = run_rb(std::vector<QubitModel>(n), o);
      REQUIRE(r.curves.size() == n);
      for (const auto& c : r.curves) {
        for (double p : c.p0) CHECK(p == Catch::Approx(1.0).margin(1e-12));
      }
    }
  }
}

TEST_CASE("RB is deterministic and thread-count invariant", "[sim]") {
  std::vector<QubitModel> models(2, QubitModel{8000.0, 20.0, 0.005, 1.0});
  RbOptions o;
  o.scheme = Scheme::Compiled;
  o.m_values = {1, 5, 20, 60};
  o.n_seeds = 6;
  o.seed = 3;
  o.threads = 1;
  const auto a = run_rb(models, o);
  o.threads = 4;
  const auto b = run_rb(models, o);
  REQUIRE(a.curves.size() == b.curves.size());
  for (std::size_t q = 0; q < a.curves.size(); ++q) {
    CHECK(a.curves[q].p0 == b.curves[q].p0);
    CHECK(a.curves[q].seed_p0 == b.curves[q].seed_p0);
  }
  CHECK(a.mean_round_slots == b.mean_round_slots);
  o.seed = 4;
  CHECK(run_rb(models, o).curves[0].p0 != a.curves[0].p0);
}

TEST_CASE("RB option validation", "[sim]") {
  std::vector<QubitModel> models(2);
  RbOptions o;
  o.m_values = {1, 5, 5};
  CHECK_THROWS_AS(run_rb(models, o), std::invalid_argument);
  o.m_values = {0, 5};
  CHECK_THROWS_AS(run_rb(models, o), std::invalid_argument);
  o.m_values = {};
  CHECK_THROWS_AS(run_rb(models, o), std::invalid_argument);
  o.m_values = {1, 2};
  o.n_seeds = 0;
  CHECK_THROWS_AS(run_rb(models, o), std::invalid_argument);
  o.n_seeds = 1;
  o.idle_qubit = 2;
  CHECK_THROWS_AS(run_rb(models, o), std::invalid_argument);
  CHECK_THROWS_AS(run_idle_crossdrive(std::vector<QubitModel>(1), 0, o), std::invalid_argument);
}

TEST_CASE("T1-limited single-qubit RB agrees with the closed form", "[sim][statistical]") {
  const auto ms = log_spaced_lengths(800, 30);
  RbOptions o;
  o.m_values = ms;
  o.n_seeds = 50;
  o.seed = 11;
  const auto r = run_rb(std::vector<QubitModel>{{10000.0, 20.0, 0.0, 1.0}}, o);
  CHECK(r.mean_round_slots == Catch::Approx(1.875).margin(0.01));
  const Estimate f = jackknife_fidelity(as_double(ms), r.curves[0].seed_p0);
  const double want = t1_limit_fidelity(10000.0, 20.0, r.mean_round_slots);
  CHECK(std::abs(f.value - want) < 3 * f.error);
}

TEST_CASE("idle qubit under cross-driving", "[sim]") {
  const std::vector<QubitModel> models(2, QubitModel{kInfiniteT1, 20.0, 0.0076, 1.0});
  RbOptions o;
  o.m_values = log_spaced_lengths(800, 20);
  o.n_seeds = 10;
  o.seed = 2;
  o.scheme = Scheme::Sequential;
  const auto seq = run_idle_crossdrive(models, 1, o);
  CHECK(max_of(seq.p1) > 0.05);
  o.scheme = Scheme::FivePrimitivesSymmetric;
  const auto sym = run_idle_crossdrive(models, 1, o);
  CHECK(max_of(sym.p1) < 0.02);
  // Without cross-driving the idle qubit never moves.
  const std::vector<QubitModel> clean(2);
  o.scheme = Scheme::Sequential;
  CHECK(max_of(run_idle_crossdrive(clean, 0, o).p1) < 1e-12);
}

TEST_CASE("AllXY", "[sim]") {
  const std::array<double, 21> staircase = {0, 0, 0, 0, 0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5,
                                            0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 1, 1, 1, 1};
  CHECK(allxy_ideal() == staircase);
  const auto ideal = simulate_allxy();
  for (std::size_t i = 0; i < 21; ++i) CHECK(ideal[i] == Catch::Approx(staircase[i]).margin(1e-12));
  // Each pair composes to the staircase state in the oracle too.
  for (std::size_t i = 0; i < 21; ++i) {
    const auto [a, b] = allxy_pairs()[i];
    const std::vector<Pulse> pulses = {a, b};
    const oracle::Mat u = bridge::oracle_product(pulses);
    CHECK(std::norm(u[2]) == Catch::Approx(staircase[i]).margin(1e-12));
  }
  const auto over = simulate_allxy({1.05, 0.0});
  CHECK(std::abs(over[17] - 1.0) > 1e-3);
  const auto tilted = simulate_allxy({1.0, 0.05});
  double worst = 0;
  for (std::size_t i = 0; i < 21; ++i) worst = std::max(worst, std::abs(tilted[i] - staircase[i]));
  CHECK(worst > 1e-3);
}

TEST_CASE("amplitude calibration slope follows the over-drive sign", "[sim]") {
  for (double ro : {0.98, 0.99, 1.01, 1.02}) {
    const auto curve = simulate_amp_calibration(ro, 49);
    CHECK(curve.size() == 50);
    CHECK((initial_slope(curve) > 0) == (ro > 1));
  }
  const auto exact = simulate_amp_calibration(1.0, 10);
  for (double p : exact) CHECK(p == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("exchange swap", "[sim]") {
  ExchangeParams p;
  const double period = std::numbers::pi / exchange_rate(p);
  CHECK(period == Catch::Approx(1e3 / (2 * 36.0)));
  const std::vector<double> grid = {0.0, period / 2, period};
  const auto t = exchange_swap(p, grid);
  CHECK(t.p1_a[0] == 1.0);
  CHECK(t.p1_a[1] < 1e-9);
  CHECK(t.p1_b[1] == Catch::Approx(1.0).margin(1e-9));
  CHECK(std::abs(t.p1_a[2] - 1.0) < 1e-6);

  p.t1_a_us = 8.0;
  p.t1_b_us = 12.0;
  std::vector<double> dense;
  for (int i = 0; i <= 200; ++i) dense.push_back(0.2 * i);
  const auto d = exchange_swap(p, dense);
  for (std::size_t i = 1; i < dense.size(); ++i) {
    CHECK(d.p1_a[i] + d.p1_b[i] <= d.p1_a[i - 1] + d.p1_b[i - 1] + 1e-12);
  }
  CHECK_THROWS_AS(exchange_swap(p, std::vector<double>{1.0, 0.5}), std::invalid_argument);
}
