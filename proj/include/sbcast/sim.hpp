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

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sbcast/clifford.hpp"
#include "sbcast/compiler.hpp"

namespace sbcast {

inline constexpr double kInfiniteT1 = std::numeric_limits<double>::infinity();

/// One uncoupled qubit. Times in ns.
struct QubitModel {
  double t1_ns = kInfiniteT1;
  double slot_ns = 20.0;
  double cross_ratio = 0.0;  // angle scale seen when a pulse is not routed here
  double over_ratio = 1.0;   // angle scale seen when it is
};

/// Throws std::invalid_argument unless t1 > 0, slot > 0, 0 <= r_c < 1 and
/// r_o >= 0.
void validate_model(const QubitModel& model);

/// Row-major 2x2 density matrix.
struct QubitState {
  std::array<std::complex<double>, 4> rho{};

  static QubitState ground();
  static QubitState excited();

  double p0() const { return rho[0].real(); }
  double p1() const { return rho[3].real(); }

  /// Hermitian, unit trace and positive semidefinite within `tol`.
  bool is_valid(double tol = 1e-9) const;
};

QubitState apply_unitary(const QubitState& state, const Unitary2& u);

/// Rotation about the pulse's axis by angle * angle_scale.
QubitState apply_pulse(const QubitState& state, Pulse p, double angle_scale);

/// Exact amplitude-damping channel over `dt_ns`.
QubitState relax(const QubitState& state, double dt_ns, double t1_ns);

// ---------------------------------------------------------------------------
// Randomized benchmarking

struct RbOptions {
  Scheme scheme = Scheme::Sequential;
  std::vector<int> m_values;
  int n_seeds = 50;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
  /// Never targeted: masks stay off, only cross-driven rotations reach it.
  std::optional<std::size_t> idle_qubit;
};

struct RbCurve {
  std::vector<int> m_values;
  std::vector<double> p0;
  std::vector<double> p1;
  int seeds = 0;
  /// p0 of each seed at each m; prefixes of one sequence per seed, so a
  /// seed's points are correlated and error bars should resample seeds.
  std::vector<std::vector<double>> seed_p0;
};

struct RbResult {
  std::vector<RbCurve> curves;  // one per simulated qubit
  /// Mean time slots per Clifford round over the random part of all
  /// sequences; the effective <N_p> of the scheme.
  double mean_round_slots = 0.0;
};

/// Independent uniform Clifford sequences per driven qubit, closed by
/// per-qubit recovery Cliffords, compiled round by round with
/// `options.scheme`. Each seed draws one sequence of length max(m) and reads
/// every m off its prefixes. Throws std::invalid_argument on empty or
/// non-increasing m_values, n_seeds < 1, an invalid model or an idle qubit
/// out of range.
RbResult run_rb(std::span<const QubitModel> models, const RbOptions& options);

/// run_rb with `idle_qubit` set; returns only that qubit's curve.
RbCurve run_idle_crossdrive(std::span<const QubitModel> models,
                            std::size_t idle_qubit, const RbOptions& options);

/// About `count` log-spaced integers from 1 to `max_m`, deduplicated. Both
/// ends are included.
std::vector<int> log_spaced_lengths(int max_m, int count);

// ---------------------------------------------------------------------------
// Calibration experiments (noiseless)

struct AllxyErrors {
  double amplitude_scale = 1.0;  // angle multiplier for every pulse
  double phase_error = 0.0;      // rad; skews the y axis away from orthogonal to x
};

/// The 21 AllXY pairs in time order (first, second).
const std::array<std::pair<Pulse, Pulse>, 21>& allxy_pairs();
const std::array<double, 21>& allxy_ideal();
std::array<double, 21> simulate_allxy(const AllxyErrors& errors = {});

/// p1 after X90 followed by 2N X180, N = 0..n_max, every angle scaled by
/// over_ratio (> 0).
std::vector<double> simulate_amp_calibration(double over_ratio, int n_max = 49);

/// Least-squares slope of the first `points` curve values against N.
double initial_slope(std::span<const double> curve, int points = 5);

// ---------------------------------------------------------------------------
// Exchange-coupled pair

struct ExchangeParams {
  double j_over_2pi_khz = 36.0;
  double t1_a_us = kInfiniteT1;
  double t1_b_us = kInfiniteT1;
};

struct SwapTrace {
  std::vector<double> t_us;
  std::vector<double> p1_a;
  std::vector<double> p1_b;
};

/// J in rad/us.
double exchange_rate(const ExchangeParams& params);

/// Starts in |excited, ground>, evolves under J(σ+σ- + σ-σ+) with independent
/// amplitude damping, split into steps of at most `max_step_ns`. `t_grid_us`
/// must be non-decreasing and non-negative.
SwapTrace exchange_swap(const ExchangeParams& params,
                        std::span<const double> t_grid_us,
                        double max_step_ns = 1.0);

}  // namespace sbcast
