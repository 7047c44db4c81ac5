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
#include <span>
#include <string>
#include <vector>

namespace sbcast {

/// y = amplitude * decay^x + offset.
struct ExpFit {
  double amplitude = 0.0;
  double decay = 1.0;
  double offset = 0.0;
  /// Row-major 3x3 over (amplitude, decay, offset): s^2 (J^T J)^-1.
  std::array<double, 9> covariance{};
  double rms_residual = 0.0;
  int iterations = 0;
  bool converged = true;
  bool degenerate = false;  // flat input, decay pinned to 1
  std::string diagnostics;

  double decay_stderr() const;
  double operator()(double x) const;
};

/// Levenberg-Marquardt least squares. Starts from offset = last y,
/// amplitude = first - last, decay from a log-linear fit of |y - offset|.
/// Throws std::invalid_argument for fewer than 4 points, mismatched lengths,
/// non-finite values or y outside [0, 1].
ExpFit fit_exp_offset(std::span<const double> x, std::span<const double> y);

/// (1 + p) / 2 for 0 <= p <= 1.
double fidelity_from_decay(double p);

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // one standard error
};

/// Clifford fidelity and its standard error from a fitted RB decay.
Estimate fidelity_from_fit(const ExpFit& fit);

/// Fidelity of the seed-averaged curve, with a leave-one-seed-out jackknife
/// standard error. Needs at least 2 seed curves of equal length.
Estimate jackknife_fidelity(std::span<const double> m_values,
                            std::span<const std::vector<double>> seed_curves);

/// [(3 + 2 e^{-tp/2T1} + e^{-tp/T1}) / 6]^np.
double t1_limit_fidelity(double t1, double tp, double np_mean);

// ---------------------------------------------------------------------------
// Leakage. kappa is in native units of the rate model: population per ns of
// aggregate pulse time, so one Clifford adds tp * np_mean * kappa.

double leakage_model(double m, double kappa, double t21, double np_mean, double tp);

/// One step of the difference equation the closed form solves.
double rate_step(double p2, double kappa, double t21, double np_mean, double tp);

struct LeakageFit {
  double kappa = 0.0;               // per ns
  double kappa_per_clifford = 0.0;  // kappa * tp * np_mean
  double t21 = 0.0;                 // ns; NaN when not identifiable
  bool t21_identifiable = true;
  double np_mean = 0.0;
  double tp = 0.0;
  double rms_residual = 0.0;
  bool converged = true;
};

/// Least squares of the closed-form model. All-zero data gives kappa = 0 and
/// an unidentifiable t21. Throws std::invalid_argument for fewer than 4
/// points, mismatched lengths or non-positive np_mean / tp.
LeakageFit fit_leakage(std::span<const double> m_values, std::span<const double> p2_values,
                       double np_mean, double tp);

// ---------------------------------------------------------------------------

/// Calibrated level signals and the two measured signals, without (s) and
/// with (s_prime) a final 0-1 pi pulse.
struct PopCalib {
  double v0 = 0.0, v1 = 0.0, v2 = 0.0;
  double s = 0.0, s_prime = 0.0;
};

struct Populations {
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;
};

/// Signals a population triple would produce under the given levels.
PopCalib forward_signals(double v0, double v1, double v2, const Populations& p);

/// Inverts the 2x2 level system; p2 = 1 - p0 - p1. No clamping. Throws
/// std::invalid_argument when the system is singular.
Populations extract_populations(const PopCalib& c);

struct InterleavedFidelity {
  double fidelity = 1.0;
  bool unphysical = false;  // p_interleaved > p_reference
};

/// 1 - (1 - p_int / p_ref) / 2. Throws std::invalid_argument unless both
/// decays lie in (0, 1].
InterleavedFidelity interleaved_gate_fidelity(double p_interleaved, double p_reference);

}  // namespace sbcast
