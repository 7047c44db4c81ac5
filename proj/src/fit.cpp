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

#include "sbcast/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sbcast {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_series(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y lengths differ");
  if (x.size() < 4) throw std::invalid_argument("at least 4 points are required");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw std::invalid_argument("non-finite input value");
    }
  }
}

template <int N>
struct LmResult {
  Eigen::Matrix<double, N, 1> params;
  Eigen::Matrix<double, N, N> jtj;
  double sse = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Levenberg-Marquardt with Marquardt diagonal scaling. `model` fills the
// residuals and Jacobian; `project` maps a trial point into the feasible set.
template <int N, typename Model, typename Project>
LmResult<N> levenberg_marquardt(Eigen::Matrix<double, N, 1> params,
                                                std::size_t n_points, Model model,
                                                Project project, int max_iter = 500) {
  using Vec = Eigen::VectorXd;
  using Jac = Eigen::Matrix<double, Eigen::Dynamic, N>;
  Vec r(static_cast<Eigen::Index>(n_points));
  Jac jac(static_cast<Eigen::Index>(n_points), N);
  model(params, r, jac);
  double sse = r.squaredNorm();
  double lambda = 1e-3;

  LmResult<N> out;
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    const Eigen::Matrix<double, N, N> jtj = jac.transpose() * jac;
    const Eigen::Matrix<double, N, 1> g = jac.transpose() * r;
    bool improved = false;
    while (lambda < 1e16) {
      Eigen::Matrix<double, N, N> a = jtj;
      for (int k = 0; k < N; ++k) a(k, k) += lambda * std::max(jtj(k, k), 1e-300);
      const Eigen::Matrix<double, N, 1> step = a.ldlt().solve(-g);
      const Eigen::Matrix<double, N, 1> trial = project(params + step);
      Vec r_trial(r.size());
      Jac jac_trial(jac.rows(), N);
      model(trial, r_trial, jac_trial);
      const double sse_trial = r_trial.squaredNorm();
      if (std::isfinite(sse_trial) && sse_trial <= sse) {
        const double gain = sse - sse_trial;
        const double change = (trial - params).norm() / (params.norm() + 1e-300);
        params = trial;
        r = r_trial;
        jac = jac_trial;
        improved = true;
        lambda = std::max(lambda / 10, 1e-12);
        if (gain <= 1e-15 * std::max(sse, 1e-300) || change < 1e-14 || sse_trial == 0) {
          sse = sse_trial;
          out.converged = true;
        }
        sse = sse_trial;
        break;
      }
      lambda *= 10;
    }
    if (!improved) {
      // No descent direction left: at a minimum to working precision.
      out.converged = true;
    }
    if (out.converged) break;
  }
  out.params = params;
  out.jtj = jac.transpose() * jac;
  out.sse = sse;
  return out;
}

}  // namespace

double ExpFit::decay_stderr() const { return std::sqrt(std::max(0.0, covariance[4])); }

double ExpFit::operator()(double x) const {
  return amplitude * std::pow(decay, x) + offset;
}

ExpFit fit_exp_offset(std::span<const double> x, std::span<const double> y) {
  check_series(x, y);
  for (double v : y) {
    if (v < -1e-9 || v > 1 + 1e-9) throw std::invalid_argument("y must lie in [0, 1]");
  }
  const std::size_t n = x.size();
  ExpFit fit;

  double mean = 0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  double spread = 0;
  for (double v : y) spread = std::max(spread, std::abs(v - mean));
  if (spread < 1e-12) {
    fit.amplitude = 0.0;
    fit.decay = 1.0;
    fit.offset = mean;
    fit.degenerate = true;
    fit.diagnostics = "flat data";
    return fit;
  }

  const double b0 = y.back();
  const double a0 = y.front() - y.back();
  double p0 = 0.5;
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double d = std::abs(y[i] - b0);
      if (d <= 1e-12) continue;
      const double ly = std::log(d);
      sx += x[i];
      sy += ly;
      sxx += x[i] * x[i];
      sxy += x[i] * ly;
      ++k;
    }
    const double den = k * sxx - sx * sx;
    if (k >= 2 && den > 0) p0 = std::exp((k * sxy - sx * sy) / den);
    p0 = std::clamp(p0, 1e-6, 1.0 - 1e-12);
  }

  auto model = [&](const Eigen::Vector3d& q, Eigen::VectorXd& r,
                   Eigen::Matrix<double, Eigen::Dynamic, 3>& jac) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double pw = std::pow(q(1), x[i]);
      r(row) = q(0) * pw + q(2) - y[i];
      jac(row, 0) = pw;
      jac(row, 1) = x[i] == 0 ? 0.0 : q(0) * x[i] * std::pow(q(1), x[i] - 1);
      jac(row, 2) = 1.0;
    }
  };
  auto project = [](Eigen::Vector3d q) {
    q(1) = std::clamp(q(1), 1e-12, 1.0);
    return q;
  };
  const auto lm = levenberg_marquardt<3>(Eigen::Vector3d(a0, p0, b0), n, model, project);

  fit.amplitude = lm.params(0);
  fit.decay = lm.params(1);
  fit.offset = lm.params(2);
  fit.iterations = lm.iterations;
  fit.converged = lm.converged;
  fit.rms_residual = std::sqrt(lm.sse / static_cast<double>(n));
  const double s2 = lm.sse / static_cast<double>(n - 3);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(lm.jtj);
  if (lu.isInvertible()) {
    const Eigen::Matrix3d cov = s2 * lu.inverse();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) fit.covariance[static_cast<std::size_t>(3 * r + c)] = cov(r, c);
    }
  } else {
    fit.covariance.fill(kNaN);
    fit.diagnostics = "singular normal matrix; covariance unavailable";
  }
  if (!fit.converged) fit.diagnostics = "iteration limit reached";
  return fit;
}

double fidelity_from_decay(double p) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("decay must lie in [0, 1]");
  return (1.0 + p) / 2.0;
}

Estimate fidelity_from_fit(const ExpFit& fit) {
  return {fidelity_from_decay(fit.decay), fit.decay_stderr() / 2.0};
}

Estimate jackknife_fidelity(std::span<const double> m_values,
                            std::span<const std::vector<double>> seed_curves) {
  const std::size_t n = seed_curves.size();
  if (n < 2) throw std::invalid_argument("jackknife needs at least 2 seeds");
  const std::size_t len = m_values.size();
  std::vector<double> total(len, 0.0);
  for (const auto& c : seed_curves) {
    if (c.size() != len) throw std::invalid_argument("seed curve length mismatch");
    for (std::size_t i = 0; i < len; ++i) total[i] += c[i];
  }
  std::vector<double> mean(len);
  for (std::size_t i = 0; i < len; ++i) mean[i] = total[i] / static_cast<double>(n);
  Estimate out;
  out.value = fidelity_from_decay(fit_exp_offset(m_values, mean).decay);

  std::vector<double> leave_one(n);
  std::vector<double> curve(len);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < len; ++i) {
      curve[i] = (total[i] - seed_curves[k][i]) / static_cast<double>(n - 1);
    }
    leave_one[k] = fidelity_from_decay(fit_exp_offset(m_values, curve).decay);
  }
  double avg = 0;
  for (double f : leave_one) avg += f;
  avg /= static_cast<double>(n);
  double ss = 0;
  for (double f : leave_one) ss += (f - avg) * (f - avg);
  out.error = std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
  return out;
}

double t1_limit_fidelity(double t1, double tp, double np_mean) {
  if (!(t1 > 0) || !(tp > 0) || !(np_mean > 0)) {
    throw std::invalid_argument("t1, tp and np_mean must be > 0");
  }
  const double per_pulse = (3.0 + 2.0 * std::exp(-tp / (2.0 * t1)) + std::exp(-tp / t1)) / 6.0;
  return std::pow(per_pulse, np_mean);
}

// ---------------------------------------------------------------------------

double leakage_model(double m, double kappa, double t21, double np_mean, double tp) {
  return kappa * t21 * -std::expm1(-m * np_mean * tp / t21);
}

double rate_step(double p2, double kappa, double t21, double np_mean, double tp) {
  const double dt = tp * np_mean;
  return p2 + dt * kappa - dt / t21 * p2;
}

LeakageFit fit_leakage(std::span<const double> m_values, std::span<const double> p2_values,
                       double np_mean, double tp) {
  check_series(m_values, p2_values);
  if (!(np_mean > 0) || !(tp > 0)) throw std::invalid_argument("np_mean and tp must be > 0");
  const std::size_t n = m_values.size();
  LeakageFit out;
  out.np_mean = np_mean;
  out.tp = tp;

  // Aggregate pulse time per point: y = a (1 - exp(-t / tau)), kappa = a / tau.
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = m_values[i] * np_mean * tp;
  const auto& y = p2_values;

  if (std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; })) {
    out.t21 = kNaN;
    out.t21_identifiable = false;
    return out;
  }

  double t_min = std::numeric_limits<double>::infinity(), t_max = 0;
  for (double v : t) {
    if (v > 0) t_min = std::min(t_min, v);
    t_max = std::max(t_max, v);
  }
  if (!(t_max > 0)) throw std::invalid_argument("m_values must include a positive length");

  // Grid over tau with the linear amplitude solved in closed form.
  auto best_amplitude = [&](double tau, double& sse) {
    double sfy = 0, sff = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double f = -std::expm1(-t[i] / tau);
      sfy += f * y[i];
      sff += f * f;
    }
    const double a = sff > 0 ? sfy / sff : 0.0;
    sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = a * -std::expm1(-t[i] / tau) - y[i];
      sse += r * r;
    }
    return a;
  };
  const double lo = std::log(t_min / 10), hi = std::log(t_max * 1e3);
  constexpr int kGrid = 400;
  double best_tau = 0, best_sse = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k <= kGrid; ++k) {
    const double tau = std::exp(lo + (hi - lo) * k / kGrid);
    double sse = 0;
    best_amplitude(tau, sse);
    if (sse < best_sse) {
      best_sse = sse;
      best_tau = tau;
      best_k = k;
    }
  }
  double sse0 = 0;
  const double a0 = best_amplitude(best_tau, sse0);

  // Refine (a, log tau).
  auto model = [&](const Eigen::Vector2d& q, Eigen::VectorXd& r,
                   Eigen::Matrix<double, Eigen::Dynamic, 2>& jac) {
    const double tau = std::exp(q(1));
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double e = std::exp(-t[i] / tau);
      r(row) = q(0) * (1 - e) - y[i];
      jac(row, 0) = 1 - e;
      jac(row, 1) = -q(0) * e * t[i] / tau;
    }
  };
  auto project = [&](Eigen::Vector2d q) {
    q(1) = std::clamp(q(1), lo - 5, hi + 5);
    return q;
  };
  const auto lm =
      levenberg_marquardt<2>(Eigen::Vector2d(a0, std::log(best_tau)), n, model, project);
  const double a = lm.params(0);
  const double tau = std::exp(lm.params(1));

  out.kappa = std::max(0.0, a / tau);
  out.kappa_per_clifford = out.kappa * tp * np_mean;
  out.t21 = tau;
  out.t21_identifiable = best_k < kGrid && tau < t_max * 1e2;
  if (!out.t21_identifiable) out.t21 = kNaN;
  out.converged = lm.converged;
  out.rms_residual = std::sqrt(lm.sse / static_cast<double>(n));
  return out;
}

// ---------------------------------------------------------------------------

PopCalib forward_signals(double v0, double v1, double v2, const Populations& p) {
  PopCalib c;
  c.v0 = v0;
  c.v1 = v1;
  c.v2 = v2;
  c.s = p.p0 * v0 + p.p1 * v1 + p.p2 * v2;
  c.s_prime = p.p1 * v0 + p.p0 * v1 + p.p2 * v2;
  return c;
}

Populations extract_populations(const PopCalib& c) {
  const double a = c.v0 - c.v2;
  const double b = c.v1 - c.v2;
  const double det = a * a - b * b;
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  if (!std::isfinite(det) || std::abs(det) <= 1e-12 * scale * scale) {
    throw std::invalid_argument("singular calibration: need v0 != v1 and v0 + v1 != 2 v2");
  }
  const double r0 = c.s - c.v2;
  const double r1 = c.s_prime - c.v2;
  Populations p;
  p.p0 = (a * r0 - b * r1) / det;
  p.p1 = (a * r1 - b * r0) / det;
  p.p2 = 1.0 - p.p0 - p.p1;
  return p;
}

InterleavedFidelity interleaved_gate_fidelity(double p_interleaved, double p_reference) {
  auto in_range = [](double p) { return p > 0 && p <= 1; };
  if (!in_range(p_interleaved) || !in_range(p_reference)) {
    throw std::invalid_argument("decays must lie in (0, 1]");
  }
  InterleavedFidelity out;
  out.fidelity = 1.0 - (1.0 - p_interleaved / p_reference) / 2.0;
  out.unphysical = p_interleaved > p_reference;
  return out;
}

}  // namespace sbcast
