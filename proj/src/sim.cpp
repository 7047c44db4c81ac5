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

#include "sbcast/sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "parallel.hpp"
#include "sbcast/rng.hpp"

namespace sbcast {

using cplx = std::complex<double>;

void validate_model(const QubitModel& model) {
  if (!(model.t1_ns > 0)) throw std::invalid_argument("t1 must be > 0");
  if (!(model.slot_ns > 0) || !std::isfinite(model.slot_ns)) {
    throw std::invalid_argument("slot_ns must be finite and > 0");
  }
  if (!(model.cross_ratio >= 0 && model.cross_ratio < 1)) {
    throw std::invalid_argument("cross_ratio must lie in [0, 1)");
  }
  if (!(model.over_ratio >= 0) || !std::isfinite(model.over_ratio)) {
    throw std::invalid_argument("over_ratio must be finite and >= 0");
  }
}

QubitState QubitState::ground() { return {{1.0, 0.0, 0.0, 0.0}}; }
QubitState QubitState::excited() { return {{0.0, 0.0, 0.0, 1.0}}; }

bool QubitState::is_valid(double tol) const {
  if (std::abs(rho[0].imag()) > tol || std::abs(rho[3].imag()) > tol) return false;
  if (std::abs(rho[1] - std::conj(rho[2])) > tol) return false;
  if (std::abs(rho[0].real() + rho[3].real() - 1.0) > tol) return false;
  // 2x2 Hermitian with unit trace: PSD iff both diagonals and det are >= 0.
  const double det = rho[0].real() * rho[3].real() - std::norm(rho[1]);
  return rho[0].real() >= -tol && rho[3].real() >= -tol && det >= -tol;
}

QubitState apply_unitary(const QubitState& state, const Unitary2& u) {
  const auto& r = state.rho;
  const auto& m = u.m;
  // t = U rho
  const std::array<cplx, 4> t = {m[0] * r[0] + m[1] * r[2], m[0] * r[1] + m[1] * r[3],
                                 m[2] * r[0] + m[3] * r[2], m[2] * r[1] + m[3] * r[3]};
  // t U†
  QubitState out;
  out.rho[0] = t[0] * std::conj(m[0]) + t[1] * std::conj(m[1]);
  out.rho[1] = t[0] * std::conj(m[2]) + t[1] * std::conj(m[3]);
  out.rho[2] = t[2] * std::conj(m[0]) + t[3] * std::conj(m[1]);
  out.rho[3] = t[2] * std::conj(m[2]) + t[3] * std::conj(m[3]);
  return out;
}

QubitState apply_pulse(const QubitState& state, Pulse p, double angle_scale) {
  const Rotation r = rotation_of(p);
  if (r.axis == Axis::None || angle_scale == 0.0) return state;
  return apply_unitary(state, rotation_unitary(r.axis, r.angle * angle_scale));
}

QubitState relax(const QubitState& state, double dt_ns, double t1_ns) {
  const double decay = std::exp(-dt_ns / t1_ns);
  if (decay == 1.0) return state;
  const double coherence = std::sqrt(decay);
  QubitState out;
  const double p1 = state.rho[3].real() * decay;
  out.rho[0] = 1.0 - p1;
  out.rho[3] = p1;
  out.rho[1] = state.rho[1] * coherence;
  out.rho[2] = state.rho[2] * coherence;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool plays_full_train(Scheme s) {
  return s == Scheme::FivePrimitives || s == Scheme::FivePrimitivesSymmetric;
}

int round_parity(Scheme s, int round_index) {
  return s == Scheme::FivePrimitivesSymmetric ? (round_index & 1) : 0;
}

// Compiles rounds for one worker; optimal schedules are cached by combo.
class RoundSource {
 public:
  explicit RoundSource(Scheme scheme) : scheme_(scheme) {}

  const Schedule& round(std::span<const CliffordId> combo, int round_index) {
    if (scheme_ != Scheme::Compiled) {
      scratch_ = compile_round(combo, scheme_, round_index);
      return scratch_;
    }
    if (combo.size() > 12) {
      scratch_ = compiler_.compile(combo);
      return scratch_;
    }
    std::uint64_t key = combo.size();
    for (CliffordId c : combo) key = (key << 5) | c.index();
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, compiler_.compile(combo)).first;
    return it->second;
  }

 private:
  Scheme scheme_;
  OptimalCompiler compiler_;
  std::unordered_map<std::uint64_t, Schedule> cache_;
  Schedule scratch_;
};

// Plays one round. route[q] is qubit q's column in the schedule masks, or -1
// for a qubit that is never routed.
void play_round(std::vector<QubitState>& states, std::span<const QubitModel> models,
                std::span<const int> route, const Schedule& schedule, Scheme scheme,
                int round_index) {
  const bool full_train = plays_full_train(scheme);
  const auto& train = five_primitives(round_parity(scheme, round_index) == 1);
  std::size_t next = 0;
  for (int slot = 0; slot < schedule.n_slots; ++slot) {
    Pulse pulse = Pulse::Identity;
    const std::vector<bool>* mask = nullptr;
    if (next < schedule.events.size() && schedule.events[next].slot == slot) {
      pulse = schedule.events[next].pulse;
      mask = &schedule.events[next].mask;
      ++next;
    } else if (full_train && slot < 5) {
      pulse = train[static_cast<std::size_t>(slot)];
    }
    for (std::size_t q = 0; q < states.size(); ++q) {
      if (pulse != Pulse::Identity) {
        const bool routed =
            mask && route[q] >= 0 && (*mask)[static_cast<std::size_t>(route[q])];
        const double scale = routed ? models[q].over_ratio : models[q].cross_ratio;
        states[q] = apply_pulse(states[q], pulse, scale);
      }
      states[q] = relax(states[q], models[q].slot_ns, models[q].t1_ns);
    }
  }
}

void validate_rb(std::span<const QubitModel> models, const RbOptions& options) {
  if (models.empty()) throw std::invalid_argument("at least one qubit is required");
  for (const QubitModel& m : models) validate_model(m);
  if (options.n_seeds < 1) throw std::invalid_argument("n_seeds must be >= 1");
  if (options.m_values.empty()) throw std::invalid_argument("m_values is empty");
  int last = 0;
  for (int m : options.m_values) {
    if (m <= last) {
      throw std::invalid_argument("m_values must be positive and strictly increasing");
    }
    last = m;
  }
}

struct SeedRun {
  std::vector<double> p0;  // [qubit * n_points + point]
  std::vector<double> p1;
  std::uint64_t slots = 0;
};

SeedRun run_seed(std::span<const QubitModel> models, std::span<const int> route,
                 std::size_t n_driven, const RbOptions& options, RoundSource& source,
                 std::uint64_t seed_index) {
  const std::size_t n_q = models.size();
  const std::size_t n_points = options.m_values.size();
  SeedRun out;
  out.p0.resize(n_q * n_points);
  out.p1.resize(n_q * n_points);

  Rng rng = Rng::stream(options.seed, seed_index);
  std::vector<QubitState> states(n_q, QubitState::ground());
  std::vector<CliffordId> combo(n_driven, CliffordId::identity());
  std::vector<CliffordId> net(n_driven, CliffordId::identity());
  std::vector<CliffordId> recovery(n_driven, CliffordId::identity());

  const int max_m = options.m_values.back();
  std::size_t point = 0;
  for (int k = 0; k < max_m; ++k) {
    for (std::size_t d = 0; d < n_driven; ++d) {
      combo[d] = CliffordId::from_index(rng.below(CliffordId::kCount));
      net[d] = compose(net[d], combo[d]);
    }
    const Schedule& round = source.round(combo, k);
    out.slots += static_cast<std::uint64_t>(round.n_slots);
    play_round(states, models, route, round, options.scheme, k);

    if (k + 1 != options.m_values[point]) continue;
    for (std::size_t d = 0; d < n_driven; ++d) recovery[d] = inverse(net[d]);
    std::vector<QubitState> closed = states;
    play_round(closed, models, route, source.round(recovery, k + 1), options.scheme,
               k + 1);
    for (std::size_t q = 0; q < n_q; ++q) {
      out.p0[q * n_points + point] = closed[q].p0();
      out.p1[q * n_points + point] = closed[q].p1();
    }
    ++point;
  }
  return out;
}

}  // namespace

RbResult run_rb(std::span<const QubitModel> models, const RbOptions& options) {
  validate_rb(models, options);
  const std::optional<std::size_t> idle = options.idle_qubit;
  const std::size_t n_q = models.size();
  if (idle && *idle >= n_q) throw std::invalid_argument("idle qubit out of range");
  std::vector<int> route(n_q);
  int column = 0;
  for (std::size_t q = 0; q < n_q; ++q) {
    route[q] = (idle && *idle == q) ? -1 : column++;
  }
  const auto n_driven = static_cast<std::size_t>(column);
  if (n_driven == 0) throw std::invalid_argument("no driven qubit");

  const auto n_seeds = static_cast<std::uint64_t>(options.n_seeds);
  std::vector<SeedRun> runs(n_seeds);
  const unsigned workers = detail::worker_count(options.threads, n_seeds);
  detail::run_workers(workers, [&](unsigned w) {
    RoundSource source(options.scheme);
    for (std::uint64_t s = w; s < n_seeds; s += workers) {
      runs[s] = run_seed(models, route, n_driven, options, source, s);
    }
  });

  const std::size_t n_points = options.m_values.size();
  RbResult result;
  result.curves.resize(n_q);
  std::uint64_t slots = 0;
  for (const SeedRun& r : runs) slots += r.slots;
  result.mean_round_slots =
      static_cast<double>(slots) /
      (static_cast<double>(n_seeds) * static_cast<double>(options.m_values.back()));
  for (std::size_t q = 0; q < n_q; ++q) {
    RbCurve& c = result.curves[q];
    c.m_values = options.m_values;
    c.seeds = options.n_seeds;
    c.p0.assign(n_points, 0.0);
    c.p1.assign(n_points, 0.0);
    c.seed_p0.reserve(runs.size());
    for (const SeedRun& r : runs) {
      const auto first = r.p0.begin() + static_cast<std::ptrdiff_t>(q * n_points);
      c.seed_p0.emplace_back(first, first + static_cast<std::ptrdiff_t>(n_points));
      for (std::size_t i = 0; i < n_points; ++i) {
        c.p0[i] += r.p0[q * n_points + i];
        c.p1[i] += r.p1[q * n_points + i];
      }
    }
    for (std::size_t i = 0; i < n_points; ++i) {
      c.p0[i] /= static_cast<double>(n_seeds);
      c.p1[i] /= static_cast<double>(n_seeds);
    }
  }
  return result;
}

RbCurve run_idle_crossdrive(std::span<const QubitModel> models, std::size_t idle_qubit,
                            const RbOptions& options) {
  if (models.size() < 2) {
    throw std::invalid_argument("cross-drive needs a driven and an idle qubit");
  }
  RbOptions with_idle = options;
  with_idle.idle_qubit = idle_qubit;
  return run_rb(models, with_idle).curves.at(idle_qubit);
}

std::vector<int> log_spaced_lengths(int max_m, int count) {
  if (max_m < 1 || count < 2) {
    throw std::invalid_argument("need max_m >= 1 and count >= 2");
  }
  std::vector<int> out;
  const double top = std::log(static_cast<double>(max_m));
  for (int i = 0; i < count; ++i) {
    const int m = static_cast<int>(std::lround(std::exp(top * i / (count - 1))));
    if (out.empty() || m > out.back()) out.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------------------

const std::array<std::pair<Pulse, Pulse>, 21>& allxy_pairs() {
  using P = Pulse;
  static const std::array<std::pair<Pulse, Pulse>, 21> pairs = {{
      {P::Identity, P::Identity},  {P::Xpi, P::Xpi},
      {P::Ypi, P::Ypi},            {P::Xpi, P::Ypi},
      {P::Ypi, P::Xpi},            {P::Identity, P::XpiOver2},
      {P::Identity, P::YpiOver2},  {P::XpiOver2, P::YpiOver2},
      {P::YpiOver2, P::XpiOver2},  {P::XpiOver2, P::Ypi},
      {P::YpiOver2, P::Xpi},       {P::Xpi, P::YpiOver2},
      {P::Ypi, P::XpiOver2},       {P::XpiOver2, P::Xpi},
      {P::Xpi, P::XpiOver2},       {P::YpiOver2, P::Ypi},
      {P::Ypi, P::YpiOver2},       {P::Identity, P::Xpi},
      {P::Identity, P::Ypi},       {P::XpiOver2, P::XpiOver2},
      {P::YpiOver2, P::YpiOver2},
  }};
  return pairs;
}

const std::array<double, 21>& allxy_ideal() {
  static const std::array<double, 21> ideal = {
      0, 0, 0, 0, 0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5,
      0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 1, 1, 1, 1};
  return ideal;
}

namespace {

// exp(-i θ/2 (cos φ σx + sin φ σy))
Unitary2 tilted_rotation(double theta, double phi) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const cplx i{0.0, 1.0};
  Unitary2 u;
  u.m = {c, -i * s * std::exp(-i * phi), -i * s * std::exp(i * phi), c};
  return u;
}

QubitState apply_with_errors(const QubitState& state, Pulse p, const AllxyErrors& e) {
  const Rotation r = rotation_of(p);
  if (r.axis == Axis::None) return state;
  const double axis_phase = r.axis == Axis::X ? 0.0 : std::numbers::pi / 2 + e.phase_error;
  return apply_unitary(state, tilted_rotation(r.angle * e.amplitude_scale, axis_phase));
}

}  // namespace

std::array<double, 21> simulate_allxy(const AllxyErrors& errors) {
  std::array<double, 21> out{};
  const auto& pairs = allxy_pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    QubitState s = QubitState::ground();
    s = apply_with_errors(s, pairs[i].first, errors);
    s = apply_with_errors(s, pairs[i].second, errors);
    out[i] = s.p1();
  }
  return out;
}

std::vector<double> simulate_amp_calibration(double over_ratio, int n_max) {
  if (!(over_ratio > 0)) throw std::invalid_argument("over_ratio must be > 0");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  QubitState s = apply_pulse(QubitState::ground(), Pulse::XpiOver2, over_ratio);
  for (int n = 0; n <= n_max; ++n) {
    out.push_back(s.p1());
    s = apply_pulse(s, Pulse::Xpi, over_ratio);
    s = apply_pulse(s, Pulse::Xpi, over_ratio);
  }
  return out;
}

double initial_slope(std::span<const double> curve, int points) {
  const auto n = std::min<std::size_t>(curve.size(), static_cast<std::size_t>(points));
  if (n < 2) throw std::invalid_argument("need at least two points for a slope");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += static_cast<double>(i);
    my += curve[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - mx;
    sxy += dx * (curve[i] - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

// ---------------------------------------------------------------------------

double exchange_rate(const ExchangeParams& params) {
  return 2.0 * std::numbers::pi * params.j_over_2pi_khz * 1e-3;
}

namespace {

using Mat4 = Eigen::Matrix4cd;

// Basis index 2a + b, a = qubit A excited.
Mat4 on_a(const Eigen::Matrix2cd& k) {
  Mat4 m = Mat4::Zero();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      m(2 * r, 2 * c) = k(r, c);
      m(2 * r + 1, 2 * c + 1) = k(r, c);
    }
  }
  return m;
}

Mat4 on_b(const Eigen::Matrix2cd& k) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<2, 2>() = k;
  m.bottomRightCorner<2, 2>() = k;
  return m;
}

struct Damping {
  Mat4 k0, k1;
  bool active = false;
};

Damping damping(double dt_us, double t1_us, bool qubit_a) {
  Damping d;
  const double gamma = 1.0 - std::exp(-dt_us / t1_us);
  d.active = gamma > 0;
  Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  d.k0 = qubit_a ? on_a(k0) : on_b(k0);
  d.k1 = qubit_a ? on_a(k1) : on_b(k1);
  return d;
}

void apply(Mat4& rho, const Damping& d) {
  if (!d.active) return;
  rho = d.k0 * rho * d.k0.adjoint() + d.k1 * rho * d.k1.adjoint();
}

}  // namespace

SwapTrace exchange_swap(const ExchangeParams& params, std::span<const double> t_grid_us,
                        double max_step_ns) {
  if (!(params.j_over_2pi_khz >= 0)) throw std::invalid_argument("J must be >= 0");
  if (!(params.t1_a_us > 0) || !(params.t1_b_us > 0)) {
    throw std::invalid_argument("t1 must be > 0");
  }
  if (!(max_step_ns > 0)) throw std::invalid_argument("max_step_ns must be > 0");
  for (std::size_t i = 0; i < t_grid_us.size(); ++i) {
    if (t_grid_us[i] < 0 || (i > 0 && t_grid_us[i] < t_grid_us[i - 1])) {
      throw std::invalid_argument("time grid must be non-negative and non-decreasing");
    }
  }

  const double j = exchange_rate(params);
  Mat4 rho = Mat4::Zero();
  rho(2, 2) = 1.0;  // |excited, ground>

  SwapTrace out;
  double t = 0.0;
  for (double target : t_grid_us) {
    const double span_us = target - t;
    if (span_us > 0) {
      const auto steps =
          static_cast<long>(std::ceil(span_us * 1e3 / max_step_ns - 1e-9));
      const double dt = span_us / static_cast<double>(std::max(1L, steps));
      Mat4 u = Mat4::Identity();
      u(1, 1) = u(2, 2) = std::cos(j * dt);
      u(1, 2) = u(2, 1) = cplx(0.0, -std::sin(j * dt));
      const Damping half_a = damping(dt / 2, params.t1_a_us, true);
      const Damping half_b = damping(dt / 2, params.t1_b_us, false);
      for (long s = 0; s < std::max(1L, steps); ++s) {
        apply(rho, half_a);
        apply(rho, half_b);
        rho = u * rho * u.adjoint();
        apply(rho, half_a);
        apply(rho, half_b);
      }
      t = target;
    }
    out.t_us.push_back(target);
    out.p1_a.push_back(rho(2, 2).real() + rho(3, 3).real());
    out.p1_b.push_back(rho(1, 1).real() + rho(3, 3).real());
  }
  return out;
}

}  // namespace sbcast
