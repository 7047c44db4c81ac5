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
#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sbcast {

/// The nine primitive rotations. Non-identity pulses are exp(-i θ σ_a / 2)
/// with a ∈ {x, y} and θ ∈ {±π, ±π/2}.
enum class Pulse : std::uint8_t {
  Identity,
  Xpi,
  Ypi,
  XpiOver2,
  YpiOver2,
  XminusPi,
  YminusPi,
  XminusPiOver2,
  YminusPiOver2,
};

inline constexpr std::array<Pulse, 9> kAllPulses = {
    Pulse::Identity,      Pulse::Xpi,          Pulse::Ypi,
    Pulse::XpiOver2,      Pulse::YpiOver2,     Pulse::XminusPi,
    Pulse::YminusPi,      Pulse::XminusPiOver2, Pulse::YminusPiOver2,
};

enum class Axis : std::uint8_t { None, X, Y };

struct Rotation {
  Axis axis;
  double angle;  // radians, signed
};

Rotation rotation_of(Pulse p);

/// Pulse that undoes `p` exactly (Xpi <-> XminusPi, XpiOver2 <-> XminusPiOver2).
Pulse inverse_pulse(Pulse p);

/// True when `b` undoes `a` up to global phase (Xpi followed by Xpi counts).
bool cancels(Pulse a, Pulse b);

/// Wire names: "I", "X180", "Y180", "X90", "Y90", "X-180", "Y-180", "X-90",
/// "Y-90".
std::string_view pulse_name(Pulse p);
std::optional<Pulse> parse_pulse(std::string_view name);

/// Row-major 2x2 complex matrix.
struct Unitary2 {
  std::array<std::complex<double>, 4> m{};

  static Unitary2 identity();

  const std::complex<double>& operator()(int r, int c) const {
    return m[static_cast<std::size_t>(2 * r + c)];
  }
  std::complex<double>& operator()(int r, int c) {
    return m[static_cast<std::size_t>(2 * r + c)];
  }

  Unitary2 adjoint() const;
  friend Unitary2 operator*(const Unitary2& a, const Unitary2& b);
};

Unitary2 rotation_unitary(Axis axis, double angle);
Unitary2 pulse_unitary(Pulse p);

/// Left-to-right product: the first pulse acts first, so the result is
/// U_last ... U_first.
Unitary2 product_of(std::span<const Pulse> pulses);

/// |tr(U†V)| == 2 within `tol`.
bool equal_up_to_phase(const Unitary2& u, const Unitary2& v,
                       double tol = 1e-9);

/// Single-qubit Clifford label in [1, 24], in decomposition-table row order.
class CliffordId {
 public:
  static constexpr int kCount = 24;

  /// Throws std::out_of_range outside [1, 24].
  explicit CliffordId(int value);

  static constexpr CliffordId identity() { return CliffordId(Unchecked{}, 1); }
  static CliffordId from_index(std::size_t index) {
    return CliffordId(static_cast<int>(index) + 1);
  }

  constexpr int value() const { return value_; }
  constexpr std::size_t index() const {
    return static_cast<std::size_t>(value_ - 1);
  }
  constexpr bool is_identity() const { return value_ == 1; }

  friend constexpr auto operator<=>(CliffordId, CliffordId) = default;

 private:
  struct Unchecked {};
  constexpr CliffordId(Unchecked, int value) : value_(value) {}
  int value_;
};

/// All 24 ids in ascending order.
const std::array<CliffordId, 24>& all_cliffords();

const Unitary2& clifford_unitary(CliffordId c);

std::optional<CliffordId> clifford_of_unitary(const Unitary2& u);

/// Absent only if the table or rotation convention is broken; every product
/// of primitive pulses is a Clifford.
std::optional<CliffordId> clifford_of_pulses(std::span<const Pulse> pulses);

/// The Clifford equal to U_second · U_first (`first` applied first).
CliffordId compose(CliffordId first, CliffordId second);
CliffordId inverse(CliffordId c);

/// The gate that returns the cumulative effect of `sequence` to identity.
CliffordId recovery_clifford(std::span<const CliffordId> sequence);

/// Minimal-set decomposition, verbatim from the canonical table. The identity
/// row is the single `Identity` pulse.
std::span<const Pulse> minimal_decomposition(CliffordId c);

/// Mean minimal-set length over the 24 Cliffords (identity counts as 1).
double mean_minimal_length();

/// Which of the five round primitives fire, in primitive order.
struct MarkerMask5 {
  std::array<bool, 5> bits{};

  int count() const;
  friend bool operator==(const MarkerMask5&, const MarkerMask5&) = default;
};

/// Normal round: X90, Y90, X90, X-180, Y-180.
/// Inverted round: X180, Y180, X-90, Y-90, X-90.
const std::array<Pulse, 5>& five_primitives(bool inverted);

MarkerMask5 five_primitive_mask(CliffordId c, bool inverted);

/// Subset search over the 32 masks of a primitive round: the first mask (by
/// popcount, then by bit tuple read as a binary number) whose selected pulses
/// compose to `c`. Used to regenerate the frozen inverted-round table.
MarkerMask5 search_five_primitive_mask(CliffordId c, bool inverted);

std::vector<Pulse> masked_pulses(const std::array<Pulse, 5>& primitives,
                                 const MarkerMask5& mask);

}  // namespace sbcast
