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

#include "sbcast/clifford.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace sbcast {

namespace {

using P = Pulse;
constexpr double kPi = std::numbers::pi;

// Minimal-set decompositions, one row per Clifford id, applied left to right.
const std::array<std::vector<Pulse>, 24> kMinimal = {{
    {P::Identity},
    {P::YpiOver2, P::XpiOver2},
    {P::XminusPiOver2, P::YminusPiOver2},
    {P::Xpi},
    {P::YminusPiOver2, P::XminusPiOver2},
    {P::XpiOver2, P::YminusPiOver2},
    {P::Ypi},
    {P::YminusPiOver2, P::XpiOver2},
    {P::XpiOver2, P::YpiOver2},
    {P::Xpi, P::Ypi},
    {P::YpiOver2, P::XminusPiOver2},
    {P::XminusPiOver2, P::YpiOver2},
    {P::YpiOver2, P::Xpi},
    {P::XminusPiOver2},
    {P::XpiOver2, P::YminusPiOver2, P::XminusPiOver2},
    {P::YminusPiOver2},
    {P::XpiOver2},
    {P::XpiOver2, P::YpiOver2, P::XpiOver2},
    {P::YminusPiOver2, P::Xpi},
    {P::XpiOver2, P::Ypi},
    {P::XpiOver2, P::YminusPiOver2, P::XpiOver2},
    {P::YpiOver2},
    {P::XminusPiOver2, P::Ypi},
    {P::XpiOver2, P::YpiOver2, P::XminusPiOver2},
}};

constexpr std::array<Pulse, 5> kNormalRound = {
    P::XpiOver2, P::YpiOver2, P::XpiOver2, P::XminusPi, P::YminusPi};
constexpr std::array<Pulse, 5> kInvertedRound = {
    P::Xpi, P::Ypi, P::XminusPiOver2, P::YminusPiOver2, P::XminusPiOver2};

// Bit strings over the round primitives, first character = first primitive.
constexpr std::array<std::string_view, 24> kNormalMasks = {
    "00000", "01100", "11010", "00010", "01101", "11001",
    "00001", "01111", "11000", "00011", "01110", "11011",
    "01010", "00110", "11101", "01001", "00100", "11100",
    "01011", "10001", "11111", "01000", "10011", "11110",
};

// Generated by search_five_primitive_mask(c, true); regeneration is tested.
constexpr std::array<std::string_view, 24> kInvertedMasks = {
    "00000", "10011", "00110", "10000", "00011", "10110",
    "01000", "11011", "01110", "11000", "01011", "11110",
    "10010", "00001", "10111", "00010", "10001", "00111",
    "11010", "01001", "11111", "01010", "11001", "01111",
};

MarkerMask5 parse_mask(std::string_view bits) {
  MarkerMask5 mask;
  for (std::size_t i = 0; i < 5; ++i) mask.bits[i] = bits[i] == '1';
  return mask;
}

struct GroupTables {
  std::array<Unitary2, 24> unitaries;
  std::array<std::array<std::uint8_t, 24>, 24> compose;  // [first][second]
  std::array<std::uint8_t, 24> inverse;
};

std::optional<std::size_t> match(const std::array<Unitary2, 24>& table,
                                 const Unitary2& u) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (equal_up_to_phase(table[i], u)) return i;
  }
  return std::nullopt;
}

GroupTables build_tables() {
  GroupTables t;
  for (std::size_t i = 0; i < 24; ++i) t.unitaries[i] = product_of(kMinimal[i]);
  for (std::size_t a = 0; a < 24; ++a) {
    for (std::size_t b = 0; b < 24; ++b) {
      auto idx = match(t.unitaries, t.unitaries[b] * t.unitaries[a]);
      if (!idx) throw std::logic_error("Clifford table is not closed");
      t.compose[a][b] = static_cast<std::uint8_t>(*idx);
    }
  }
  for (std::size_t a = 0; a < 24; ++a) {
    auto idx = match(t.unitaries, t.unitaries[a].adjoint());
    if (!idx) throw std::logic_error("Clifford table is not closed");
    t.inverse[a] = static_cast<std::uint8_t>(*idx);
  }
  return t;
}

template <std::size_t... I>
std::array<CliffordId, 24> make_ids(std::index_sequence<I...>) {
  return {CliffordId(static_cast<int>(I) + 1)...};
}

const GroupTables& tables() {
  static const GroupTables t = build_tables();
  return t;
}

}  // namespace

Rotation rotation_of(Pulse p) {
  switch (p) {
    case P::Identity: return {Axis::None, 0.0};
    case P::Xpi: return {Axis::X, kPi};
    case P::Ypi: return {Axis::Y, kPi};
    case P::XpiOver2: return {Axis::X, kPi / 2};
    case P::YpiOver2: return {Axis::Y, kPi / 2};
    case P::XminusPi: return {Axis::X, -kPi};
    case P::YminusPi: return {Axis::Y, -kPi};
    case P::XminusPiOver2: return {Axis::X, -kPi / 2};
    case P::YminusPiOver2: return {Axis::Y, -kPi / 2};
  }
  throw std::invalid_argument("unknown pulse");
}

Pulse inverse_pulse(Pulse p) {
  switch (p) {
    case P::Identity: return P::Identity;
    case P::Xpi: return P::XminusPi;
    case P::Ypi: return P::YminusPi;
    case P::XpiOver2: return P::XminusPiOver2;
    case P::YpiOver2: return P::YminusPiOver2;
    case P::XminusPi: return P::Xpi;
    case P::YminusPi: return P::Ypi;
    case P::XminusPiOver2: return P::XpiOver2;
    case P::YminusPiOver2: return P::YpiOver2;
  }
  throw std::invalid_argument("unknown pulse");
}

bool cancels(Pulse a, Pulse b) {
  return equal_up_to_phase(pulse_unitary(b) * pulse_unitary(a),
                           Unitary2::identity());
}

std::string_view pulse_name(Pulse p) {
  switch (p) {
    case P::Identity: return "I";
    case P::Xpi: return "X180";
    case P::Ypi: return "Y180";
    case P::XpiOver2: return "X90";
    case P::YpiOver2: return "Y90";
    case P::XminusPi: return "X-180";
    case P::YminusPi: return "Y-180";
    case P::XminusPiOver2: return "X-90";
    case P::YminusPiOver2: return "Y-90";
  }
  throw std::invalid_argument("unknown pulse");
}

std::optional<Pulse> parse_pulse(std::string_view name) {
  for (Pulse p : kAllPulses) {
    if (pulse_name(p) == name) return p;
  }
  return std::nullopt;
}

Unitary2 Unitary2::identity() {
  Unitary2 u;
  u.m = {1.0, 0.0, 0.0, 1.0};
  return u;
}

Unitary2 Unitary2::adjoint() const {
  Unitary2 r;
  r.m = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
  return r;
}

Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
  Unitary2 r;
  r.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
  r.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
  r.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
  r.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
  return r;
}

Unitary2 rotation_unitary(Axis axis, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const std::complex<double> i{0.0, 1.0};
  Unitary2 u;
  switch (axis) {
    case Axis::None:
      return Unitary2::identity();
    case Axis::X:  // cos - i sin σx
      u.m = {c, -i * s, -i * s, c};
      return u;
    case Axis::Y:  // cos - i sin σy
      u.m = {c, -s, s, c};
      return u;
  }
  throw std::invalid_argument("unknown axis");
}

Unitary2 pulse_unitary(Pulse p) {
  const Rotation r = rotation_of(p);
  return rotation_unitary(r.axis, r.angle);
}

Unitary2 product_of(std::span<const Pulse> pulses) {
  Unitary2 u = Unitary2::identity();
  for (Pulse p : pulses) u = pulse_unitary(p) * u;
  return u;
}

bool equal_up_to_phase(const Unitary2& u, const Unitary2& v, double tol) {
  const std::complex<double> tr = std::conj(u.m[0]) * v.m[0] +
                                  std::conj(u.m[2]) * v.m[2] +
                                  std::conj(u.m[1]) * v.m[1] +
                                  std::conj(u.m[3]) * v.m[3];
  return std::abs(std::abs(tr) - 2.0) < tol;
}

CliffordId::CliffordId(int value) : value_(value) {
  if (value < 1 || value > kCount) {
    throw std::out_of_range("Clifford id must be in [1, 24], got " +
                            std::to_string(value));
  }
}

const std::array<CliffordId, 24>& all_cliffords() {
  static const std::array<CliffordId, 24> ids =
      make_ids(std::make_index_sequence<24>{});
  return ids;
}

const Unitary2& clifford_unitary(CliffordId c) {
  return tables().unitaries[c.index()];
}

std::optional<CliffordId> clifford_of_unitary(const Unitary2& u) {
  auto idx = match(tables().unitaries, u);
  if (!idx) return std::nullopt;
  return CliffordId::from_index(*idx);
}

std::optional<CliffordId> clifford_of_pulses(std::span<const Pulse> pulses) {
  return clifford_of_unitary(product_of(pulses));
}

CliffordId compose(CliffordId first, CliffordId second) {
  return CliffordId::from_index(tables().compose[first.index()][second.index()]);
}

CliffordId inverse(CliffordId c) {
  return CliffordId::from_index(tables().inverse[c.index()]);
}

CliffordId recovery_clifford(std::span<const CliffordId> sequence) {
  CliffordId net = CliffordId::identity();
  for (CliffordId c : sequence) net = compose(net, c);
  return inverse(net);
}

std::span<const Pulse> minimal_decomposition(CliffordId c) {
  return kMinimal[c.index()];
}

double mean_minimal_length() {
  std::size_t total = 0;
  for (const auto& row : kMinimal) total += row.size();
  return static_cast<double>(total) / 24.0;
}

int MarkerMask5::count() const {
  int n = 0;
  for (bool b : bits) n += b ? 1 : 0;
  return n;
}

const std::array<Pulse, 5>& five_primitives(bool inverted) {
  return inverted ? kInvertedRound : kNormalRound;
}

MarkerMask5 five_primitive_mask(CliffordId c, bool inverted) {
  return parse_mask(inverted ? kInvertedMasks[c.index()]
                             : kNormalMasks[c.index()]);
}

MarkerMask5 search_five_primitive_mask(CliffordId c, bool inverted) {
  const auto& round = five_primitives(inverted);
  for (int popcount = 0; popcount <= 5; ++popcount) {
    for (int code = 0; code < 32; ++code) {
      MarkerMask5 mask;
      for (int i = 0; i < 5; ++i) mask.bits[i] = ((code >> (4 - i)) & 1) != 0;
      if (mask.count() != popcount) continue;
      const auto pulses = masked_pulses(round, mask);
      if (clifford_of_pulses(pulses) == c) return mask;
    }
  }
  throw std::logic_error("primitive round does not generate the Clifford group");
}

std::vector<Pulse> masked_pulses(const std::array<Pulse, 5>& primitives,
                                 const MarkerMask5& mask) {
  std::vector<Pulse> out;
  for (std::size_t i = 0; i < 5; ++i) {
    if (mask.bits[i]) out.push_back(primitives[i]);
  }
  return out;
}

}  // namespace sbcast
