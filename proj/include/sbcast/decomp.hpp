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
#include <cstddef>
#include <span>
#include <vector>

#include "sbcast/clifford.hpp"

namespace sbcast {

/// Search alphabet for decompositions, in enumeration order. X-180 and Y-180
/// are the same rotations as X180 and Y180 up to global phase, so they are
/// not separate letters.
inline constexpr std::array<Pulse, 6> kBasisPulses = {
    Pulse::Xpi,      Pulse::Ypi,           Pulse::XpiOver2,
    Pulse::YpiOver2, Pulse::XminusPiOver2, Pulse::YminusPiOver2,
};

inline constexpr std::size_t kMaxDecompositionLength = 4;

struct Decomposition {
  CliffordId clifford;
  std::vector<Pulse> pulses;
};

/// Every sequence of at most four basis pulses that composes to `c` and has
/// no adjacent cancelling pair. Ascending length, then lexicographic in
/// kBasisPulses order. The identity Clifford also lists the empty sequence.
/// Tables are built once and shared.
std::span<const Decomposition> enumerate_decompositions(CliffordId c);

struct DecompositionCensus {
  std::array<std::size_t, 24> counts{};
  double mean = 0.0;
};

DecompositionCensus decomposition_census();

}  // namespace sbcast
