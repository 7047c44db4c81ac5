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

#include "sbcast/decomp.hpp"

#include <stdexcept>

namespace sbcast {

namespace {

using Table = std::array<std::vector<Decomposition>, 24>;

void extend(std::vector<Pulse>& prefix, std::size_t length, Table& table) {
  if (prefix.size() == length) {
    auto c = clifford_of_pulses(prefix);
    if (!c) throw std::logic_error("pulse product is not a Clifford");
    table[c->index()].push_back(Decomposition{*c, prefix});
    return;
  }
  for (Pulse p : kBasisPulses) {
    if (!prefix.empty() && cancels(prefix.back(), p)) continue;
    prefix.push_back(p);
    extend(prefix, length, table);
    prefix.pop_back();
  }
}

Table build() {
  Table table;
  table[0].push_back(Decomposition{CliffordId::identity(), {}});
  std::vector<Pulse> prefix;
  for (std::size_t length = 1; length <= kMaxDecompositionLength; ++length) {
    extend(prefix, length, table);
  }
  return table;
}

const Table& table() {
  static const Table t = build();
  return t;
}

}  // namespace

std::span<const Decomposition> enumerate_decompositions(CliffordId c) {
  return table()[c.index()];
}

DecompositionCensus decomposition_census() {
  DecompositionCensus census;
  std::size_t total = 0;
  for (std::size_t i = 0; i < 24; ++i) {
    census.counts[i] = table()[i].size();
    total += census.counts[i];
  }
  census.mean = static_cast<double>(total) / 24.0;
  return census;
}

}  // namespace sbcast
