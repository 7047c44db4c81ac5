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

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sbcast/clifford.hpp"

namespace sbcast {

enum class Scheme : std::uint8_t {
  Sequential,
  FivePrimitives,
  FivePrimitivesSymmetric,
  Compiled,
};

/// "sequential", "five-primitives", "five-primitives-symmetric", "compiled".
std::string_view scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

/// One target Clifford per qubit.
using CliffordCombo = std::vector<CliffordId>;

/// Parses "2,13,1". Throws std::invalid_argument on malformed input.
CliffordCombo parse_combo(std::string_view text);

struct PulseEvent {
  Pulse pulse = Pulse::Identity;
  std::vector<bool> mask;  // true = routed to that qubit
  int slot = 0;
};

/// Time-slot metadata of the exported schedule.
struct SlotTiming {
  int slot_ns = 20;
  int pulse_ns = 16;
  int buffer_ns = 4;
};

/// Broadcast pulse program for one Clifford round. `n_slots` is the round's
/// temporal footprint; slots without an event are idle.
struct Schedule {
  int n_qubits = 0;
  Scheme scheme = Scheme::Compiled;
  std::vector<PulseEvent> events;
  int n_slots = 0;
  SlotTiming timing;

  /// The pulses routed to `qubit`, in time order.
  std::vector<Pulse> pulses_for(int qubit) const;
};

/// Checks event invariants (non-empty masks of the right width, strictly
/// increasing slots inside [0, n_slots)) and that every qubit's routed pulses
/// compose to its target.
bool validate_schedule(const Schedule& schedule,
                       std::span<const CliffordId> targets);

/// Each qubit's minimal-set decomposition, one qubit after another. An
/// identity target emits no event but still occupies one idle slot.
Schedule compile_sequential(std::span<const CliffordId> combo);

/// One five-slot round. Parity 0 uses the normal primitives, parity 1 the
/// inverted ones. Primitives routed to nobody are dropped; the round still
/// spans five slots.
Schedule compile_five_primitives(std::span<const CliffordId> combo,
                                 int round_parity = 0);

/// How the four-pulse pass decides whether the other qubits fit inside a
/// candidate four-pulse sequence.
enum class FourPulsePass : std::uint8_t {
  /// Any subsequence (including the empty one for identity) counts. Gives the
  /// true minimum.
  Complete,
  /// Every other qubit position must match one of its <= 3-pulse
  /// decompositions as a subsequence, and an identity target is carried as
  /// its single `I` pulse so it never fits. This is the tabulated census
  /// convention.
  PerQubit,
};

struct OptimalOptions {
  FourPulsePass four_pulse_pass = FourPulsePass::Complete;
};

struct SearchStats {
  std::uint64_t decomposition_choices = 0;
  std::uint64_t recursion_nodes = 0;
  bool lower_bound_exit = false;
  bool four_pulse_pass_used = false;
};

/// Minimum-length shared pulse sequence over all decomposition choices and
/// interleavings, found by branch-and-bound:
///   - pruning when |emitted| + distinct pulses left >= the best length known,
///     starting from the five-primitives bound of 5;
///   - decompositions tried shortest first;
///   - a lower bound from the optima of the (n-1)-qubit sub-combinations,
///     with early exit once it is met;
///   - <= 3-pulse decompositions first, then a linear four-pulse pass only
///     when the lower bound is <= 4 and nothing shorter than 5 was found;
///   - all work keyed on the sorted Clifford multiset.
///
/// Sub-combination optima are memoized, so an instance is not thread-safe.
class OptimalCompiler {
 public:
  explicit OptimalCompiler(OptimalOptions options = {});

  /// Minimum pulse count N_P. The all-identity combo gives 0.
  int pulse_count(std::span<const CliffordId> combo);

  /// Schedule realizing pulse_count(combo) events. When nothing shorter than
  /// five exists the normal five-primitives round is returned.
  Schedule compile(std::span<const CliffordId> combo);

  const SearchStats& last_stats() const { return stats_; }
  std::size_t cache_size() const { return memo_.size(); }

 private:
  struct Solution;

  int lower_bound(const std::vector<std::uint8_t>& sorted);
  int solve_sorted(const std::vector<std::uint8_t>& sorted, Solution* out);

  OptimalOptions options_;
  std::unordered_map<std::uint64_t, std::uint8_t> memo_;
  SearchStats stats_;
};

/// compile_optimal with a fresh compiler.
Schedule compile_optimal(std::span<const CliffordId> combo,
                         OptimalOptions options = {});

/// Dispatch on scheme. `round_index` selects the primitive parity of the
/// symmetric scheme (even = normal, odd = inverted).
Schedule compile_round(std::span<const CliffordId> combo, Scheme scheme,
                       int round_index = 0);

enum class NpMode : std::uint8_t { Exact, Sampled };

struct NpStats {
  int n = 0;
  double mean_np = 0.0;
  double std_error = 0.0;
  NpMode mode = NpMode::Exact;
  std::uint64_t samples = 0;
  /// Exact mode: sum of costs over all 24^n combos.
  std::uint64_t total_cost = 0;
};

struct CensusOptions {
  FourPulsePass four_pulse_pass = FourPulsePass::PerQubit;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Cost of one round in the census: an all-identity round still takes one
/// slot, so the cost is max(1, N_P).
int census_cost(int pulse_count);

/// Average round cost over all 24^n combos, evaluated on sorted multisets
/// weighted by their number of orderings. Throws std::invalid_argument
/// outside 1 <= n <= 5.
NpStats mean_np_exact(int n, CensusOptions options = {});

/// Mean and standard error over `samples` uniform combos. Throws
/// std::invalid_argument if samples < 100 or n < 1.
NpStats mean_np_sampled(int n, std::uint64_t samples, std::uint64_t seed,
                        CensusOptions options = {});

}  // namespace sbcast
