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

#include "sbcast/compiler.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sbcast/decomp.hpp"
#include "sbcast/rng.hpp"
#include "parallel.hpp"

namespace sbcast {

namespace {

// Five primitives always suffice, so the search only looks for shorter.
constexpr int kFivePrimitiveBound = 5;

// ---------------------------------------------------------------------------
// Compact decomposition tables over basis-pulse codes 0..5.

struct Seq {
  std::uint8_t len = 0;
  std::array<std::uint8_t, 4> code{};
};

struct FourSeq {
  Seq seq;
  // Clifford index of each position subset (bit b = position b selected).
  std::array<std::uint8_t, 16> subset_clifford{};
  // Cliffords reachable by any subset, including the empty one.
  std::uint32_t reach_any = 0;
  // Cliffords other than identity reachable by a subset of at most 3 pulses.
  std::uint32_t reach_short = 0;
};

struct SearchTables {
  std::array<std::vector<Seq>, 24> short_seqs;  // <= 3 pulses, ascending
  std::array<std::vector<FourSeq>, 24> four_seqs;
};

std::uint8_t basis_code(Pulse p) {
  switch (p) {
    case Pulse::Xpi:
    case Pulse::XminusPi: return 0;
    case Pulse::Ypi:
    case Pulse::YminusPi: return 1;
    case Pulse::XpiOver2: return 2;
    case Pulse::YpiOver2: return 3;
    case Pulse::XminusPiOver2: return 4;
    case Pulse::YminusPiOver2: return 5;
    case Pulse::Identity: break;
  }
  throw std::invalid_argument("identity is not a basis pulse");
}

Pulse basis_pulse(std::uint8_t code) { return kBasisPulses[code]; }

SearchTables build_search_tables() {
  SearchTables t;
  for (CliffordId c : all_cliffords()) {
    for (const Decomposition& d : enumerate_decompositions(c)) {
      Seq s;
      s.len = static_cast<std::uint8_t>(d.pulses.size());
      for (std::size_t i = 0; i < d.pulses.size(); ++i) {
        s.code[i] = basis_code(d.pulses[i]);
      }
      if (s.len <= 3) {
        t.short_seqs[c.index()].push_back(s);
        continue;
      }
      FourSeq f;
      f.seq = s;
      for (unsigned subset = 0; subset < 16; ++subset) {
        std::vector<Pulse> picked;
        for (unsigned b = 0; b < 4; ++b) {
          if (subset & (1u << b)) picked.push_back(d.pulses[b]);
        }
        const auto cl = clifford_of_pulses(picked);
        if (!cl) throw std::logic_error("pulse product is not a Clifford");
        f.subset_clifford[subset] = static_cast<std::uint8_t>(cl->index());
        f.reach_any |= 1u << cl->index();
        if (picked.size() >= 1 && picked.size() <= 3 && !cl->is_identity()) {
          f.reach_short |= 1u << cl->index();
        }
      }
      t.four_seqs[c.index()].push_back(f);
    }
  }
  return t;
}

const SearchTables& search_tables() {
  static const SearchTables t = build_search_tables();
  return t;
}

std::uint64_t multiset_key(const std::vector<std::uint8_t>& sorted) {
  std::uint64_t key = sorted.size();
  for (std::uint8_t v : sorted) key = (key << 5) | v;
  return key;
}

constexpr std::size_t kMaxMemoQubits = 11;

// ---------------------------------------------------------------------------
// Shortest interleaving of a fixed set of per-target sequences. Runs the
// recursive merge: at each step, branch on every distinct next pulse and
// advance every sequence whose next pulse it is.

struct Path {
  int length = 0;
  std::array<std::uint8_t, kFivePrimitiveBound> code{};
  std::array<std::uint32_t, kFivePrimitiveBound> advanced{};  // target bits
};

class Interleaver {
 public:
  Interleaver(std::span<const Seq> seqs, SearchStats& stats)
      : seqs_(seqs), stats_(stats) {}

  // Best interleaving strictly shorter than `bound`, stopping at the first
  // success when `first_only`, or as soon as `floor` is reached.
  std::optional<Path> run(int bound, int floor, bool first_only) {
    bound_ = bound;
    floor_ = floor;
    first_only_ = first_only;
    best_.reset();
    done_ = false;
    std::array<std::uint8_t, 24> beta{};
    recurse(beta, 0);
    return best_;
  }

 private:
  void recurse(std::array<std::uint8_t, 24>& beta, int depth) {
    ++stats_.recursion_nodes;
    unsigned next_pulses = 0;
    unsigned left_pulses = 0;
    for (std::size_t i = 0; i < seqs_.size(); ++i) {
      const Seq& s = seqs_[i];
      if (beta[i] >= s.len) continue;
      next_pulses |= 1u << s.code[beta[i]];
      for (int j = beta[i]; j < s.len; ++j) left_pulses |= 1u << s.code[j];
    }
    if (next_pulses == 0) {
      if (depth < bound_) {
        path_.length = depth;
        best_ = path_;
        bound_ = depth;
        if (first_only_ || depth <= floor_) done_ = true;
      }
      return;
    }
    if (depth + std::popcount(left_pulses) >= bound_) return;
    // Candidates in order of the first target that wants them, so ties go to
    // the earlier target.
    std::array<std::uint8_t, 6> order{};
    int n_order = 0;
    for (std::size_t i = 0; i < seqs_.size(); ++i) {
      const Seq& s = seqs_[i];
      if (beta[i] >= s.len || !(next_pulses & (1u << s.code[beta[i]]))) continue;
      order[static_cast<std::size_t>(n_order++)] = s.code[beta[i]];
      next_pulses &= ~(1u << s.code[beta[i]]);
    }
    for (int k = 0; k < n_order && !done_; ++k) {
      const std::uint8_t p = order[static_cast<std::size_t>(k)];
      std::array<std::uint8_t, 24> next = beta;
      std::uint32_t advanced = 0;
      for (std::size_t i = 0; i < seqs_.size(); ++i) {
        const Seq& s = seqs_[i];
        if (next[i] < s.len && s.code[next[i]] == p) {
          ++next[i];
          advanced |= 1u << i;
        }
      }
      path_.code[static_cast<std::size_t>(depth)] = p;
      path_.advanced[static_cast<std::size_t>(depth)] = advanced;
      recurse(next, depth + 1);
    }
  }

  std::span<const Seq> seqs_;
  SearchStats& stats_;
  int bound_ = kFivePrimitiveBound;
  int floor_ = 0;
  bool first_only_ = false;
  bool done_ = false;
  Path path_;
  std::optional<Path> best_;
};

// Depth-first walk over decomposition choices (outer loop of the search).
// A partial choice whose own shortest interleaving already reaches the bound
// cannot lead to a strictly better full choice, so it is cut.
class ChoiceSearch {
 public:
  ChoiceSearch(std::span<const std::uint8_t> targets, int bound, int floor,
               SearchStats& stats)
      : targets_(targets), bound_(bound), floor_(floor), stats_(stats) {
    chosen_.resize(targets.size());
  }

  std::optional<Path> run() {
    descend(0);
    return best_;
  }

  int bound() const { return bound_; }

 private:
  void descend(std::size_t k) {
    const auto& options = search_tables().short_seqs[targets_[k]];
    for (const Seq& s : options) {
      if (done_) return;
      if (s.len >= bound_) break;  // ascending length
      chosen_[k] = s;
      const bool leaf = k + 1 == targets_.size();
      if (leaf) ++stats_.decomposition_choices;
      Interleaver merge(std::span<const Seq>(chosen_.data(), k + 1), stats_);
      auto path = merge.run(bound_, floor_, !leaf);
      if (!path) continue;
      if (!leaf) {
        descend(k + 1);
        continue;
      }
      best_ = path;
      bound_ = path->length;
      if (bound_ <= floor_) done_ = true;
    }
  }

  std::span<const std::uint8_t> targets_;
  int bound_;
  int floor_;
  SearchStats& stats_;
  std::vector<Seq> chosen_;
  std::optional<Path> best_;
  bool done_ = false;
};

}  // namespace

// ---------------------------------------------------------------------------

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Sequential: return "sequential";
    case Scheme::FivePrimitives: return "five-primitives";
    case Scheme::FivePrimitivesSymmetric: return "five-primitives-symmetric";
    case Scheme::Compiled: return "compiled";
  }
  throw std::invalid_argument("unknown scheme");
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::Sequential, Scheme::FivePrimitives,
                   Scheme::FivePrimitivesSymmetric, Scheme::Compiled}) {
    if (scheme_name(s) == name) return s;
  }
  if (name == "minimal-set") return Scheme::Sequential;
  return std::nullopt;
}

CliffordCombo parse_combo(std::string_view text) {
  CliffordCombo combo;
  if (text.empty()) throw std::invalid_argument("empty Clifford combo");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view field = text.substr(pos, comma - pos);
    int value = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
      throw std::invalid_argument("malformed Clifford id '" +
                                  std::string(field) + "'");
    }
    if (value < 1 || value > CliffordId::kCount) {
      throw std::invalid_argument("Clifford id out of range: " +
                                  std::string(field));
    }
    combo.emplace_back(value);
    pos = comma + 1;
  }
  return combo;
}

std::vector<Pulse> Schedule::pulses_for(int qubit) const {
  std::vector<Pulse> out;
  for (const PulseEvent& e : events) {
    if (e.mask.at(static_cast<std::size_t>(qubit))) out.push_back(e.pulse);
  }
  return out;
}

bool validate_schedule(const Schedule& schedule,
                       std::span<const CliffordId> targets) {
  if (schedule.n_qubits != static_cast<int>(targets.size())) return false;
  int last_slot = -1;
  for (const PulseEvent& e : schedule.events) {
    if (e.mask.size() != targets.size()) return false;
    if (std::none_of(e.mask.begin(), e.mask.end(), [](bool b) { return b; })) {
      return false;
    }
    if (e.slot <= last_slot || e.slot >= schedule.n_slots) return false;
    last_slot = e.slot;
  }
  for (std::size_t q = 0; q < targets.size(); ++q) {
    const auto pulses = schedule.pulses_for(static_cast<int>(q));
    if (!equal_up_to_phase(product_of(pulses), clifford_unitary(targets[q]))) {
      return false;
    }
  }
  return true;
}

Schedule compile_sequential(std::span<const CliffordId> combo) {
  Schedule s;
  s.n_qubits = static_cast<int>(combo.size());
  s.scheme = Scheme::Sequential;
  int slot = 0;
  for (std::size_t q = 0; q < combo.size(); ++q) {
    if (combo[q].is_identity()) {
      ++slot;
      continue;
    }
    for (Pulse p : minimal_decomposition(combo[q])) {
      PulseEvent e;
      e.pulse = p;
      e.mask.assign(combo.size(), false);
      e.mask[q] = true;
      e.slot = slot++;
      s.events.push_back(std::move(e));
    }
  }
  s.n_slots = slot;
  return s;
}

Schedule compile_five_primitives(std::span<const CliffordId> combo,
                                 int round_parity) {
  if (round_parity != 0 && round_parity != 1) {
    throw std::invalid_argument("round parity must be 0 or 1");
  }
  const bool inverted = round_parity == 1;
  const auto& round = five_primitives(inverted);
  std::vector<MarkerMask5> masks;
  masks.reserve(combo.size());
  for (CliffordId c : combo) masks.push_back(five_primitive_mask(c, inverted));

  Schedule s;
  s.n_qubits = static_cast<int>(combo.size());
  s.scheme = inverted ? Scheme::FivePrimitivesSymmetric : Scheme::FivePrimitives;
  s.n_slots = 5;
  for (std::size_t i = 0; i < 5; ++i) {
    PulseEvent e;
    e.pulse = round[i];
    e.slot = static_cast<int>(i);
    e.mask.resize(combo.size());
    bool any = false;
    for (std::size_t q = 0; q < combo.size(); ++q) {
      e.mask[q] = masks[q].bits[i];
      any = any || e.mask[q];
    }
    if (any) s.events.push_back(std::move(e));
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

// Position subsets of a four-pulse sequence, fewest pulses first.
constexpr std::array<std::uint8_t, 16> kSubsetOrder = {
    0, 1, 2, 4, 8, 3, 5, 6, 9, 10, 12, 7, 11, 13, 14, 15};

Path four_pulse_path(const FourSeq& f, const std::vector<std::uint8_t>& targets,
                     std::size_t owner) {
  Path path;
  path.length = 4;
  for (std::size_t b = 0; b < 4; ++b) path.code[b] = f.seq.code[b];
  for (std::size_t t = 0; t < targets.size(); ++t) {
    std::uint8_t subset = 15;
    if (t != owner) {
      for (std::uint8_t s : kSubsetOrder) {
        if (s != 0 && f.subset_clifford[s] == targets[t]) {
          subset = s;
          break;
        }
      }
    }
    for (std::size_t b = 0; b < 4; ++b) {
      if (subset & (1u << b)) path.advanced[b] |= 1u << t;
    }
  }
  return path;
}

// Every target is tried as the owner of a four-pulse decomposition; the rest
// must be realizable inside it.
std::optional<Path> four_pulse_pass(const std::vector<std::uint8_t>& sorted,
                                    const std::vector<std::uint8_t>& targets,
                                    FourPulsePass mode) {
  if (mode == FourPulsePass::PerQubit && sorted.front() == 0) return std::nullopt;
  const auto& tables = search_tables();
  for (std::size_t owner = 0; owner < targets.size(); ++owner) {
    const std::uint8_t alpha = targets[owner];
    std::uint32_t need = 0;
    for (std::uint8_t t : targets) {
      if (t != alpha) need |= 1u << t;
    }
    if (mode == FourPulsePass::PerQubit &&
        std::count(sorted.begin(), sorted.end(), alpha) > 1) {
      need |= 1u << alpha;
    }
    for (const FourSeq& f : tables.four_seqs[alpha]) {
      const std::uint32_t reach =
          mode == FourPulsePass::Complete ? f.reach_any : f.reach_short;
      if ((reach & need) == need) return four_pulse_path(f, targets, owner);
    }
  }
  return std::nullopt;
}

std::vector<std::uint8_t> sorted_indices(std::span<const CliffordId> combo) {
  std::vector<std::uint8_t> sorted;
  sorted.reserve(combo.size());
  for (CliffordId c : combo) {
    sorted.push_back(static_cast<std::uint8_t>(c.index()));
  }
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

}  // namespace

struct OptimalCompiler::Solution {
  std::vector<std::uint8_t> targets;  // distinct non-identity Clifford indices
  std::optional<Path> path;           // absent: five-primitives fallback
};

OptimalCompiler::OptimalCompiler(OptimalOptions options) : options_(options) {}

int OptimalCompiler::lower_bound(const std::vector<std::uint8_t>& sorted) {
  int bound = 0;
  std::vector<std::uint8_t> subset;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    subset.assign(sorted.begin(), sorted.end());
    subset.erase(subset.begin() + static_cast<std::ptrdiff_t>(i));
    bound = std::max(bound, solve_sorted(subset, nullptr));
    if (bound >= kFivePrimitiveBound) break;
  }
  return bound;
}

int OptimalCompiler::solve_sorted(const std::vector<std::uint8_t>& sorted,
                                  Solution* out) {
  const bool memoizable = sorted.size() <= kMaxMemoQubits;
  const std::uint64_t key = memoizable ? multiset_key(sorted) : 0;
  if (!out && memoizable) {
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }

  std::vector<std::uint8_t> targets;
  for (std::uint8_t v : sorted) {
    if (v != 0 && (targets.empty() || targets.back() != v)) targets.push_back(v);
  }
  if (out) out->targets = targets;

  int result = 0;
  if (!targets.empty()) {
    SearchStats local;
    SearchStats& stats = out ? stats_ : local;
    const bool bounded = sorted.size() > 1 && sorted.size() <= kMaxMemoQubits + 1;
    const int floor = bounded ? lower_bound(sorted) : 0;
    if (floor >= kFivePrimitiveBound) {
      stats.lower_bound_exit = true;
      result = kFivePrimitiveBound;
    } else {
      ChoiceSearch search(targets, kFivePrimitiveBound, floor, stats);
      auto path = search.run();
      if (path && path->length <= floor) stats.lower_bound_exit = true;
      if (!path && floor <= 4) {
        stats.four_pulse_pass_used = true;
        path = four_pulse_pass(sorted, targets, options_.four_pulse_pass);
      }
      result = path ? path->length : kFivePrimitiveBound;
      if (out) out->path = path;
    }
  }
  if (memoizable) memo_[key] = static_cast<std::uint8_t>(result);
  return result;
}

int OptimalCompiler::pulse_count(std::span<const CliffordId> combo) {
  stats_ = {};
  return solve_sorted(sorted_indices(combo), nullptr);
}

Schedule OptimalCompiler::compile(std::span<const CliffordId> combo) {
  stats_ = {};
  Solution sol;
  solve_sorted(sorted_indices(combo), &sol);

  if (!sol.targets.empty() && !sol.path) {
    Schedule s = compile_five_primitives(combo, 0);
    s.scheme = Scheme::Compiled;
    return s;
  }

  Schedule s;
  s.n_qubits = static_cast<int>(combo.size());
  s.scheme = Scheme::Compiled;
  const int length = sol.path ? sol.path->length : 0;
  s.n_slots = std::max(1, length);
  for (int d = 0; d < length; ++d) {
    const auto step = static_cast<std::size_t>(d);
    PulseEvent e;
    e.pulse = basis_pulse(sol.path->code[step]);
    e.slot = d;
    e.mask.assign(combo.size(), false);
    for (std::size_t q = 0; q < combo.size(); ++q) {
      if (combo[q].is_identity()) continue;
      const auto pos = std::lower_bound(sol.targets.begin(), sol.targets.end(),
                                        combo[q].index());
      const auto t = static_cast<unsigned>(pos - sol.targets.begin());
      e.mask[q] = (sol.path->advanced[step] >> t) & 1u;
    }
    s.events.push_back(std::move(e));
  }
  return s;
}

Schedule compile_optimal(std::span<const CliffordId> combo,
                         OptimalOptions options) {
  OptimalCompiler compiler(options);
  return compiler.compile(combo);
}

Schedule compile_round(std::span<const CliffordId> combo, Scheme scheme,
                       int round_index) {
  switch (scheme) {
    case Scheme::Sequential: return compile_sequential(combo);
    case Scheme::FivePrimitives: return compile_five_primitives(combo, 0);
    case Scheme::FivePrimitivesSymmetric: {
      Schedule s = compile_five_primitives(combo, round_index & 1);
      s.scheme = Scheme::FivePrimitivesSymmetric;
      return s;
    }
    case Scheme::Compiled: return compile_optimal(combo);
  }
  throw std::invalid_argument("unknown scheme");
}

// ---------------------------------------------------------------------------

int census_cost(int pulse_count) { return std::max(1, pulse_count); }

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

NpStats mean_np_exact(int n, CensusOptions options) {
  if (n < 1 || n > 5) {
    throw std::invalid_argument("exact census supports 1 <= n <= 5");
  }
  const unsigned workers = detail::worker_count(options.threads, CliffordId::kCount);
  std::vector<std::uint64_t> partial(workers, 0);
  const std::uint64_t n_fact = factorial(n);

  detail::run_workers(workers, [&](unsigned w) {
    OptimalCompiler compiler({options.four_pulse_pass});
    std::vector<CliffordId> combo(static_cast<std::size_t>(n),
                                  CliffordId::identity());
    std::uint64_t sum = 0;
    // Non-decreasing index sequences; weight = orderings of the multiset.
    auto visit = [&](auto&& self, int depth, std::size_t lo) -> void {
      if (depth == n) {
        std::uint64_t denom = 1;
        int run = 1;
        for (int i = 1; i <= n; ++i) {
          if (i < n && combo[static_cast<std::size_t>(i)] ==
                           combo[static_cast<std::size_t>(i - 1)]) {
            ++run;
          } else {
            denom *= factorial(run);
            run = 1;
          }
        }
        const int cost = census_cost(compiler.pulse_count(combo));
        sum += (n_fact / denom) * static_cast<std::uint64_t>(cost);
        return;
      }
      for (std::size_t c = lo; c < CliffordId::kCount; ++c) {
        combo[static_cast<std::size_t>(depth)] = CliffordId::from_index(c);
        self(self, depth + 1, c);
      }
    };
    for (std::size_t first = w; first < CliffordId::kCount; first += workers) {
      combo[0] = CliffordId::from_index(first);
      visit(visit, 1, first);
    }
    partial[w] = sum;
  });

  NpStats stats;
  stats.n = n;
  stats.mode = NpMode::Exact;
  for (std::uint64_t p : partial) stats.total_cost += p;
  stats.samples = 1;
  for (int i = 0; i < n; ++i) stats.samples *= CliffordId::kCount;
  stats.mean_np = static_cast<double>(stats.total_cost) /
                  static_cast<double>(stats.samples);
  return stats;
}

NpStats mean_np_sampled(int n, std::uint64_t samples, std::uint64_t seed,
                        CensusOptions options) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (samples < 100) throw std::invalid_argument("samples must be >= 100");
  const unsigned workers = detail::worker_count(options.threads, samples);
  std::vector<std::uint64_t> sum(workers, 0);
  std::vector<std::uint64_t> sum_sq(workers, 0);

  detail::run_workers(workers, [&](unsigned w) {
    OptimalCompiler compiler({options.four_pulse_pass});
    std::vector<CliffordId> combo(static_cast<std::size_t>(n),
                                  CliffordId::identity());
    for (std::uint64_t s = w; s < samples; s += workers) {
      Rng rng = Rng::stream(seed, s);
      for (auto& c : combo) c = CliffordId::from_index(rng.below(24));
      const auto cost =
          static_cast<std::uint64_t>(census_cost(compiler.pulse_count(combo)));
      sum[w] += cost;
      sum_sq[w] += cost * cost;
    }
  });

  std::uint64_t total = 0;
  std::uint64_t total_sq = 0;
  for (unsigned w = 0; w < workers; ++w) {
    total += sum[w];
    total_sq += sum_sq[w];
  }
  const auto count = static_cast<double>(samples);
  const double mean = static_cast<double>(total) / count;
  const double var =
      (static_cast<double>(total_sq) - count * mean * mean) / (count - 1.0);

  NpStats stats;
  stats.n = n;
  stats.mode = NpMode::Sampled;
  stats.samples = samples;
  stats.total_cost = total;
  stats.mean_np = mean;
  stats.std_error = std::sqrt(std::max(0.0, var) / count);
  return stats;
}

}  // namespace sbcast
