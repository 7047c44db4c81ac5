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

// Test-only reference implementations. They share no code with the library
// beyond the public types: rotations are built from explicit cos/sin
// matrices, Clifford classes from a phase-free canonical key, and pulse
// counts from exhaustive enumeration.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <unordered_map>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Mat = std::array<cd, 4>;  // row-major

// Letters: X180, Y180, X90, Y90, X-90, Y-90, X-180, Y-180.
inline constexpr int kLetters = 8;

inline Mat mul(const Mat& a, const Mat& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat letter(int k) {
  static constexpr std::array<int, 8> axis = {0, 1, 0, 1, 0, 1, 0, 1};
  static constexpr std::array<double, 8> turns = {1, 1, 0.5, 0.5, -0.5, -0.5, -1, -1};
  const double h = turns[static_cast<std::size_t>(k)] * std::numbers::pi / 2;
  const cd c(std::cos(h), 0), s(std::sin(h), 0), i(0, 1);
  if (axis[static_cast<std::size_t>(k)] == 0) return {c, -i * s, -i * s, c};
  return {c, -s, s, c};
}

inline Mat word(const std::vector<int>& w) {
  Mat u = {cd(1), cd(0), cd(0), cd(1)};
  for (int k : w) u = mul(letter(k), u);  // first letter acts first
  return u;
}

inline bool same(const Mat& a, const Mat& b, double tol = 1e-9) {
  cd t = 0;
  for (int i = 0; i < 4; ++i) t += std::conj(a[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(i)];
  return std::abs(std::abs(t) - 2.0) < tol;
}

// Phase-free key: rotate so the largest-magnitude entry is real positive,
// then round.
inline std::array<long long, 8> key(const Mat& u) {
  std::size_t big = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    if (std::abs(u[i]) > std::abs(u[big]) + 1e-9) big = i;
  }
  const cd phase = std::conj(u[big]) / std::abs(u[big]);
  std::array<long long, 8> k{};
  for (std::size_t i = 0; i < 4; ++i) {
    const cd v = u[i] * phase;
    k[2 * i] = std::llround(v.real() * 1e6);
    k[2 * i + 1] = std::llround(v.imag() * 1e6);
  }
  return k;
}

// All words of length <= max_len grouped by the unitary class they realize.
// Class index order is insertion order, not the library's numbering.
struct WordTable {
  std::map<std::array<long long, 8>, int> class_of;
  std::vector<Mat> representative;
  std::vector<std::vector<std::vector<int>>> words;  // per class
};

inline WordTable build_words(int max_len, int letters = kLetters) {
  WordTable t;
  const auto add = [&](const std::vector<int>& w) {
    const Mat u = word(w);
    const auto k = key(u);
    auto it = t.class_of.find(k);
    if (it == t.class_of.end()) {
      it = t.class_of.emplace(k, static_cast<int>(t.representative.size())).first;
      t.representative.push_back(u);
      t.words.emplace_back();
    }
    t.words[static_cast<std::size_t>(it->second)].push_back(w);
  };
  add({});
  std::vector<std::vector<int>> frontier = {{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier) {
      for (int l = 0; l < letters; ++l) {
        auto v = w;
        v.push_back(l);
        add(v);
        next.push_back(std::move(v));
      }
    }
    frontier = std::move(next);
  }
  return t;
}

// X-180/Y-180 equal X180/Y180 up to phase, so they may share a slot.
inline int canonical_letter(int k) { return k >= 6 ? k - 6 : k; }

// Length of the shortest common supersequence of two words.
inline int scs(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      lcs[i][j] = canonical_letter(a[i - 1]) == canonical_letter(b[j - 1])
                      ? lcs[i - 1][j - 1] + 1
                      : std::max(lcs[i - 1][j], lcs[i][j - 1]);
    }
  }
  return static_cast<int>(n + m) - lcs[n][m];
}

// Unoptimized two-qubit optimum: every pair of words of length <= 4 for the
// two targets, shortest common supersequence, capped at the five-pulse round.
inline int brute_force_pair(const WordTable& t, const Mat& a, const Mat& b) {
  const auto& wa = t.words[static_cast<std::size_t>(t.class_of.at(key(a)))];
  const auto& wb = t.words[static_cast<std::size_t>(t.class_of.at(key(b)))];
  int best = 5;
  for (const auto& x : wa) {
    if (static_cast<int>(x.size()) >= best) continue;
    for (const auto& y : wb) {
      best = std::min(best, scs(x, y));
    }
  }
  return best;
}

// Subsequence-reach census: for every string s of length L <= 4 over the six
// phase-distinct letters, the set of classes reachable by deleting pulses
// from s (the empty deletion reaches identity). A combo costs the least L
// whose reach covers it, else 5; a round costs at least one slot.
class ReachCensus {
 public:
  explicit ReachCensus(const std::vector<Mat>& cliffords) : cliffords_(cliffords) {
    for (int len = 1; len <= 4; ++len) {
      std::vector<std::uint32_t> masks;
      std::vector<int> s(static_cast<std::size_t>(len), 0);
      for (;;) {
        std::uint32_t reach = 0;
        for (unsigned sub = 1; sub < (1u << len); ++sub) {
          std::vector<int> w;
          for (int i = 0; i < len; ++i) {
            if (sub & (1u << i)) w.push_back(s[static_cast<std::size_t>(i)]);
          }
          reach |= 1u << index_of(word(w));
        }
        masks.push_back(reach);
        int pos = len - 1;
        while (pos >= 0 && ++s[static_cast<std::size_t>(pos)] == 6) s[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
      }
      std::sort(masks.begin(), masks.end());
      masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
      by_length_[static_cast<std::size_t>(len)] = std::move(masks);
    }
  }

  // `need` has bit i set for every non-identity target with library index i.
  int pulses(std::uint32_t need) {
    if (need == 0) return 0;
    auto it = memo_.find(need);
    if (it != memo_.end()) return it->second;
    int best = 5;
    for (int len = 1; len <= 4 && best == 5; ++len) {
      for (std::uint32_t m : by_length_[static_cast<std::size_t>(len)]) {
        if ((m & need) == need) {
          best = len;
          break;
        }
      }
    }
    memo_.emplace(need, best);
    return best;
  }

  // Sum of max(1, N_P) over all 24^n ordered combos.
  std::uint64_t total_cost(int n) {
    std::uint64_t total = 0;
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    for (;;) {
      std::uint32_t need = 0;
      for (int v : c) {
        if (v != 0) need |= 1u << v;
      }
      total += static_cast<std::uint64_t>(std::max(1, pulses(need)));
      int pos = n - 1;
      while (pos >= 0 && ++c[static_cast<std::size_t>(pos)] == 24) c[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
    }
    return total;
  }

 private:
  int index_of(const Mat& u) const {
    for (std::size_t i = 0; i < cliffords_.size(); ++i) {
      if (same(u, cliffords_[i])) return static_cast<int>(i);
    }
    return -1;
  }

  std::vector<Mat> cliffords_;
  std::array<std::vector<std::uint32_t>, 5> by_length_;
  std::unordered_map<std::uint32_t, int> memo_;
};

// Amplitude-damping channel on a 2x2 density matrix, Kraus form.
inline Mat damp(const Mat& rho, double gamma) {
  const double s = std::sqrt(1 - gamma);
  return {rho[0] + gamma * rho[3], s * rho[1], s * rho[2], (1 - gamma) * rho[3]};
}

}  // namespace oracle
