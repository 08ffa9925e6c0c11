// Copyright 2026 The signseg Authors
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
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "signseg/core.hpp"

namespace signseg {

inline constexpr int kTableFormatVersion = 1;
inline constexpr std::size_t kDefaultReplicates = 50000;
inline constexpr std::uint64_t kDefaultTableSeed = 20230417;

/// Local alternative: signal level c >= 0 and change fraction bstar in (0, 1).
struct NoncentralSpec {
  double c = 0.0;
  double bstar = 0.5;

  int kstar(int n) const;
  void validate() const;
};

/// One realisation of the i.i.d. standard normals z_ij, 1 <= j < i <= n,
/// standing in for the limiting pairwise inner products, with O(1) access to
/// every window sum  sum_{a <= j < i <= b} z_ij.
class LimitDraw {
 public:
  LimitDraw(int n, RandomStream& stream);
  /// From explicit values in row order (i = 2..n, j = 1..i-1).
  LimitDraw(int n, std::span<const double> z);

  int n() const noexcept { return n_; }
  double z(int i, int j) const { return z_[tri(i) + (j - 1)]; }
  double pair_window(int a, int b) const {
    return window_[static_cast<std::size_t>(a) * (n_ + 2) + b];
  }

 private:
  static std::size_t tri(int i) { return static_cast<std::size_t>(i - 1) * (i - 2) / 2; }
  void build_windows();

  int n_;
  std::vector<double> z_;
  std::vector<double> window_;
};

/// Q_n(a/n, b/n) = (sqrt(2)/n) sum_{a <= j < i <= b} z_ij, 1 <= a < b <= n.
double q_process(const LimitDraw& draw, int a, int b);

/// G_n(k/n; l/n, m/n), l <= k < m.
double g_process(const LimitDraw& draw, int k, int l, int m);

/// Mean-shift drift Delta_n(k/n; l/n, m/n) for a change after kstar.
double delta_shift(int n, int k, int l, int m, int kstar);

/// One draw of the fixed-n limit functional (sup over k = 4..n-4).
double limit_functional(const LimitDraw& draw,
                        const std::optional<NoncentralSpec>& spec = std::nullopt);

struct QuantileTable {
  int n = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::optional<NoncentralSpec> noncentral;
  std::vector<double> sorted_values;

  /// Inverse empirical CDF: the ceil(prob * B)-th smallest draw.
  double quantile(double prob) const;
};

QuantileTable simulate_limit(int n, std::size_t replicates, std::uint64_t seed,
                             const std::optional<NoncentralSpec>& spec = std::nullopt,
                             int threads = 0);

/// (1 + #{draws >= observed}) / (B + 1).
double p_value(const QuantileTable& table, double observed);

void save_table(const QuantileTable& table, const std::filesystem::path& path);
QuantileTable load_table(const std::filesystem::path& path);

/// Central tables keyed by n, simulated on first use and optionally persisted
/// in a directory. Thread-safe.
class TableCache {
 public:
  explicit TableCache(std::optional<std::filesystem::path> dir = std::nullopt,
                      std::size_t replicates = kDefaultReplicates,
                      std::uint64_t seed = kDefaultTableSeed, int threads = 0);

  const QuantileTable& get(int n);
  double p_value(int n, double observed) { return signseg::p_value(get(n), observed); }

  /// Seed used for the table of length n.
  std::uint64_t seed_for(int n) const { return mix_seed(seed_, static_cast<std::uint64_t>(n)); }
  std::filesystem::path path_for(int n) const;
  /// Lengths simulated (rather than loaded) by this cache.
  std::set<int> simulated() const;
  std::size_t replicates() const noexcept { return replicates_; }

 private:
  std::optional<std::filesystem::path> dir_;
  std::size_t replicates_;
  std::uint64_t seed_;
  int threads_;
  mutable std::mutex mutex_;
  std::map<int, std::unique_ptr<QuantileTable>> tables_;
  std::set<int> simulated_;
};

}  // namespace signseg
