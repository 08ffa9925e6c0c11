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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "signseg/core.hpp"
#include "signseg/limit_dist.hpp"
#include "signseg/sbs.hpp"
#include "signseg/sign_kernel.hpp"

namespace signseg {

/// Innovation laws (i)-(vii).
enum class DgpCase { gauss_iid, t5_iid, t3_iid, ar1_gauss, ar1_t5, rsrm_gauss, rsrm_t5 };

const char* to_string(DgpCase c) noexcept;
/// Accepts the enum names and the roman numerals "i" .. "vii".
std::optional<DgpCase> parse_dgp_case(std::string_view name) noexcept;

/// Single mean shift: Y_i = X_i + delta for i > kstar.
struct MeanShift {
  std::vector<double> delta;
  int kstar = 0;
};

/// Piecewise-constant mean; jumps[c] is added to every row after locations[c].
struct MultiChange {
  std::vector<int> locations;
  std::vector<std::vector<double>> jumps;
};

struct DgpSpec {
  DgpCase dgp = DgpCase::gauss_iid;
  int n = 0;
  int p = 0;
  double rho = 0.7;
  std::optional<MeanShift> shift;
  std::optional<MultiChange> changes;

  void validate() const;
  /// True change locations (empty under the null).
  std::vector<int> change_locations() const;
};

/// n x p panel drawn from the specification.
DataMatrix draw_dgp(const DgpSpec& spec, RandomStream& stream);

/// delta = (1, ..., 1)/sqrt(p): dense alternative.
std::vector<double> dense_shift(int p);
/// delta = (1, 1, 0, ..., 0): sparse alternative.
std::vector<double> sparse_shift(int p);

/// Three changes at n/4, n/2, 3n/4 with jumps theta, -theta, theta where
/// theta = sqrt(h/d) (1_d, 0_{p-d}).
DgpSpec three_change_model(DgpCase dgp, int n, int p, double h, int d, double rho);

enum class LimitKind { fixed_n, sequential_proxy };
const char* to_string(LimitKind kind) noexcept;
/// Length whose fixed-n table stands in for the n-free limit.
inline constexpr int kSequentialProxyN = 200;

struct ExperimentReport {
  std::vector<std::pair<std::string, std::string>> config;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::optional<double> rejection_rate;
  /// Counts of m_hat - m in {< -1, -1, 0, 1, > 1}.
  std::array<std::size_t, 5> m_hat_histogram{};
  std::optional<double> mse;
  std::optional<double> ari_mean;
  std::vector<int> m_hat;
};

/// SN statistic on [1, n] for each replicate r, drawn from stream (seed, r).
std::vector<double> simulate_statistics(const DgpSpec& spec, StatKind kind,
                                        std::size_t replicates, std::uint64_t seed,
                                        int threads = 0);

/// Fraction of statistics above the (1 - level) quantile of the table.
double rejection_rate(std::span<const double> statistics, const QuantileTable& table,
                      double level);

ExperimentReport size_power_experiment(const DgpSpec& spec, StatKind kind, LimitKind limit,
                                       double level, std::size_t replicates,
                                       std::uint64_t seed, TableCache& tables,
                                       int threads = 0);

ExperimentReport segmentation_experiment(const DgpSpec& model, const SegmenterConfig& cfg,
                                         std::size_t replicates, std::uint64_t seed,
                                         TableCache& tables, int threads = 0);

/// Adjusted Rand index of the segmentations of {1, ..., n} induced by two
/// strictly ascending change-point lists in [1, n-1].
double ari(std::span<const int> changes_a, std::span<const int> changes_b, int n);

/// Mean of (m_hat - m)^2 over (m_hat, m) outcomes.
double mse_mhat(std::span<const std::pair<int, int>> outcomes);

struct HillEstimate {
  int k = 0;
  double left = 0.0;
  double right = 0.0;
  bool left_defined = false;
  bool right_defined = false;
};

HillEstimate hill(std::span<const double> series, int k);

/// Scaled-down experiment grids: "table2", "table3", "table4", "powercurve".
std::vector<ExperimentReport> run_preset(std::string_view preset, std::size_t replicates,
                                         std::uint64_t seed, TableCache& tables,
                                         int threads = 0);
bool is_preset(std::string_view preset) noexcept;

}  // namespace signseg
