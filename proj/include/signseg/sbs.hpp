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

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "signseg/core.hpp"
#include "signseg/limit_dist.hpp"
#include "signseg/sign_kernel.hpp"
#include "signseg/sn_test.hpp"

namespace signseg {

struct SegmenterConfig {
  double zeta_p = 0.001;
  double alpha = std::pow(2.0, -0.25);
  StatKind kind = StatKind::sign;

  void validate() const;
};

/// Subinterval test outcome considered by the recursion.
struct IntervalCandidate {
  int a = 0;
  int b = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  int argmax_k = 0;

  int length() const noexcept { return b - a + 1; }
};

struct Detection {
  int location = 0;  // last index of the left segment
  int interval_a = 0;
  int interval_b = 0;
  double p_value = 1.0;
  double statistic = 0.0;
};

struct ChangePointResult {
  std::vector<int> locations;        // ascending
  std::vector<Detection> detections; // ascending by location

  int m_hat() const noexcept { return static_cast<int>(locations.size()); }
};

/// Index of the candidate with the smallest p-value; exact ties go to the
/// shorter interval, then to the smaller left endpoint.
std::optional<std::size_t> select_candidate(std::span<const IntervalCandidate> candidates);

/// Seeded binary segmentation driven by fixed-n p-values.
ChangePointResult segment(const DataMatrix& d, const SegmenterConfig& cfg, TableCache& tables,
                          int threads = 0);
/// Same, reusing a prepared statistic.
ChangePointResult segment(const DStatistic& stat, const SegmenterConfig& cfg,
                          TableCache& tables, int threads = 0);

}  // namespace signseg
