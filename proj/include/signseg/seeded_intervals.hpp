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

#include <filesystem>
#include <vector>

namespace signseg {

/// Closed 1-based interval [a, b] with the layer that first produced it.
struct SeededInterval {
  int a;
  int b;
  int layer;

  int length() const noexcept { return b - a + 1; }
  bool operator==(const SeededInterval&) const = default;
};

struct SeededLayer {
  int count;         // n_k
  int length;        // l_k after clipping to n
  double shift;      // s_k (0 for a single-interval layer)
};

/// Deterministic multi-scale interval collection for seeded binary
/// segmentation. Layer k holds n_k = 2 ceil((1/alpha)^(k-1)) - 1 intervals of
/// length l_k = 10 ceil(n alpha^(k-1) / 10) (clipped to n), evenly shifted
/// across [1, n]. Layers run k = 1 .. ceil(log_{1/alpha} n); duplicates keep
/// their first occurrence and intervals shorter than 8 are dropped.
class SeededIntervalSet {
 public:
  static SeededIntervalSet generate(int n, double alpha);

  int n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  const std::vector<SeededInterval>& intervals() const noexcept { return intervals_; }
  const std::vector<SeededLayer>& layers() const noexcept { return layers_; }

  /// Intervals contained in [a, b], in generation order.
  std::vector<SeededInterval> within(int a, int b) const;

  /// Audit dump: "a,b,layer" rows with a header.
  void write_csv(const std::filesystem::path& path) const;

 private:
  int n_ = 0;
  double alpha_ = 0.0;
  std::vector<SeededInterval> intervals_;
  std::vector<SeededLayer> layers_;
};

}  // namespace signseg
