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

#include <cstddef>
#include <span>
#include <vector>

#include "signseg/core.hpp"

namespace signseg {

enum class StatKind { sign, mean };

const char* to_string(StatKind kind) noexcept;

/// x / ||x||, or the zero vector when x is zero.
std::vector<double> spatial_sign(std::span<const double> x);

struct DValue {
  double value;
  StatKind kind;
  SegmentTriple triple;
};

/// Spatial signs s_ij = S(Y_i - Y_j) for every i < j, materialized once.
/// The sign for (j, i) is -s_ij and is never stored. Pairs with Y_i == Y_j
/// (all coordinates exactly equal) carry the zero vector.
class PairwiseSignCache {
 public:
  explicit PairwiseSignCache(const DataMatrix& d, int threads = 0);

  std::size_t n() const noexcept { return n_; }
  std::size_t p() const noexcept { return p_; }

  /// s_ij for 1 <= i < j <= n.
  std::span<const double> sign(std::size_t i, std::size_t j) const {
    return {signs_.data() + pair_index(i, j) * p_, p_};
  }
  bool tied(std::size_t i, std::size_t j) const;

  /// Number of tied pairs (j1, j2) with j1 in [l, k] and j2 in [k+1, m].
  std::size_t tied_cross_pairs(int l, int k, int m) const;
  std::size_t tie_count() const noexcept { return tie_count_; }

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const noexcept {
    return (i - 1) * n_ - (i - 1) * i / 2 + (j - i - 1);
  }

  std::size_t n_;
  std::size_t p_;
  std::vector<double> signs_;
  // (n+1) x (n+1) two-dimensional prefix counts of tied pairs (i < j).
  std::vector<std::size_t> tie_prefix_;
  std::size_t tie_count_ = 0;
};

/// Literal quadruple sum. O((k-l+1)^2 (m-k)^2 p); reference use only.
DValue d_sign_oracle(const DataMatrix& d, const SegmentTriple& t);

/// Same quantity via ||V||^2 - sum ||u||^2 - sum ||w||^2 + #untied pairs.
DValue d_sign_fast(const PairwiseSignCache& cache, const SegmentTriple& t);

/// Mean-based counterpart. Builds a MeanKernel internally.
DValue d_mean(const DataMatrix& d, const SegmentTriple& t);

/// O(1) evaluation of the mean-based D through pair-window sums
/// Z(a, b) = sum_{a <= j < i <= b} Y_i'Y_j of the column-centered data.
/// D is a contrast, so centering leaves it unchanged and keeps the Gram
/// entries small.
class MeanKernel {
 public:
  explicit MeanKernel(const DataMatrix& d);

  std::size_t n() const noexcept { return n_; }
  /// Z(a, b) for 1 <= a <= b <= n; zero when a == b.
  double pair_window(int a, int b) const {
    return window_[static_cast<std::size_t>(a) * (n_ + 2) + b];
  }
  double d(int k, int l, int m) const;

 private:
  std::size_t n_;
  double scale_ = 0.0;
  std::vector<double> window_;
};

/// The decomposition D(k;l,m) in terms of pair-window sums, shared by the
/// mean-based kernel and the limit simulator.
template <class Window>
double contrast_from_windows(int k, int l, int m, const Window& z) {
  const double left = z(l, k);
  const double right = z(k + 1, m);
  const double cross = z(l, m) - left - right;
  const double nl = k - l + 1;
  const double nr = m - k;
  return 2.0 * nr * (nr - 1) * left + 2.0 * nl * (nl - 1) * right -
         2.0 * (nl - 1) * (nr - 1) * cross;
}

}  // namespace signseg
