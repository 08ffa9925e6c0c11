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

#include <memory>
#include <vector>

#include "signseg/core.hpp"
#include "signseg/sign_kernel.hpp"

namespace signseg {

/// Every D-value the self-normalized ratio over [a, b] needs:
///   left(t, m)  = D(t; a, m)   for a <= t < m <= b
///   right(l, t) = D(t; l, b)   for a <= l <= t < b
/// Entries whose blocks hold fewer than two points are not meaningful.
class IntervalFamily {
 public:
  IntervalFamily(int a, int b, std::vector<double> left, std::vector<double> right)
      : a_(a), b_(b), left_(std::move(left)), right_(std::move(right)) {}

  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }
  int length() const noexcept { return b_ - a_ + 1; }

  double left(int t, int m) const { return left_[index(t, m)]; }
  double right(int l, int t) const { return right_[index(l, t)]; }
  /// D(k; a, b).
  double full(int k) const { return left(k, b_); }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(x - a_) * length() + (y - a_);
  }

  int a_;
  int b_;
  std::vector<double> left_;
  std::vector<double> right_;
};

/// Source of D-values for one dataset.
class DStatistic {
 public:
  virtual ~DStatistic() = default;
  virtual StatKind kind() const noexcept = 0;
  virtual std::size_t n() const noexcept = 0;
  virtual double d(const SegmentTriple& t) const = 0;
  virtual IntervalFamily family(int a, int b) const = 0;
};

/// Sign-based D. family() runs in O(L^3 p) dense work (per-anchor Gram
/// products) plus O(L^2 p) vector accumulation for an interval of length L.
class SignStatistic final : public DStatistic {
 public:
  explicit SignStatistic(const DataMatrix& d, int threads = 0)
      : cache_(d, threads) {}
  StatKind kind() const noexcept override { return StatKind::sign; }
  std::size_t n() const noexcept override { return cache_.n(); }
  double d(const SegmentTriple& t) const override { return d_sign_fast(cache_, t).value; }
  IntervalFamily family(int a, int b) const override;
  const PairwiseSignCache& cache() const noexcept { return cache_; }

 private:
  PairwiseSignCache cache_;
};

class MeanStatistic final : public DStatistic {
 public:
  explicit MeanStatistic(const DataMatrix& d) : kernel_(d) {}
  StatKind kind() const noexcept override { return StatKind::mean; }
  std::size_t n() const noexcept override { return kernel_.n(); }
  double d(const SegmentTriple& t) const override;
  IntervalFamily family(int a, int b) const override;

 private:
  MeanKernel kernel_;
};

std::unique_ptr<DStatistic> make_statistic(const DataMatrix& d, StatKind kind,
                                           int threads = 0);

/// W_L(k; a, b) with L = b - a + 1:
///   (1/L) [ sum_{t=a+1}^{k-2} D(t;a,k)^2 + sum_{t=k+2}^{b-2} D(t;k+1,b)^2 ].
/// Requires a+3 <= k <= b-4.
double self_normalizer(const IntervalFamily& family, int k);

struct SnStatResult {
  double stat = 0.0;
  int argmax_k = 0;
  /// Ratio for k = a+3, ..., b-4.
  std::vector<double> ratios;
  StatKind kind = StatKind::sign;
  int a = 0;
  int b = 0;
  /// Set when some W was zero while D was not (ratio reported as +inf).
  bool degenerate = false;

  double ratio_at(int k) const { return ratios[static_cast<std::size_t>(k - (a + 3))]; }
};

/// sup_k D(k;a,b)^2 / W_L(k;a,b) over k in {a+3, ..., b-4}. Throws
/// IntervalTooShort when b - a + 1 < 8. Ties in the sup resolve to the
/// smallest k; 0/0 ratios count as 0.
SnStatResult sn_statistic(const DStatistic& stat, int a, int b);
SnStatResult sn_statistic(const IntervalFamily& family, StatKind kind);
SnStatResult sn_statistic(const DataMatrix& d, int a, int b, StatKind kind);

}  // namespace signseg
