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

#include "signseg/sign_kernel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numeric>

#include "signseg/parallel.hpp"

namespace signseg {

const char* to_string(StatKind kind) noexcept {
  return kind == StatKind::sign ? "sign" : "mean";
}

std::vector<double> spatial_sign(std::span<const double> x) {
  double sq = 0.0;
  for (double v : x) sq += v * v;
  std::vector<double> out(x.size(), 0.0);
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * inv;
  }
  return out;
}

PairwiseSignCache::PairwiseSignCache(const DataMatrix& d, int threads)
    : n_(d.n()), p_(d.p()), signs_(n_ * (n_ - 1) / 2 * p_, 0.0) {
  std::vector<unsigned char> tie(n_ * n_, 0);
  parallel_for(n_, threads, [&](std::size_t r) {
    const std::size_t i = r + 1;
    auto yi = d.row(i);
    for (std::size_t j = i + 1; j <= n_; ++j) {
      auto yj = d.row(j);
      double* s = signs_.data() + pair_index(i, j) * p_;
      double sq = 0.0;
      for (std::size_t c = 0; c < p_; ++c) {
        s[c] = yi[c] - yj[c];
        sq += s[c] * s[c];
      }
      if (sq > 0.0) {
        const double inv = 1.0 / std::sqrt(sq);
        for (std::size_t c = 0; c < p_; ++c) s[c] *= inv;
      } else {
        std::fill_n(s, p_, 0.0);
        tie[(i - 1) * n_ + (j - 1)] = 1;
      }
    }
  });
  const std::size_t w = n_ + 1;
  tie_prefix_.assign(w * w, 0);
  for (std::size_t i = 1; i <= n_; ++i) {
    for (std::size_t j = 1; j <= n_; ++j) {
      const std::size_t v = tie[(i - 1) * n_ + (j - 1)];
      tie_count_ += v;
      tie_prefix_[i * w + j] = v + tie_prefix_[(i - 1) * w + j] +
                               tie_prefix_[i * w + j - 1] -
                               tie_prefix_[(i - 1) * w + j - 1];
    }
  }
}

bool PairwiseSignCache::tied(std::size_t i, std::size_t j) const {
  if (i == j) return true;
  if (i > j) std::swap(i, j);
  const std::size_t w = n_ + 1;
  auto at = [&](std::size_t a, std::size_t b) { return tie_prefix_[a * w + b]; };
  return at(i, j) - at(i - 1, j) - at(i, j - 1) + at(i - 1, j - 1) == 1;
}

std::size_t PairwiseSignCache::tied_cross_pairs(int l, int k, int m) const {
  if (tie_count_ == 0) return 0;
  const std::size_t w = n_ + 1;
  auto at = [&](int a, int b) { return tie_prefix_[a * w + b]; };
  return at(k, m) - at(l - 1, m) - at(k, k) + at(l - 1, k);
}

DValue d_sign_oracle(const DataMatrix& d, const SegmentTriple& t) {
  validate_triple(t, d.n());
  const std::size_t p = d.p();
  std::vector<double> diff1(p), diff2(p);
  auto sign_of = [&](int i, int j, std::vector<double>& out) {
    auto yi = d.row(i);
    auto yj = d.row(j);
    for (std::size_t c = 0; c < p; ++c) out[c] = yi[c] - yj[c];
    out = spatial_sign(out);
  };
  // Neumaier-compensated accumulation of the literal quadruple sum.
  double sum = 0.0, comp = 0.0;
  for (int j1 = t.l; j1 <= t.k; ++j1) {
    for (int j3 = t.l; j3 <= t.k; ++j3) {
      if (j1 == j3) continue;
      for (int j2 = t.k + 1; j2 <= t.m; ++j2) {
        sign_of(j1, j2, diff1);
        for (int j4 = t.k + 1; j4 <= t.m; ++j4) {
          if (j2 == j4) continue;
          sign_of(j3, j4, diff2);
          const double term =
              std::inner_product(diff1.begin(), diff1.end(), diff2.begin(), 0.0);
          const double s = sum + term;
          comp += std::abs(sum) >= std::abs(term) ? (sum - s) + term : (term - s) + sum;
          sum = s;
        }
      }
    }
  }
  return {sum + comp, StatKind::sign, t};
}

DValue d_sign_fast(const PairwiseSignCache& cache, const SegmentTriple& t) {
  validate_triple(t, cache.n());
  const std::size_t p = cache.p();
  using Vec = Eigen::VectorXd;
  Vec v = Vec::Zero(p);
  Vec u(p);
  double sum_u = 0.0;
  for (int j1 = t.l; j1 <= t.k; ++j1) {
    u.setZero();
    for (int j2 = t.k + 1; j2 <= t.m; ++j2) {
      auto s = cache.sign(j1, j2);
      u += Eigen::Map<const Vec>(s.data(), p);
    }
    sum_u += u.squaredNorm();
    v += u;
  }
  double sum_w = 0.0;
  Vec w(p);
  for (int j2 = t.k + 1; j2 <= t.m; ++j2) {
    w.setZero();
    for (int j1 = t.l; j1 <= t.k; ++j1) {
      auto s = cache.sign(j1, j2);
      w += Eigen::Map<const Vec>(s.data(), p);
    }
    sum_w += w.squaredNorm();
  }
  const double pairs = static_cast<double>(t.k - t.l + 1) * (t.m - t.k) -
                       static_cast<double>(cache.tied_cross_pairs(t.l, t.k, t.m));
  return {v.squaredNorm() - sum_u - sum_w + pairs, StatKind::sign, t};
}

MeanKernel::MeanKernel(const DataMatrix& d) : n_(d.n()) {
  const std::size_t n = d.n(), p = d.p();
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      y(d.values().data(), n, p);
  Eigen::MatrixXd centered = y.rowwise() - y.colwise().mean();
  Eigen::MatrixXd gram = centered * centered.transpose();
  scale_ = n > 0 ? gram.diagonal().maxCoeff() : 0.0;

  // window_(a, b) = sum over a <= j < i <= b of gram(i, j), built as
  // Z(a, b) = Z(a, b-1) + sum_{j=a}^{b-1} gram(b, j).
  const std::size_t w = n + 2;
  window_.assign(w * w, 0.0);
  std::vector<double> row_prefix(n + 1);
  for (std::size_t b = 1; b <= n; ++b) {
    row_prefix[0] = 0.0;
    for (std::size_t j = 1; j <= n; ++j)
      row_prefix[j] = row_prefix[j - 1] + (j < b ? gram(b - 1, j - 1) : 0.0);
    for (std::size_t a = 1; a < b; ++a) {
      window_[a * w + b] = window_[a * w + b - 1] + row_prefix[b - 1] - row_prefix[a - 1];
    }
  }
}

double MeanKernel::d(int k, int l, int m) const {
  const double v =
      contrast_from_windows(k, l, m, [this](int a, int b) { return pair_window(a, b); });
  // Clear cancellation residue so tied windows stay exactly zero.
  const double len = m - l + 1;
  const double tol =
      256.0 * std::numeric_limits<double>::epsilon() * scale_ * len * len * len * len;
  return std::abs(v) <= tol ? 0.0 : v;
}

DValue d_mean(const DataMatrix& d, const SegmentTriple& t) {
  validate_triple(t, d.n());
  MeanKernel kernel(d);
  return {kernel.d(t.k, t.l, t.m), StatKind::mean, t};
}

}  // namespace signseg
