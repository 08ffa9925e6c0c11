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

#include "signseg/sbs.hpp"

#include <algorithm>
#include <set>

#include "signseg/parallel.hpp"
#include "signseg/seeded_intervals.hpp"

namespace signseg {

void SegmenterConfig::validate() const {
  if (!(zeta_p > 0.0 && zeta_p < 1.0)) throw DomainError("zeta_p must lie in (0, 1)");
  if (!(alpha >= 0.5 && alpha < 1.0)) throw DomainError("alpha must lie in [1/2, 1)");
}

std::optional<std::size_t> select_candidate(std::span<const IntervalCandidate> candidates) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!best) {
      best = i;
      continue;
    }
    const auto& c = candidates[i];
    const auto& b = candidates[*best];
    if (c.p_value != b.p_value) {
      if (c.p_value < b.p_value) best = i;
    } else if (c.length() != b.length()) {
      if (c.length() < b.length()) best = i;
    } else if (c.a < b.a) {
      best = i;
    }
  }
  return best;
}

ChangePointResult segment(const DStatistic& stat, const SegmenterConfig& cfg,
                          TableCache& tables, int threads) {
  cfg.validate();
  ChangePointResult result;
  const int n = static_cast<int>(stat.n());
  if (n < 8) return result;

  const auto seeded = SeededIntervalSet::generate(n, cfg.alpha);
  const auto& intervals = seeded.intervals();
  std::set<int> lengths;
  for (const auto& iv : intervals) lengths.insert(iv.length());
  for (int len : lengths) tables.get(len);

  std::vector<IntervalCandidate> all(intervals.size());
  parallel_for(intervals.size(), threads, [&](std::size_t i) {
    const auto& iv = intervals[i];
    const auto res = sn_statistic(stat, iv.a, iv.b);
    all[i] = {iv.a, iv.b, res.stat, tables.p_value(iv.length(), res.stat), res.argmax_k};
  });

  std::vector<std::pair<int, int>> pending{{1, n}};
  std::vector<IntervalCandidate> inside;
  while (!pending.empty()) {
    const auto [a, b] = pending.back();
    pending.pop_back();
    if (b - a + 1 < 8) continue;
    inside.clear();
    for (const auto& c : all)
      if (c.a >= a && c.b <= b) inside.push_back(c);
    const auto pick = select_candidate(inside);
    if (!pick) continue;
    const auto& best = inside[*pick];
    if (!(best.p_value < cfg.zeta_p)) continue;
    const int k = best.argmax_k;
    result.detections.push_back({k, best.a, best.b, best.p_value, best.statistic});
    // Right child pushed first so the left branch is explored first.
    pending.emplace_back(k + 1, b);
    pending.emplace_back(a, k);
  }
  std::sort(result.detections.begin(), result.detections.end(),
            [](const Detection& x, const Detection& y) { return x.location < y.location; });
  for (const auto& det : result.detections) result.locations.push_back(det.location);
  return result;
}

ChangePointResult segment(const DataMatrix& d, const SegmenterConfig& cfg, TableCache& tables,
                          int threads) {
  cfg.validate();
  if (d.n() < 8) return {};
  auto stat = make_statistic(d, cfg.kind, threads);
  return segment(*stat, cfg, tables, threads);
}

}  // namespace signseg
