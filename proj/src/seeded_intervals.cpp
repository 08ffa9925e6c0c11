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

#include "signseg/seeded_intervals.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "signseg/core.hpp"

namespace signseg {

namespace {

// Powers of 2^(-1/2) and similar land a few ulps away from integers; the
// tolerance keeps ceil() from jumping to the next integer.
constexpr double kRoundingSlack = 1e-9;

long long ceil_slack(double x) { return static_cast<long long>(std::ceil(x - kRoundingSlack)); }

}  // namespace

SeededIntervalSet SeededIntervalSet::generate(int n, double alpha) {
  if (n < 8) throw DomainError("seeded intervals need n >= 8");
  if (!(alpha >= 0.5 && alpha < 1.0)) throw DomainError("alpha must lie in [1/2, 1)");
  SeededIntervalSet set;
  set.n_ = n;
  set.alpha_ = alpha;
  const int layers = static_cast<int>(
      std::max<long long>(1, ceil_slack(std::log(static_cast<double>(n)) / std::log(1.0 / alpha))));
  std::set<std::pair<int, int>> seen;
  for (int k = 1; k <= layers; ++k) {
    const double decay = std::pow(alpha, k - 1);
    const int count = static_cast<int>(2 * ceil_slack(1.0 / decay) - 1);
    const int length = static_cast<int>(
        std::min<long long>(10 * ceil_slack(n * decay / 10.0), n));
    const int span = n - length;
    set.layers_.push_back({count, length, count > 1 ? static_cast<double>(span) / (count - 1) : 0.0});
    for (int i = 1; i <= count; ++i) {
      // floor((i-1) s_k) in exact integer arithmetic.
      const long long offset =
          count > 1 ? static_cast<long long>(i - 1) * span / (count - 1) : 0;
      const int a = 1 + static_cast<int>(offset);
      const int b = a + length - 1;
      if (length < 8) continue;
      if (seen.emplace(a, b).second) set.intervals_.push_back({a, b, k});
    }
  }
  return set;
}

std::vector<SeededInterval> SeededIntervalSet::within(int a, int b) const {
  std::vector<SeededInterval> out;
  for (const auto& iv : intervals_)
    if (iv.a >= a && iv.b <= b) out.push_back(iv);
  return out;
}

void SeededIntervalSet::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "a,b,layer\n";
  for (const auto& iv : intervals_) out << iv.a << ',' << iv.b << ',' << iv.layer << '\n';
}

}  // namespace signseg
