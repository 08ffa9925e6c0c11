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

#include "signseg/limit_dist.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "signseg/parallel.hpp"

namespace signseg {

int NoncentralSpec::kstar(int n) const {
  return static_cast<int>(std::floor(n * bstar));
}

void NoncentralSpec::validate() const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("noncentral c must be >= 0");
  if (!(bstar > 0.0 && bstar < 1.0)) throw DomainError("bstar must lie in (0, 1)");
}

LimitDraw::LimitDraw(int n, RandomStream& stream) : n_(n) {
  if (n < 2) throw DomainError("limit draw needs n >= 2");
  z_.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (double& v : z_) v = stream.normal();
  build_windows();
}

LimitDraw::LimitDraw(int n, std::span<const double> z) : n_(n), z_(z.begin(), z.end()) {
  if (n < 2 || z_.size() != static_cast<std::size_t>(n) * (n - 1) / 2)
    throw DomainError("limit draw needs n(n-1)/2 values");
  build_windows();
}

void LimitDraw::build_windows() {
  const std::size_t w = static_cast<std::size_t>(n_) + 2;
  window_.assign(w * w, 0.0);
  std::vector<double> prefix(static_cast<std::size_t>(n_) + 1, 0.0);
  for (int b = 2; b <= n_; ++b) {
    const double* row = z_.data() + tri(b);
    for (int j = 1; j < b; ++j) prefix[j] = prefix[j - 1] + row[j - 1];
    for (int a = 1; a < b; ++a)
      window_[a * w + b] = window_[a * w + b - 1] + prefix[b - 1] - prefix[a - 1];
  }
}

double q_process(const LimitDraw& draw, int a, int b) {
  if (a < 1 || b > draw.n() || a >= b)
    throw DomainError("q_process needs 1 <= a < b <= n");
  return std::sqrt(2.0) / draw.n() * draw.pair_window(a, b);
}

namespace {

// G_n without argument checks; windows with a >= b are empty.
double g_unchecked(const LimitDraw& draw, int k, int l, int m) {
  const double n = draw.n();
  const double scale = std::sqrt(2.0) / n;
  auto q = [&](int a, int b) { return a < b ? scale * draw.pair_window(a, b) : 0.0; };
  const double ml = (m - l) / n;
  const double mk = (m - k - 1) / n;
  const double kl = (k - l) / n;
  return ml * mk * q(l, k) + ml * kl * q(k + 1, m) - kl * mk * q(l, m);
}

double choose2(int x) { return x < 2 ? 0.0 : 0.5 * x * (x - 1); }

}  // namespace

double g_process(const LimitDraw& draw, int k, int l, int m) {
  if (l < 1 || m > draw.n() || l > k || k >= m)
    throw DomainError("g_process needs 1 <= l <= k < m <= n");
  return g_unchecked(draw, k, l, m);
}

double delta_shift(int n, int k, int l, int m, int kstar) {
  const double n4 = std::pow(static_cast<double>(n), 4);
  if (l < k && k <= kstar && kstar < m) return 4.0 * choose2(k - l + 1) * choose2(m - kstar) / n4;
  if (l < kstar && kstar < k && k < m) return 4.0 * choose2(kstar - l + 1) * choose2(m - k) / n4;
  return 0.0;
}

double limit_functional(const LimitDraw& draw, const std::optional<NoncentralSpec>& spec) {
  const int n = draw.n();
  if (n < 8) throw DomainError("the fixed-n limit is defined for n >= 8");
  const int kstar = spec ? spec->kstar(n) : 0;
  auto h = [&](int k, int l, int m) {
    const double g = g_unchecked(draw, k, l, m);
    if (!spec) return g;
    return std::sqrt(2.0) * g + spec->c * delta_shift(n, k, l, m, kstar);
  };
  double best = 0.0;
  for (int k = 4; k <= n - 4; ++k) {
    const double num = h(k, 1, n);
    double den = 0.0;
    for (int t = 2; t <= k - 2; ++t) {
      const double v = h(t, 1, k);
      den += v * v;
    }
    for (int t = k + 2; t <= n - 2; ++t) {
      const double v = h(t, k + 1, n);
      den += v * v;
    }
    double ratio;
    if (den > 0.0) {
      ratio = n * num * num / den;
    } else {
      ratio = num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    best = std::max(best, ratio);
  }
  return best;
}

double QuantileTable::quantile(double prob) const {
  if (sorted_values.empty()) throw DomainError("empty quantile table");
  if (!(prob > 0.0 && prob <= 1.0)) throw DomainError("quantile level must lie in (0, 1]");
  const double pos = std::ceil(prob * static_cast<double>(sorted_values.size()) - 1e-9);
  const std::size_t idx = static_cast<std::size_t>(std::max(pos, 1.0)) - 1;
  return sorted_values[std::min(idx, sorted_values.size() - 1)];
}

QuantileTable simulate_limit(int n, std::size_t replicates, std::uint64_t seed,
                             const std::optional<NoncentralSpec>& spec, int threads) {
  if (n < 8) throw DomainError("n must be >= 8");
  if (replicates < 1) throw DomainError("replicate count must be >= 1");
  if (spec) spec->validate();
  QuantileTable table;
  table.n = n;
  table.replicates = replicates;
  table.seed = seed;
  table.noncentral = spec;
  table.sorted_values.resize(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    RandomStream stream(seed, r);
    LimitDraw draw(n, stream);
    table.sorted_values[r] = limit_functional(draw, spec);
  });
  std::sort(table.sorted_values.begin(), table.sorted_values.end());
  return table;
}

double p_value(const QuantileTable& table, double observed) {
  if (table.sorted_values.empty()) throw DomainError("empty quantile table");
  if (std::isnan(observed)) throw DomainError("observed statistic is NaN");
  const auto& v = table.sorted_values;
  const auto exceed =
      static_cast<double>(v.end() - std::lower_bound(v.begin(), v.end(), observed));
  return (1.0 + exceed) / (static_cast<double>(v.size()) + 1.0);
}

void save_table(const QuantileTable& table, const std::filesystem::path& path) {
  nlohmann::json j;
  j["format"] = "signseg-limit-table";
  j["format_version"] = kTableFormatVersion;
  j["n"] = table.n;
  j["replicates"] = table.replicates;
  j["seed"] = table.seed;
  if (table.noncentral)
    j["noncentral"] = {{"c", table.noncentral->c}, {"bstar", table.noncentral->bstar}};
  else
    j["noncentral"] = nullptr;
  j["values"] = table.sorted_values;
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << j.dump() << '\n';
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

QuantileTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("corrupt table file '" + path.string() + "': " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "signseg-limit-table")
      throw FormatError("'" + path.string() + "' is not a limit table");
    const int version = j.at("format_version").get<int>();
    if (version != kTableFormatVersion)
      throw VersionError("table format version " + std::to_string(version) +
                         " not supported (expected " + std::to_string(kTableFormatVersion) + ")");
    QuantileTable t;
    t.n = j.at("n").get<int>();
    t.replicates = j.at("replicates").get<std::size_t>();
    t.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("noncentral").is_null()) {
      t.noncentral = NoncentralSpec{j["noncentral"].at("c").get<double>(),
                                    j["noncentral"].at("bstar").get<double>()};
    }
    t.sorted_values = j.at("values").get<std::vector<double>>();
    if (t.sorted_values.size() != t.replicates || t.replicates == 0)
      throw FormatError("table '" + path.string() + "' has a wrong value count");
    if (!std::is_sorted(t.sorted_values.begin(), t.sorted_values.end()) ||
        t.sorted_values.front() < 0.0)
      throw FormatError("table '" + path.string() + "' values are not sorted and nonnegative");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("malformed table file '" + path.string() + "': " + e.what());
  }
}

TableCache::TableCache(std::optional<std::filesystem::path> dir, std::size_t replicates,
                       std::uint64_t seed, int threads)
    : dir_(std::move(dir)), replicates_(replicates), seed_(seed), threads_(threads) {
  if (replicates_ < 1) throw DomainError("replicate count must be >= 1");
  if (dir_) {
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    if (ec) throw IoError("cannot create table directory '" + dir_->string() + "'");
  }
}

std::filesystem::path TableCache::path_for(int n) const {
  std::ostringstream name;
  name << "limit_n" << n << "_B" << replicates_ << "_seed" << seed_ << ".json";
  return dir_ ? *dir_ / name.str() : std::filesystem::path(name.str());
}

const QuantileTable& TableCache::get(int n) {
  std::lock_guard lock(mutex_);
  if (auto it = tables_.find(n); it != tables_.end()) return *it->second;
  std::unique_ptr<QuantileTable> table;
  if (dir_ && std::filesystem::exists(path_for(n))) {
    table = std::make_unique<QuantileTable>(load_table(path_for(n)));
    if (table->n != n || table->replicates != replicates_ || table->noncentral)
      throw FormatError("table file '" + path_for(n).string() + "' does not hold n=" +
                        std::to_string(n));
  } else {
    table = std::make_unique<QuantileTable>(
        simulate_limit(n, replicates_, seed_for(n), std::nullopt, threads_));
    simulated_.insert(n);
    if (dir_) save_table(*table, path_for(n));
  }
  return *tables_.emplace(n, std::move(table)).first->second;
}

std::set<int> TableCache::simulated() const {
  std::lock_guard lock(mutex_);
  return simulated_;
}

}  // namespace signseg
