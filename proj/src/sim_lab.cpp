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


#include "signseg/sim_lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "signseg/parallel.hpp"
#include "signseg/seeded_intervals.hpp"
#include "signseg/sn_test.hpp"

namespace signseg {

namespace {

constexpr std::array<const char*, 7> kCaseNames = {
    "gauss_iid", "t5_iid", "t3_iid", "ar1_gauss", "ar1_t5", "rsrm_gauss", "rsrm_t5"};
constexpr std::array<const char*, 7> kRoman = {"i", "ii", "iii", "iv", "v", "vi", "vii"};

bool heavy_innovations(DgpCase c) {
  return c == DgpCase::ar1_t5 || c == DgpCase::rsrm_t5;
}

// Multivariate t with covariance I_p: Gaussian vector over sqrt(chi2_nu / nu),
// rescaled by sqrt((nu - 2) / nu).
void fill_t(std::span<double> row, double nu, RandomStream& stream) {
  if (!(nu > 2.0)) throw DomainError("t covariance normalisation needs nu > 2");
  const double scale = std::sqrt((nu - 2.0) / nu) / std::sqrt(stream.chi_squared(nu) / nu);
  for (double& v : row) v = stream.normal() * scale;
}

// AR(1) across coordinates started from its stationary law.
void fill_ar1(std::span<double> row, double rho, bool t5, RandomStream& stream) {
  auto innovation = [&] { return 0.5 * (t5 ? stream.student_t(5.0) : stream.normal()); };
  double x;
  if (!t5) {
    x = stream.normal() * 0.5 / std::sqrt(1.0 - rho * rho);
  } else {
    // Truncated MA(infinity) representation; weights below 1e-12 dropped.
    int terms = 1;
    if (rho != 0.0)
      terms = std::min(2000, static_cast<int>(std::ceil(std::log(1e-12) / std::log(std::abs(rho)))));
    x = 0.0;
    double w = 1.0;
    for (int j = 0; j < terms; ++j) {
      x += w * innovation();
      w *= rho;
    }
  }
  for (double& v : row) {
    x = rho * x + innovation();
    v = x;
  }
}

std::uint64_t label_seed(std::uint64_t seed, const std::string& label) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return mix_seed(seed, h);
}

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

double choose2(double x) { return 0.5 * x * (x - 1.0); }

}  // namespace

const char* to_string(DgpCase c) noexcept { return kCaseNames[static_cast<std::size_t>(c)]; }

std::optional<DgpCase> parse_dgp_case(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kCaseNames.size(); ++i)
    if (name == kCaseNames[i] || name == kRoman[i]) return static_cast<DgpCase>(i);
  return std::nullopt;
}

const char* to_string(LimitKind kind) noexcept {
  return kind == LimitKind::fixed_n ? "fixed_n" : "sequential_proxy";
}

void DgpSpec::validate() const {
  if (n < 1 || p < 1) throw DomainError("n and p must be positive");
  if (!(rho > -1.0 && rho < 1.0)) throw DomainError("rho must lie in (-1, 1)");
  if (shift) {
    if (shift->kstar < 1 || shift->kstar > n - 1) throw DomainError("kstar must lie in [1, n-1]");
    if (shift->delta.size() != static_cast<std::size_t>(p))
      throw DomainError("shift vector must have length p");
  }
  if (changes) {
    if (changes->locations.size() != changes->jumps.size())
      throw DomainError("one jump vector per change location required");
    int prev = 0;
    for (std::size_t c = 0; c < changes->locations.size(); ++c) {
      const int loc = changes->locations[c];
      if (loc <= prev || loc > n - 1)
        throw DomainError("change locations must ascend strictly within [1, n-1]");
      if (changes->jumps[c].size() != static_cast<std::size_t>(p))
        throw DomainError("jump vectors must have length p");
      prev = loc;
    }
  }
}

std::vector<int> DgpSpec::change_locations() const {
  std::set<int> locs;
  if (shift) locs.insert(shift->kstar);
  if (changes) locs.insert(changes->locations.begin(), changes->locations.end());
  return {locs.begin(), locs.end()};
}

DataMatrix draw_dgp(const DgpSpec& spec, RandomStream& stream) {
  spec.validate();
  const std::size_t n = static_cast<std::size_t>(spec.n), p = static_cast<std::size_t>(spec.p);
  std::vector<double> values(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> row(values.data() + i * p, p);
    switch (spec.dgp) {
      case DgpCase::gauss_iid:
        for (double& v : row) v = stream.normal();
        break;
      case DgpCase::t5_iid:
        fill_t(row, 5.0, stream);
        break;
      case DgpCase::t3_iid:
        fill_t(row, 3.0, stream);
        break;
      case DgpCase::ar1_gauss:
      case DgpCase::ar1_t5:
        fill_ar1(row, spec.rho, heavy_innovations(spec.dgp), stream);
        break;
      case DgpCase::rsrm_gauss:
      case DgpCase::rsrm_t5: {
        fill_ar1(row, spec.rho, heavy_innovations(spec.dgp), stream);
        const double u = stream.exponential();
        for (double& v : row) v /= u;
        break;
      }
    }
    const int t = static_cast<int>(i) + 1;
    if (spec.shift && t > spec.shift->kstar)
      for (std::size_t j = 0; j < p; ++j) row[j] += spec.shift->delta[j];
    if (spec.changes)
      for (std::size_t c = 0; c < spec.changes->locations.size(); ++c)
        if (t > spec.changes->locations[c])
          for (std::size_t j = 0; j < p; ++j) row[j] += spec.changes->jumps[c][j];
  }
  return DataMatrix(n, p, std::move(values));
}

std::vector<double> dense_shift(int p) {
  return std::vector<double>(static_cast<std::size_t>(p), 1.0 / std::sqrt(static_cast<double>(p)));
}

std::vector<double> sparse_shift(int p) {
  std::vector<double> d(static_cast<std::size_t>(p), 0.0);
  for (int j = 0; j < std::min(p, 2); ++j) d[j] = 1.0;
  return d;
}

DgpSpec three_change_model(DgpCase dgp, int n, int p, double h, int d, double rho) {
  if (d < 1 || d > p) throw DomainError("d must lie in [1, p]");
  if (!(h >= 0.0)) throw DomainError("h must be >= 0");
  std::vector<double> theta(static_cast<std::size_t>(p), 0.0);
  for (int j = 0; j < d; ++j) theta[j] = std::sqrt(h / d);
  std::vector<double> neg(theta);
  for (double& v : neg) v = -v;
  DgpSpec spec;
  spec.dgp = dgp;
  spec.n = n;
  spec.p = p;
  spec.rho = rho;
  spec.changes = MultiChange{{n / 4, n / 2, 3 * n / 4}, {theta, neg, theta}};
  spec.validate();
  return spec;
}

std::vector<double> simulate_statistics(const DgpSpec& spec, StatKind kind,
                                        std::size_t replicates, std::uint64_t seed,
                                        int threads) {
  spec.validate();
  if (spec.n < 8) throw IntervalTooShort("the SN statistic needs n >= 8");
  std::vector<double> stats(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    RandomStream stream(seed, r);
    const DataMatrix d = draw_dgp(spec, stream);
    auto stat = make_statistic(d, kind, 1);
    stats[r] = sn_statistic(*stat, 1, spec.n).stat;
  });
  return stats;
}

double rejection_rate(std::span<const double> statistics, const QuantileTable& table,
                      double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0, 1)");
  if (statistics.empty()) throw DomainError("no statistics");
  const double crit = table.quantile(1.0 - level);
  const auto hits = std::count_if(statistics.begin(), statistics.end(),
                                  [crit](double s) { return s > crit; });
  return static_cast<double>(hits) / static_cast<double>(statistics.size());
}

namespace {

std::vector<std::pair<std::string, std::string>> base_config(const DgpSpec& spec) {
  return {{"case", to_string(spec.dgp)},
          {"n", std::to_string(spec.n)},
          {"p", std::to_string(spec.p)},
          {"rho", fmt(spec.rho)}};
}

ExperimentReport rate_report(const DgpSpec& spec, StatKind kind, LimitKind limit,
                             double level, std::span<const double> stats,
                             std::uint64_t seed, TableCache& tables) {
  ExperimentReport rep;
  rep.config = base_config(spec);
  rep.config.emplace_back("statistic", to_string(kind));
  rep.config.emplace_back("limit", to_string(limit));
  rep.config.emplace_back("level", fmt(level));
  rep.replicates = stats.size();
  rep.seed = seed;
  const int table_n = limit == LimitKind::fixed_n ? spec.n : kSequentialProxyN;
  rep.rejection_rate = rejection_rate(stats, tables.get(table_n), level);
  return rep;
}

}  // namespace

ExperimentReport size_power_experiment(const DgpSpec& spec, StatKind kind, LimitKind limit,
                                       double level, std::size_t replicates,
                                       std::uint64_t seed, TableCache& tables, int threads) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0, 1)");
  if (replicates < 1) throw DomainError("replicate count must be >= 1");
  const auto stats = simulate_statistics(spec, kind, replicates, seed, threads);
  return rate_report(spec, kind, limit, level, stats, seed, tables);
}

ExperimentReport segmentation_experiment(const DgpSpec& model, const SegmenterConfig& cfg,
                                         std::size_t replicates, std::uint64_t seed,
                                         TableCache& tables, int threads) {
  model.validate();
  cfg.validate();
  if (replicates < 1) throw DomainError("replicate count must be >= 1");
  const std::vector<int> truth = model.change_locations();
  if (model.n >= 8) {
    const auto seeded = SeededIntervalSet::generate(model.n, cfg.alpha);
    for (const auto& iv : seeded.intervals()) tables.get(iv.length());
  }

  std::vector<int> m_hat(replicates);
  std::vector<double> aris(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    RandomStream stream(seed, r);
    const DataMatrix d = draw_dgp(model, stream);
    const auto result = segment(d, cfg, tables, 1);
    m_hat[r] = result.m_hat();
    aris[r] = ari(result.locations, truth, model.n);
  });

  ExperimentReport rep;
  rep.config = base_config(model);
  rep.config.emplace_back("statistic", to_string(cfg.kind));
  rep.config.emplace_back("alpha", fmt(cfg.alpha));
  rep.config.emplace_back("zeta_p", fmt(cfg.zeta_p));
  rep.config.emplace_back("m", std::to_string(truth.size()));
  rep.replicates = replicates;
  rep.seed = seed;
  std::vector<std::pair<int, int>> outcomes;
  const int m = static_cast<int>(truth.size());
  for (int mh : m_hat) {
    const int diff = mh - m;
    const std::size_t bin = diff < -1 ? 0 : diff > 1 ? 4 : static_cast<std::size_t>(diff + 2);
    ++rep.m_hat_histogram[bin];
    outcomes.emplace_back(mh, m);
  }
  rep.mse = mse_mhat(outcomes);
  rep.ari_mean = pairwise_sum(aris) / static_cast<double>(replicates);
  rep.m_hat = std::move(m_hat);
  return rep;
}

double ari(std::span<const int> changes_a, std::span<const int> changes_b, int n) {
  if (n < 1) throw DomainError("n must be positive");
  for (auto list : {changes_a, changes_b}) {
    int prev = 0;
    for (int c : list) {
      if (c <= prev || c > n - 1)
        throw DomainError("change points must ascend strictly within [1, n-1]");
      prev = c;
    }
  }
  std::map<std::pair<int, int>, long long> table;
  std::vector<long long> rows(changes_a.size() + 1, 0), cols(changes_b.size() + 1, 0);
  std::size_t ia = 0, ib = 0;
  for (int t = 1; t <= n; ++t) {
    while (ia < changes_a.size() && changes_a[ia] < t) ++ia;
    while (ib < changes_b.size() && changes_b[ib] < t) ++ib;
    ++table[{static_cast<int>(ia), static_cast<int>(ib)}];
    ++rows[ia];
    ++cols[ib];
  }
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, count] : table) index += choose2(static_cast<double>(count));
  for (long long c : rows) sum_a += choose2(static_cast<double>(c));
  for (long long c : cols) sum_b += choose2(static_cast<double>(c));
  const double total = choose2(static_cast<double>(n));
  const double expected = total > 0.0 ? sum_a * sum_b / total : 0.0;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

double mse_mhat(std::span<const std::pair<int, int>> outcomes) {
  if (outcomes.empty()) throw DomainError("no outcomes");
  std::vector<double> sq;
  sq.reserve(outcomes.size());
  for (const auto& [mh, m] : outcomes) sq.push_back(static_cast<double>(mh - m) * (mh - m));
  return pairwise_sum(sq) / static_cast<double>(outcomes.size());
}

HillEstimate hill(std::span<const double> series, int k) {
  const int n = static_cast<int>(series.size());
  if (k < 1 || k >= n)
    throw DomainError("k must satisfy 1 <= k < " + std::to_string(n) + " (got " +
                      std::to_string(k) + ")");
  std::vector<double> y(series.begin(), series.end());
  std::sort(y.begin(), y.end());
  auto estimate = [k](auto ratio_at, double& out) {
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
      const double ratio = ratio_at(i);
      if (!(ratio > 0.0) || !std::isfinite(ratio)) return false;
      logs.push_back(std::log(ratio));
    }
    const double mean = pairwise_sum(logs) / k;
    if (!(mean > 0.0)) return false;
    out = 1.0 / mean;
    return std::isfinite(out);
  };
  HillEstimate h;
  h.k = k;
  // y[i - 1] is the i-th order statistic.
  h.left_defined = estimate([&](int i) { return y[i - 1] / y[k]; }, h.left);
  h.right_defined = estimate([&](int i) { return y[n - i] / y[n - k - 1]; }, h.right);
  if (!h.left_defined) h.left = 0.0;
  if (!h.right_defined) h.right = 0.0;
  return h;
}

bool is_preset(std::string_view preset) noexcept {
  return preset == "table2" || preset == "table3" || preset == "table4" ||
         preset == "powercurve";
}

namespace {

constexpr double kLevel = 0.05;

std::vector<ExperimentReport> table2_preset(std::size_t replicates, std::uint64_t seed,
                                            TableCache& tables, int threads) {
  std::vector<ExperimentReport> out;
  const int p = 100;
  for (int ci = 0; ci < 7; ++ci) {
    for (int n : {10, 20, 50}) {
      for (const char* alt : {"null", "dense", "sparse"}) {
        DgpSpec spec;
        spec.dgp = static_cast<DgpCase>(ci);
        spec.n = n;
        spec.p = p;
        const std::string a = alt;
        if (a == "dense") spec.shift = MeanShift{dense_shift(p), n / 2};
        if (a == "sparse") spec.shift = MeanShift{sparse_shift(p), n / 2};
        for (StatKind kind : {StatKind::sign, StatKind::mean}) {
          const std::string label = std::string("table2/") + kRoman[ci] + "/" +
                                    std::to_string(n) + "/" + a + "/" + to_string(kind);
          const std::uint64_t s = label_seed(seed, label);
          const auto stats = simulate_statistics(spec, kind, replicates, s, threads);
          for (LimitKind limit : {LimitKind::fixed_n, LimitKind::sequential_proxy}) {
            auto rep = rate_report(spec, kind, limit, kLevel, stats, s, tables);
            rep.config.insert(rep.config.begin() + 4, {"alternative", a});
            out.push_back(std::move(rep));
          }
        }
      }
    }
  }
  return out;
}

std::vector<ExperimentReport> segmentation_preset(bool dense, std::size_t replicates,
                                                  std::uint64_t seed, TableCache& tables,
                                                  int threads) {
  std::vector<ExperimentReport> out;
  const int n = 120, p = 50;
  const int d = dense ? p : 5;
  for (double h : {2.5, 4.0}) {
    for (DgpCase dgp : {DgpCase::gauss_iid, DgpCase::rsrm_t5}) {
      const double rho = dgp == DgpCase::gauss_iid ? 0.7 : 0.3;
      const DgpSpec model = three_change_model(dgp, n, p, h, d, rho);
      for (double alpha : {std::pow(2.0, -0.5), std::pow(2.0, -0.25)}) {
        for (StatKind kind : {StatKind::sign, StatKind::mean}) {
          SegmenterConfig cfg;
          cfg.alpha = alpha;
          cfg.kind = kind;
          const std::string model_name =
              std::string(dense ? "Dense(" : "Sparse(") + fmt(h) + ")";
          const std::string label = model_name + "/" + to_string(dgp) + "/" + fmt(alpha) +
                                    "/" + to_string(kind);
          auto rep = segmentation_experiment(model, cfg, replicates, label_seed(seed, label),
                                             tables, threads);
          rep.config.insert(rep.config.begin(), {"model", model_name});
          out.push_back(std::move(rep));
        }
      }
    }
  }
  return out;
}

std::vector<ExperimentReport> powercurve_preset(std::size_t replicates, std::uint64_t seed,
                                                TableCache& tables, int threads) {
  std::vector<ExperimentReport> out;
  const int n = 100, p = 100;
  for (StatKind kind : {StatKind::sign, StatKind::mean}) {
    for (double c : {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
      DgpSpec spec;
      spec.n = n;
      spec.p = p;
      auto delta = dense_shift(p);
      for (double& v : delta) v *= c;
      spec.shift = MeanShift{delta, n / 2};
      const std::string label = "powercurve/" + fmt(c) + "/" + to_string(kind);
      auto rep = size_power_experiment(spec, kind, LimitKind::fixed_n, kLevel, replicates,
                                       label_seed(seed, label), tables, threads);
      rep.config.insert(rep.config.begin() + 4, {"shift_scale", fmt(c)});
      out.push_back(std::move(rep));
    }
  }
  return out;
}

}  // namespace

std::vector<ExperimentReport> run_preset(std::string_view preset, std::size_t replicates,
                                         std::uint64_t seed, TableCache& tables, int threads) {
  if (replicates < 1) throw DomainError("replicate count must be >= 1");
  if (preset == "table2") return table2_preset(replicates, seed, tables, threads);
  if (preset == "table3") return segmentation_preset(true, replicates, seed, tables, threads);
  if (preset == "table4") return segmentation_preset(false, replicates, seed, tables, threads);
  if (preset == "powercurve") return powercurve_preset(replicates, seed, tables, threads);
  throw DomainError("unknown preset '" + std::string(preset) +
                    "' (expected table2, table3, table4 or powercurve)");
}

}  // namespace signseg
