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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Usage: acceptance TABLE_DIR

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "signseg/limit_dist.hpp"
#include "signseg/sbs.hpp"
#include "signseg/seeded_intervals.hpp"
#include "signseg/sim_lab.hpp"
#include "signseg/sn_test.hpp"
#include "test_support.hpp"

using namespace signseg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  bool ok = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    detail << "    " << (cond ? "ok   " : "FAIL ") << what << "\n";
    ok = ok && cond;
  }
};

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

bool within_rel(double got, double want, double tol) {
  return std::abs(got - want) <= tol * want;
}

// 1. Quantile reproduction.
void quantiles(Criterion& c, TableCache& tables) {
  struct Row {
    int n;
    std::vector<std::pair<double, double>> targets;
    double tol;
  };
  const std::vector<Row> rows = {
      {100, {{0.80, 594.54}, {0.90, 881.93}, {0.95, 1200.31}, {0.99, 2066.37}}, 0.03},
      {20, {{0.80, 719.03}, {0.90, 1124.26}, {0.95, 1624.11}, {0.99, 3026.24}}, 0.03},
      {10, {{0.95, 5167.81}}, 0.06}};
  for (const auto& row : rows) {
    const auto t0 = Clock::now();
    const auto& table = tables.get(row.n);
    const double secs = seconds_since(t0);
    c.check(table.replicates == 50000, "n=" + std::to_string(row.n) + " B=50000");
    c.check(secs <= 600.0, "n=" + std::to_string(row.n) + " table ready in " + fmt(secs, 1) +
                               " s (limit 600 s)");
    for (const auto& [prob, want] : row.targets) {
      const double got = table.quantile(prob);
      c.check(within_rel(got, want, row.tol),
              "n=" + std::to_string(row.n) + " q" + fmt(100 * prob, 0) + " = " + fmt(got, 2) +
                  " vs " + fmt(want, 2) + " (tol " + fmt(100 * row.tol, 0) + "%)");
    }
  }
}

// 2. Oracle equivalence.
void oracle_equivalence(Criterion& c) {
  std::mt19937_64 eng(20240501);
  std::size_t d_checks = 0, d_bad = 0, ratio_checks = 0, ratio_bad = 0;
  const auto t0 = Clock::now();
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 8 + eng() % 5, p = 1 + eng() % 5;
    const auto d = inst % 5 == 0 ? testing::tied_matrix(n, p, eng())
                                 : testing::random_matrix(n, p, eng());
    PairwiseSignCache cache(d);
    for (int l = 1; l + 3 <= static_cast<int>(n); ++l)
      for (int k = l + 1; k + 2 <= static_cast<int>(n); ++k)
        for (int m = k + 2; m <= static_cast<int>(n); ++m) {
          ++d_checks;
          const double fast = d_sign_fast(cache, {k, l, m}).value;
          const double slow = d_sign_oracle(d, {k, l, m}).value;
          d_bad += !testing::rel_close(fast, slow, 1e-9);
        }
    const int ni = static_cast<int>(n);
    const auto res = sn_statistic(d, 1, ni, StatKind::sign);
    const auto oracle = testing::ratio_oracle(
        [&](int k, int l, int m) { return d_sign_oracle(d, {k, l, m}).value; }, 1, ni);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      ++ratio_checks;
      ratio_bad += i >= res.ratios.size() || !testing::rel_close(res.ratios[i], oracle[i], 1e-9);
    }
    ratio_bad += res.ratios.size() != oracle.size();
  }
  c.check(d_bad == 0, std::to_string(d_checks) + " D values, " + std::to_string(d_bad) +
                          " outside 1e-9 relative");
  c.check(ratio_bad == 0, std::to_string(ratio_checks) + " SN ratios, " +
                              std::to_string(ratio_bad) + " outside 1e-9 relative");
  c.detail << "    runtime " << fmt(seconds_since(t0), 1) << " s\n";
}

double rate(DgpCase dgp, int n, StatKind kind, std::optional<MeanShift> shift,
            std::uint64_t seed, TableCache& tables) {
  DgpSpec spec;
  spec.dgp = dgp;
  spec.n = n;
  spec.p = 100;
  spec.shift = std::move(shift);
  return *size_power_experiment(spec, kind, LimitKind::fixed_n, 0.05, 1000, seed, tables)
              .rejection_rate;
}

// 3. Size calibration.
void size_calibration(Criterion& c, TableCache& tables) {
  const auto t0 = Clock::now();
  const double r1 = rate(DgpCase::gauss_iid, 50, StatKind::sign, std::nullopt, 3001, tables);
  c.check(r1 >= 0.035 && r1 <= 0.09, "case (i) n=50 sign size " + fmt(100 * r1, 1) +
                                         "% in [3.5, 9] (reference 6.2)");
  const double r2 = rate(DgpCase::t3_iid, 20, StatKind::sign, std::nullopt, 3002, tables);
  c.check(r2 >= 0.025 && r2 <= 0.08, "case (iii) n=20 sign size " + fmt(100 * r2, 1) +
                                         "% in [2.5, 8] (reference 5.0)");
  const double r3 = rate(DgpCase::t3_iid, 20, StatKind::mean, std::nullopt, 3002, tables);
  c.check(r3 >= 0.07, "case (iii) n=20 mean size " + fmt(100 * r3, 1) +
                          "% >= 7 (reference 9.5)");
  c.detail << "    runtime " << fmt(seconds_since(t0), 1) << " s (limit 1800 s)\n";
  c.check(seconds_since(t0) <= 1800.0, "runtime within 30 min");
}

// 4. RSRM robustness.
void rsrm_robustness(Criterion& c, TableCache& tables) {
  const double s = rate(DgpCase::rsrm_gauss, 50, StatKind::sign, std::nullopt, 4001, tables);
  const double m = rate(DgpCase::rsrm_gauss, 50, StatKind::mean, std::nullopt, 4001, tables);
  c.check(s >= 0.025 && s <= 0.09,
          "case (vi) n=50 sign size " + fmt(100 * s, 1) + "% in [2.5, 9] (reference 5.3)");
  c.check(m >= 0.20, "case (vi) n=50 mean size " + fmt(100 * m, 1) + "% >= 20 (reference 39.2)");
}

// 5. Power reproduction.
void power(Criterion& c, TableCache& tables) {
  const double r = rate(DgpCase::gauss_iid, 100, StatKind::sign, MeanShift{sparse_shift(100), 50},
                        5001, tables);
  c.check(std::abs(r - 0.777) <= 0.06,
          "case (i) sparse shift n=100 sign power " + fmt(100 * r, 1) + "% within 77.7 +- 6");
}

// 6. Segmentation.
void segmentation(Criterion& c, TableCache& tables) {
  const auto t0 = Clock::now();
  SegmenterConfig normal_cfg;
  normal_cfg.alpha = std::pow(2.0, -0.25);
  const auto dense4 = three_change_model(DgpCase::gauss_iid, 120, 50, 4.0, 50, 0.7);
  const auto r1 = segmentation_experiment(dense4, normal_cfg, 100, 6001, tables);
  const double exact = r1.m_hat_histogram[2] / 100.0;
  c.check(exact >= 0.88, "Dense(4) Normal sign: m_hat = m in " + fmt(100 * exact, 0) +
                             "% of runs (>= 88; reference 96.4)");
  c.check(*r1.ari_mean >= 0.90,
          "Dense(4) Normal sign: mean ARI " + fmt(*r1.ari_mean, 3) + " >= 0.90 (reference 0.942)");

  const auto rsrm = three_change_model(DgpCase::rsrm_t5, 120, 50, 2.5, 50, 0.3);
  SegmenterConfig sign_cfg;
  sign_cfg.alpha = std::pow(2.0, -0.5);
  const auto r2 = segmentation_experiment(rsrm, sign_cfg, 100, 6002, tables);
  c.check(*r2.ari_mean >= 0.80, "Dense(2.5) RSRM sign (alpha 2^-1/2): mean ARI " +
                                    fmt(*r2.ari_mean, 3) + " >= 0.80 (reference 0.880)");
  SegmenterConfig mean_cfg;
  mean_cfg.alpha = std::pow(2.0, -0.25);
  mean_cfg.kind = StatKind::mean;
  const auto r3 = segmentation_experiment(rsrm, mean_cfg, 100, 6002, tables);
  c.check(*r3.ari_mean <= 0.70, "Dense(2.5) RSRM mean (alpha 2^-1/4): mean ARI " +
                                    fmt(*r3.ari_mean, 3) + " <= 0.70 (reference 0.532)");
  c.detail << "    runtime " << fmt(seconds_since(t0), 1) << " s (limit 3600 s)\n";
  c.check(seconds_since(t0) <= 3600.0, "runtime within 1 hour");
}

// 7. Property suites.
void properties(Criterion& c, TableCache& tables) {
  // Q_n covariance.
  {
    const int n = 20, draws = 50000;
    std::mt19937_64 eng(7001);
    std::vector<std::array<int, 4>> args;
    while (args.size() < 5) {
      std::uniform_int_distribution<int> idx(1, n);
      int a1 = idx(eng), b1 = idx(eng), a2 = idx(eng), b2 = idx(eng);
      if (a1 > b1) std::swap(a1, b1);
      if (a2 > b2) std::swap(a2, b2);
      if (a1 < b1 && a2 < b2) args.push_back({a1, b1, a2, b2});
    }
    std::vector<double> sum(5, 0), sum2(5, 0);
    for (int r = 0; r < draws; ++r) {
      RandomStream stream(7002, r);
      LimitDraw draw(n, stream);
      for (std::size_t i = 0; i < 5; ++i) {
        const auto& [a1, b1, a2, b2] = args[i];
        const double prod = q_process(draw, a1, b1) * q_process(draw, a2, b2);
        sum[i] += prod;
        sum2[i] += prod * prod;
      }
    }
    for (std::size_t i = 0; i < 5; ++i) {
      const auto& [a1, b1, a2, b2] = args[i];
      const int overlap = std::min(b1, b2) - std::max(a1, a2);
      const double theory = overlap > 0 ? overlap * (overlap + 1.0) / (n * n) : 0.0;
      const double mean = sum[i] / draws;
      const double se = std::sqrt((sum2[i] / draws - mean * mean) / draws);
      c.check(std::abs(mean - theory) <= 4 * se,
              "Cov[Q(" + std::to_string(a1) + "," + std::to_string(b1) + "), Q(" +
                  std::to_string(a2) + "," + std::to_string(b2) + ")] = " + fmt(mean, 5) +
                  " vs " + fmt(theory, 5) + " (4 SE = " + fmt(4 * se, 5) + ")");
    }
  }
  // Noncentral monotonicity in c.
  {
    std::vector<std::array<double, 3>> q;
    for (double cn : {0.0, 2.0, 4.0, 6.0, 8.0}) {
      const auto t = simulate_limit(100, 20000, 7003, NoncentralSpec{cn, 0.5});
      q.push_back({t.quantile(0.1), t.quantile(0.5), t.quantile(0.9)});
    }
    bool mono = true;
    std::string row;
    for (std::size_t i = 0; i < q.size(); ++i) {
      row += " [" + fmt(q[i][0], 1) + " " + fmt(q[i][1], 1) + " " + fmt(q[i][2], 1) + "]";
      if (i > 0)
        for (int j = 0; j < 3; ++j) mono = mono && q[i][j] >= q[i - 1][j];
    }
    c.check(mono, "noncentral 10/50/90% quantiles nondecreasing over c = 0,2,4,6,8:" + row);
  }
  // Scale/translation invariance and time reversal.
  {
    bool inv = true, rev = true;
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto d = testing::random_matrix(30, 20, 7100 + s);
      std::vector<double> v(d.values().begin(), d.values().end());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.37 * v[i] + 5.0 - 0.1 * (i % 20);
      const DataMatrix t(30, 20, v);
      const auto a = sn_statistic(d, 1, 30, StatKind::sign);
      const auto b = sn_statistic(t, 1, 30, StatKind::sign);
      const auto r = sn_statistic(d.reversed(), 1, 30, StatKind::sign);
      for (int k = 4; k <= 26; ++k) {
        inv = inv && testing::rel_close(a.ratio_at(k), b.ratio_at(k), 1e-9);
        rev = rev && testing::rel_close(a.ratio_at(k), r.ratio_at(30 - k), 1e-9);
      }
    }
    c.check(inv, "sign ratios invariant under positive scaling and translation (1e-9)");
    c.check(rev, "ratio vector of reversed data is the mirrored vector (1e-9)");
  }
  // Seeded intervals.
  {
    bool det = true, cover = true;
    for (int n : {8, 30, 100, 120, 333})
      for (double alpha : {0.5, std::pow(2.0, -0.5), std::pow(2.0, -0.25), 0.9}) {
        const auto s1 = SeededIntervalSet::generate(n, alpha);
        det = det && s1.intervals() == SeededIntervalSet::generate(n, alpha).intervals();
        std::vector<bool> seen(n + 1, false);
        for (const auto& iv : s1.intervals())
          for (int t = iv.a; t <= iv.b; ++t) seen[t] = true;
        for (int t = 1; t <= n; ++t) cover = cover && seen[t];
      }
    c.check(det, "seeded intervals deterministic");
    c.check(cover, "seeded intervals cover [1, n]");
  }
  // ARI and p-values.
  {
    bool self = true;
    std::mt19937_64 eng(7200);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 10 + eng() % 200;
      std::vector<int> cps;
      for (int t = 1; t < n; ++t)
        if (eng() % 9 == 0) cps.push_back(t);
      self = self && ari(cps, cps, n) == 1.0;
    }
    c.check(self, "ARI(x, x) = 1 exactly on 100 random segmentations");
    const auto& table = tables.get(20);
    bool mono = true;
    double prev = 1.0;
    for (double x = 0; x <= table.sorted_values.back() * 1.1; x += table.sorted_values.back() / 5000) {
      const double p = p_value(table, x);
      mono = mono && p <= prev && p > 0.0 && p <= 1.0;
      prev = p;
    }
    c.check(mono, "p-value nonincreasing in the observed statistic");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance TABLE_DIR\n");
    return 2;
  }
  TableCache tables(std::filesystem::path(argv[1]), kDefaultReplicates, kDefaultTableSeed);
  struct Entry {
    const char* name;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> entries = {
      {"1 quantile reproduction", [&](Criterion& c) { quantiles(c, tables); }},
      {"2 oracle equivalence", [&](Criterion& c) { oracle_equivalence(c); }},
      {"3 size calibration", [&](Criterion& c) { size_calibration(c, tables); }},
      {"4 RSRM robustness", [&](Criterion& c) { rsrm_robustness(c, tables); }},
      {"5 power reproduction", [&](Criterion& c) { power(c, tables); }},
      {"6 segmentation", [&](Criterion& c) { segmentation(c, tables); }},
      {"7 property suites", [&](Criterion& c) { properties(c, tables); }},
  };
  bool all = true;
  for (const auto& e : entries) {
    Criterion c;
    const auto t0 = Clock::now();
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.check(false, std::string("exception: ") + ex.what());
    }
    std::printf("[%s] criterion %s (%.1f s)\n%s", c.ok ? "PASS" : "FAIL", e.name,
                seconds_since(t0), c.detail.str().c_str());
    std::fflush(stdout);
    all = all && c.ok;
  }
  return all ? 0 : 1;
}
