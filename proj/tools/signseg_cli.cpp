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


#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "signseg.h"

namespace {

constexpr std::uint64_t kDefaultSeed = 20230417;
constexpr std::size_t kDefaultTableReplicates = 50000;

// Failure carrying the process exit code.
struct Exit {
  int code;
};

int exit_code(signseg_status status) { return status == SIGNSEG_ERR_INTERNAL ? 1 : 2; }

void check(signseg_status status) {
  if (status == SIGNSEG_OK) return;
  std::cerr << "error: " << signseg_last_error() << " [" << signseg_status_name(status)
            << "]\n";
  throw Exit{exit_code(status)};
}

[[noreturn]] void usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  throw Exit{2};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using DataPtr = std::unique_ptr<signseg_data, Deleter<signseg_data, signseg_data_free>>;
using TablePtr = std::unique_ptr<signseg_table, Deleter<signseg_table, signseg_table_free>>;
using CachePtr = std::unique_ptr<signseg_table_cache,
                                 Deleter<signseg_table_cache, signseg_table_cache_free>>;
using SegPtr = std::unique_ptr<signseg_segmentation,
                               Deleter<signseg_segmentation, signseg_segmentation_free>>;

struct Common {
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
  std::string table_dir;
  bool expect_n_lt_p = false;
};

DataPtr load_data(const std::string& path, bool header, bool expect_n_lt_p = false) {
  signseg_data* raw = nullptr;
  check(signseg_data_load_csv(path.c_str(), header ? 1 : 0, &raw));
  DataPtr data(raw);
  char msg[512];
  if (expect_n_lt_p && signseg_data_transpose_warning(data.get(), msg, sizeof msg))
    std::cerr << "warning: " << msg << "\n";
  return data;
}

CachePtr open_cache(const Common& common, std::size_t replicates) {
  signseg_table_cache* raw = nullptr;
  check(signseg_table_cache_create(common.table_dir.empty() ? nullptr : common.table_dir.c_str(),
                                   replicates, common.seed, &raw));
  return CachePtr(raw);
}

void warn_simulated(const signseg_table_cache* cache, std::size_t replicates) {
  const std::size_t count = signseg_table_cache_simulated(cache, nullptr, 0);
  if (count == 0) return;
  std::vector<int> lengths(count);
  signseg_table_cache_simulated(cache, lengths.data(), count);
  std::cerr << "warning: simulated limit tables (B=" << replicates << ") for n =";
  for (int n : lengths) std::cerr << ' ' << n;
  std::cerr << "\n";
}

signseg_kind parse_kind(const std::string& kind) {
  return kind == "mean" ? SIGNSEG_KIND_MEAN : SIGNSEG_KIND_SIGN;
}

std::string fmt(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

// ---- quantiles ----

struct QuantilesArgs {
  int n = 0;
  std::size_t replicates = kDefaultTableReplicates;
  std::string out;
  std::optional<double> c;
  std::optional<double> bstar;
};

int run_quantiles(const QuantilesArgs& args, const Common& common) {
  if (args.n < 8) usage_error("n must be ≥ 8");
  if (args.replicates < 1) usage_error("B must be ≥ 1");
  if (args.bstar && !args.c) usage_error("--bstar requires --c");
  TablePtr table;
  signseg_table* raw = nullptr;
  if (args.c) {
    check(signseg_table_simulate(args.n, args.replicates, common.seed, 1, *args.c,
                                 args.bstar.value_or(0.5), &raw));
    table.reset(raw);
  } else {
    auto cache = open_cache(common, args.replicates);
    check(signseg_table_cache_get(cache.get(), args.n, &raw));
    table.reset(raw);
  }
  if (!args.out.empty()) check(signseg_table_save(table.get(), args.out.c_str()));
  const double levels[] = {0.80, 0.90, 0.95, 0.99, 0.995, 0.999};
  std::cout << "n";
  for (double l : levels) std::cout << '\t' << fmt(100.0 * l, 4) << '%';
  std::cout << '\n' << args.n;
  for (double l : levels) {
    double q = 0.0;
    check(signseg_table_quantile(table.get(), l, &q));
    std::cout << '\t' << fmt(q, 7);
  }
  std::cout << '\n';
  return 0;
}

// ---- test ----

struct TestArgs {
  std::string data;
  bool header = false;
  std::string kind = "sign";
  double level = 0.05;
  std::size_t replicates = kDefaultTableReplicates;
};

int run_test(const TestArgs& args, const Common& common) {
  if (!(args.level > 0.0 && args.level < 1.0)) usage_error("level must lie in (0, 1)");
  auto data = load_data(args.data, args.header, common.expect_n_lt_p);
  const int n = static_cast<int>(signseg_data_n(data.get()));
  signseg_sn_result res{};
  check(signseg_sn_statistic(data.get(), 1, n, parse_kind(args.kind), &res));
  auto cache = open_cache(common, args.replicates);
  double p = 1.0, crit = 0.0;
  check(signseg_table_cache_p_value(cache.get(), n, res.stat, &p));
  check(signseg_table_cache_quantile(cache.get(), n, 1.0 - args.level, &crit));
  warn_simulated(cache.get(), args.replicates);
  std::cout << "statistic\t" << fmt(res.stat, 10) << '\n'
            << "argmax_k\t" << res.argmax_k << '\n'
            << "p_value\t" << fmt(p, 6) << '\n'
            << "critical_value\t" << fmt(crit, 8) << '\n'
            << "decision\t" << (res.stat > crit ? "reject" : "accept") << '\n';
  if (res.degenerate) std::cerr << "warning: a zero self-normalizer produced an infinite ratio\n";
  return 0;
}

// ---- segment ----

struct SegmentArgs {
  std::string data;
  bool header = false;
  double zeta_p = 0.001;
  double alpha = std::pow(2.0, -0.25);
  std::string kind = "sign";
  std::string out;
  std::string json;
  std::size_t replicates = kDefaultTableReplicates;
};

int run_segment(const SegmentArgs& args, const Common& common) {
  auto data = load_data(args.data, args.header, common.expect_n_lt_p);
  signseg_segment_config cfg;
  signseg_segment_config_default(&cfg);
  cfg.zeta_p = args.zeta_p;
  cfg.alpha = args.alpha;
  cfg.kind = parse_kind(args.kind);
  auto cache = open_cache(common, args.replicates);
  signseg_segmentation* raw = nullptr;
  check(signseg_segment(data.get(), &cfg, cache.get(), &raw));
  SegPtr seg(raw);
  warn_simulated(cache.get(), args.replicates);
  if (!args.out.empty()) {
    check(signseg_segmentation_write_csv(seg.get(), args.out.c_str()));
    std::string json = args.json;
    if (json.empty()) json = std::filesystem::path(args.out).replace_extension(".json").string();
    check(signseg_segmentation_write_json(seg.get(), json.c_str()));
  } else if (!args.json.empty()) {
    check(signseg_segmentation_write_json(seg.get(), args.json.c_str()));
  }
  const std::size_t count = signseg_segmentation_count(seg.get());
  std::cout << count << " change point" << (count == 1 ? "" : "s") << '\n';
  for (std::size_t i = 0; i < count; ++i) {
    signseg_detection d{};
    check(signseg_segmentation_detection(seg.get(), i, &d));
    std::cout << "  k=" << d.location << "  p=" << fmt(d.p_value, 4) << "  interval=["
              << d.interval_a << ", " << d.interval_b << "]\n";
  }
  return 0;
}

// ---- simulate ----

struct SimulateArgs {
  std::string preset;
  std::size_t replicates = 200;
  std::string out;
  std::string json;
  std::size_t table_replicates = kDefaultTableReplicates;
};

int run_simulate(const SimulateArgs& args, const Common& common) {
  if (!signseg_is_preset(args.preset.c_str()))
    usage_error("unknown preset '" + args.preset +
                "' (expected table2, table3, table4 or powercurve)");
  if (args.replicates < 1) usage_error("replicates must be ≥ 1");
  auto cache = open_cache(common, args.table_replicates);
  std::size_t rows = 0;
  check(signseg_simulate_preset(args.preset.c_str(), args.replicates, common.seed, cache.get(),
                                args.out.c_str(), args.json.empty() ? nullptr : args.json.c_str(),
                                &rows));
  warn_simulated(cache.get(), args.table_replicates);
  std::cout << "wrote " << rows << " rows to " << args.out << '\n';
  return 0;
}

// ---- hill ----

struct HillArgs {
  std::string data;
  bool header = false;
  int k = 0;
  std::string out;
};

int run_hill(const HillArgs& args) {
  auto data = load_data(args.data, args.header);
  const std::size_t n = signseg_data_n(data.get()), p = signseg_data_p(data.get());
  if (args.k < 1 || static_cast<std::size_t>(args.k) >= n)
    usage_error("k must satisfy 1 <= k < n (n = " + std::to_string(n) + ")");
  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) usage_error("cannot write '" + args.out + "'");
  }
  std::ostream& out = args.out.empty() ? std::cout : file;
  out << "column,k,left,left_defined,right,right_defined\n";
  std::vector<double> col(n);
  for (std::size_t j = 0; j < p; ++j) {
    check(signseg_data_column(data.get(), j, col.data()));
    signseg_hill_estimate h{};
    check(signseg_hill(col.data(), n, args.k, &h));
    out << j + 1 << ',' << h.k << ',' << (h.left_defined ? fmt(h.left, 10) : "") << ','
        << h.left_defined << ',' << (h.right_defined ? fmt(h.right, 10) : "") << ','
        << h.right_defined << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust self-normalized change-point testing and segmentation"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--table-dir", common.table_dir, "Limit table cache directory")
      ->envname("SIGNSEG_TABLE_DIR");
  app.add_flag("--expect-n-lt-p", common.expect_n_lt_p,
               "Warn when the panel has more rows than columns");

  QuantilesArgs qa;
  auto* quantiles = app.add_subcommand("quantiles", "Simulate a fixed-n limit table");
  quantiles->add_option("--n", qa.n, "Sample size")->required();
  quantiles->add_option("--B", qa.replicates, "Monte Carlo replicates")->capture_default_str();
  quantiles->add_option("--out", qa.out, "Table file to write");
  quantiles->add_option("--c", qa.c, "Noncentral signal level");
  quantiles->add_option("--bstar", qa.bstar, "Noncentral change fraction");

  TestArgs ta;
  auto* test = app.add_subcommand("test", "Test [1, n] for a single change");
  test->add_option("--data", ta.data, "CSV panel, rows = time")->required();
  test->add_flag("--header", ta.header, "CSV has a header row");
  test->add_option("--kind", ta.kind, "Statistic")->check(CLI::IsMember({"sign", "mean"}))
      ->capture_default_str();
  test->add_option("--level", ta.level, "Test level")->capture_default_str();
  test->add_option("--B", ta.replicates, "Table replicates")->capture_default_str();

  SegmentArgs sa;
  auto* seg = app.add_subcommand("segment", "Seeded binary segmentation");
  seg->add_option("--data", sa.data, "CSV panel, rows = time")->required();
  seg->add_flag("--header", sa.header, "CSV has a header row");
  seg->add_option("--zeta-p", sa.zeta_p, "p-value threshold")->capture_default_str();
  seg->add_option("--alpha", sa.alpha, "Seeded interval decay in [1/2, 1)")
      ->capture_default_str();
  seg->add_option("--kind", sa.kind, "Statistic")->check(CLI::IsMember({"sign", "mean"}))
      ->capture_default_str();
  seg->add_option("--out", sa.out, "Result CSV");
  seg->add_option("--json", sa.json, "Result JSON (default: --out with .json)");
  seg->add_option("--B", sa.replicates, "Table replicates")->capture_default_str();

  SimulateArgs ma;
  auto* sim = app.add_subcommand("simulate", "Run an experiment preset");
  sim->add_option("--preset", ma.preset, "table2, table3, table4 or powercurve")->required();
  sim->add_option("--replicates", ma.replicates, "Replicates per row")->capture_default_str();
  sim->add_option("--out", ma.out, "Report CSV")->required();
  sim->add_option("--json", ma.json, "Report JSON");
  sim->add_option("--B", ma.table_replicates, "Table replicates")->capture_default_str();

  HillArgs ha;
  auto* hill = app.add_subcommand("hill", "Per-column Hill tail-index estimates");
  hill->add_option("--data", ha.data, "CSV panel")->required();
  hill->add_flag("--header", ha.header, "CSV has a header row");
  hill->add_option("--k", ha.k, "Order statistic count")->required();
  hill->add_option("--out", ha.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    signseg_set_threads(common.threads);
    if (*quantiles) return run_quantiles(qa, common);
    if (*test) return run_test(ta, common);
    if (*seg) return run_segment(sa, common);
    if (*sim) return run_simulate(ma, common);
    if (*hill) return run_hill(ha);
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
