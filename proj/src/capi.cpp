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


#include "signseg.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "signseg/limit_dist.hpp"
#include "signseg/parallel.hpp"
#include "signseg/reports.hpp"
#include "signseg/sbs.hpp"
#include "signseg/seeded_intervals.hpp"
#include "signseg/sim_lab.hpp"
#include "signseg/sn_test.hpp"

struct signseg_data {
  signseg::DataMatrix matrix;
};

struct signseg_table {
  signseg::QuantileTable table;
};

struct signseg_table_cache {
  signseg::TableCache cache;
};

struct signseg_segmentation {
  signseg::ChangePointResult result;
  signseg::SegmenterConfig config;
  int n;
};

namespace {

thread_local std::string last_error;

signseg_status from_code(signseg::ErrorCode code) {
  using signseg::ErrorCode;
  switch (code) {
    case ErrorCode::parse: return SIGNSEG_ERR_PARSE;
    case ErrorCode::empty_input: return SIGNSEG_ERR_EMPTY_INPUT;
    case ErrorCode::domain: return SIGNSEG_ERR_DOMAIN;
    case ErrorCode::interval_too_short: return SIGNSEG_ERR_INTERVAL_TOO_SHORT;
    case ErrorCode::version: return SIGNSEG_ERR_VERSION;
    case ErrorCode::format: return SIGNSEG_ERR_FORMAT;
    case ErrorCode::io: return SIGNSEG_ERR_IO;
  }
  return SIGNSEG_ERR_INTERNAL;
}

signseg_status fail(signseg_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class Fn>
signseg_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return SIGNSEG_OK;
  } catch (const signseg::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(SIGNSEG_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SIGNSEG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SIGNSEG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SIGNSEG_ERR_INTERNAL, "unknown failure");
  }
}

#define SIGNSEG_REQUIRE(cond, what) \
  if (!(cond)) return fail(SIGNSEG_ERR_INVALID_ARGUMENT, what)

signseg::StatKind to_kind(signseg_kind kind) {
  if (kind == SIGNSEG_KIND_SIGN) return signseg::StatKind::sign;
  if (kind == SIGNSEG_KIND_MEAN) return signseg::StatKind::mean;
  throw signseg::DomainError("unknown statistic kind");
}

}  // namespace

extern "C" {

const char* signseg_version(void) { return "1.0.0"; }

const char* signseg_status_name(signseg_status status) {
  switch (status) {
    case SIGNSEG_OK: return "ok";
    case SIGNSEG_ERR_PARSE: return "parse_error";
    case SIGNSEG_ERR_EMPTY_INPUT: return "empty_input";
    case SIGNSEG_ERR_DOMAIN: return "domain_error";
    case SIGNSEG_ERR_INTERVAL_TOO_SHORT: return "interval_too_short";
    case SIGNSEG_ERR_VERSION: return "version_error";
    case SIGNSEG_ERR_FORMAT: return "format_error";
    case SIGNSEG_ERR_IO: return "io_error";
    case SIGNSEG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SIGNSEG_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* signseg_last_error(void) { return last_error.c_str(); }

void signseg_set_threads(int threads) { signseg::set_default_threads(threads < 0 ? 0 : threads); }

signseg_status signseg_data_load_csv(const char* path, int has_header, signseg_data** out) {
  SIGNSEG_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new signseg_data{signseg::load_csv(path, has_header != 0)};
  });
}

signseg_status signseg_data_from_array(size_t n, size_t p, const double* row_major,
                                       signseg_data** out) {
  SIGNSEG_REQUIRE(out && (row_major || n * p == 0), "null argument");
  return guarded([&] {
    std::vector<double> values(row_major, row_major + n * p);
    *out = new signseg_data{signseg::DataMatrix(n, p, std::move(values))};
  });
}

void signseg_data_free(signseg_data* data) { delete data; }

size_t signseg_data_n(const signseg_data* data) { return data ? data->matrix.n() : 0; }

size_t signseg_data_p(const signseg_data* data) { return data ? data->matrix.p() : 0; }

signseg_status signseg_data_write_csv(const signseg_data* data, const char* path) {
  SIGNSEG_REQUIRE(data && path, "null argument");
  return guarded([&] { signseg::write_csv(data->matrix, path); });
}

signseg_status signseg_data_column(const signseg_data* data, size_t j, double* out) {
  SIGNSEG_REQUIRE(data && out, "null argument");
  SIGNSEG_REQUIRE(j < data->matrix.p(), "column index out of range");
  for (std::size_t i = 1; i <= data->matrix.n(); ++i) out[i - 1] = data->matrix.at(i, j);
  return SIGNSEG_OK;
}

int signseg_data_transpose_warning(const signseg_data* data, char* buf, size_t len) {
  if (!data) return 0;
  const auto msg = signseg::transpose_guard(data->matrix, true);
  if (!msg) return 0;
  if (buf && len > 0) {
    const std::size_t count = std::min(len - 1, msg->size());
    std::memcpy(buf, msg->data(), count);
    buf[count] = '\0';
  }
  return 1;
}

signseg_status signseg_d_statistic(const signseg_data* data, int k, int l, int m,
                                   signseg_kind kind, double* out) {
  SIGNSEG_REQUIRE(data && out, "null argument");
  return guarded([&] {
    auto stat = signseg::make_statistic(data->matrix, to_kind(kind));
    *out = stat->d({k, l, m});
  });
}

signseg_status signseg_sn_statistic(const signseg_data* data, int a, int b, signseg_kind kind,
                                    signseg_sn_result* out) {
  SIGNSEG_REQUIRE(data && out, "null argument");
  return guarded([&] {
    const auto res = signseg::sn_statistic(data->matrix, a, b, to_kind(kind));
    *out = {res.stat, res.argmax_k, res.degenerate ? 1 : 0};
  });
}

signseg_status signseg_table_simulate(int n, size_t replicates, uint64_t seed, int noncentral,
                                      double c, double bstar, signseg_table** out) {
  SIGNSEG_REQUIRE(out, "null argument");
  return guarded([&] {
    std::optional<signseg::NoncentralSpec> spec;
    if (noncentral) spec = signseg::NoncentralSpec{c, bstar};
    *out = new signseg_table{signseg::simulate_limit(n, replicates, seed, spec)};
  });
}

signseg_status signseg_table_load(const char* path, signseg_table** out) {
  SIGNSEG_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new signseg_table{signseg::load_table(path)}; });
}

signseg_status signseg_table_save(const signseg_table* table, const char* path) {
  SIGNSEG_REQUIRE(table && path, "null argument");
  return guarded([&] { signseg::save_table(table->table, path); });
}

void signseg_table_free(signseg_table* table) { delete table; }

int signseg_table_n(const signseg_table* table) { return table ? table->table.n : 0; }

size_t signseg_table_replicates(const signseg_table* table) {
  return table ? table->table.replicates : 0;
}

signseg_status signseg_table_quantile(const signseg_table* table, double prob, double* out) {
  SIGNSEG_REQUIRE(table && out, "null argument");
  return guarded([&] { *out = table->table.quantile(prob); });
}

signseg_status signseg_table_p_value(const signseg_table* table, double observed, double* out) {
  SIGNSEG_REQUIRE(table && out, "null argument");
  return guarded([&] { *out = signseg::p_value(table->table, observed); });
}

signseg_status signseg_table_cache_create(const char* dir, size_t replicates, uint64_t seed,
                                          signseg_table_cache** out) {
  SIGNSEG_REQUIRE(out, "null argument");
  return guarded([&] {
    std::optional<std::filesystem::path> d;
    if (dir && *dir) d = std::filesystem::path(dir);
    *out = new signseg_table_cache{signseg::TableCache(d, replicates, seed)};
  });
}

void signseg_table_cache_free(signseg_table_cache* cache) { delete cache; }

signseg_status signseg_table_cache_quantile(signseg_table_cache* cache, int n, double prob,
                                            double* out) {
  SIGNSEG_REQUIRE(cache && out, "null argument");
  return guarded([&] { *out = cache->cache.get(n).quantile(prob); });
}

signseg_status signseg_table_cache_p_value(signseg_table_cache* cache, int n, double observed,
                                           double* out) {
  SIGNSEG_REQUIRE(cache && out, "null argument");
  return guarded([&] { *out = cache->cache.p_value(n, observed); });
}

signseg_status signseg_table_cache_get(signseg_table_cache* cache, int n,
                                       signseg_table** out) {
  SIGNSEG_REQUIRE(cache && out, "null argument");
  return guarded([&] { *out = new signseg_table{cache->cache.get(n)}; });
}

size_t signseg_table_cache_simulated(const signseg_table_cache* cache, int* lengths,
                                     size_t cap) {
  if (!cache) return 0;
  const auto sim = cache->cache.simulated();
  std::size_t i = 0;
  for (int n : sim) {
    if (lengths && i < cap) lengths[i] = n;
    ++i;
  }
  return sim.size();
}

void signseg_segment_config_default(signseg_segment_config* cfg) {
  if (!cfg) return;
  const signseg::SegmenterConfig d;
  cfg->zeta_p = d.zeta_p;
  cfg->alpha = d.alpha;
  cfg->kind = SIGNSEG_KIND_SIGN;
}

signseg_status signseg_segment(const signseg_data* data, const signseg_segment_config* cfg,
                               signseg_table_cache* cache, signseg_segmentation** out) {
  SIGNSEG_REQUIRE(data && cfg && cache && out, "null argument");
  return guarded([&] {
    signseg::SegmenterConfig c;
    c.zeta_p = cfg->zeta_p;
    c.alpha = cfg->alpha;
    c.kind = to_kind(cfg->kind);
    auto result = signseg::segment(data->matrix, c, cache->cache);
    *out = new signseg_segmentation{std::move(result), c, static_cast<int>(data->matrix.n())};
  });
}

void signseg_segmentation_free(signseg_segmentation* seg) { delete seg; }

size_t signseg_segmentation_count(const signseg_segmentation* seg) {
  return seg ? seg->result.detections.size() : 0;
}

signseg_status signseg_segmentation_detection(const signseg_segmentation* seg, size_t index,
                                              signseg_detection* out) {
  SIGNSEG_REQUIRE(seg && out, "null argument");
  SIGNSEG_REQUIRE(index < seg->result.detections.size(), "detection index out of range");
  const auto& d = seg->result.detections[index];
  *out = {d.location, d.interval_a, d.interval_b, d.p_value, d.statistic};
  return SIGNSEG_OK;
}

signseg_status signseg_segmentation_write_csv(const signseg_segmentation* seg,
                                              const char* path) {
  SIGNSEG_REQUIRE(seg && path, "null argument");
  return guarded([&] { signseg::write_text(path, signseg::result_csv(seg->result)); });
}

signseg_status signseg_segmentation_write_json(const signseg_segmentation* seg,
                                               const char* path) {
  SIGNSEG_REQUIRE(seg && path, "null argument");
  return guarded([&] {
    const signseg::ConfigEcho echo = {
        {"statistic", signseg::to_string(seg->config.kind)},
        {"alpha", std::to_string(seg->config.alpha)},
        {"zeta_p", std::to_string(seg->config.zeta_p)}};
    signseg::write_text(path, signseg::result_json(seg->result, echo, seg->n));
  });
}

signseg_status signseg_seeded_intervals(int n, double alpha, int* a, int* b, int* layer,
                                        size_t cap, size_t* count) {
  SIGNSEG_REQUIRE(count, "null argument");
  return guarded([&] {
    const auto set = signseg::SeededIntervalSet::generate(n, alpha);
    const auto& ivs = set.intervals();
    for (std::size_t i = 0; i < ivs.size() && i < cap; ++i) {
      if (a) a[i] = ivs[i].a;
      if (b) b[i] = ivs[i].b;
      if (layer) layer[i] = ivs[i].layer;
    }
    *count = ivs.size();
  });
}

int signseg_is_preset(const char* preset) { return preset && signseg::is_preset(preset); }

signseg_status signseg_simulate_preset(const char* preset, size_t replicates, uint64_t seed,
                                       signseg_table_cache* cache, const char* csv_path,
                                       const char* json_path, size_t* rows) {
  SIGNSEG_REQUIRE(preset && cache, "null argument");
  return guarded([&] {
    const auto reports = signseg::run_preset(preset, replicates, seed, cache->cache);
    if (csv_path) signseg::write_text(csv_path, signseg::reports_csv(reports));
    if (json_path) signseg::write_text(json_path, signseg::reports_json(reports));
    if (rows) *rows = reports.size();
  });
}

signseg_status signseg_hill(const double* series, size_t length, int k,
                            signseg_hill_estimate* out) {
  SIGNSEG_REQUIRE(out && (series || length == 0), "null argument");
  return guarded([&] {
    const auto h = signseg::hill({series, length}, k);
    *out = {h.k, h.left, h.right, h.left_defined ? 1 : 0, h.right_defined ? 1 : 0};
  });
}

signseg_status signseg_ari(const int* changes_a, size_t count_a, const int* changes_b,
                           size_t count_b, int n, double* out) {
  SIGNSEG_REQUIRE(out && (changes_a || count_a == 0) && (changes_b || count_b == 0),
                  "null argument");
  return guarded([&] {
    *out = signseg::ari({changes_a, count_a}, {changes_b, count_b}, n);
  });
}

}  // extern "C"
