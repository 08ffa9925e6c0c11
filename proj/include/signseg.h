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


/* C interface to the signseg library. All handles are opaque; every fallible
 * call returns a signseg_status and leaves a message retrievable with
 * signseg_last_error() on the calling thread. Time indices are 1-based. */

#ifndef SIGNSEG_H_
#define SIGNSEG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(SIGNSEG_BUILDING_LIBRARY)
#define SIGNSEG_API __attribute__((visibility("default")))
#else
#define SIGNSEG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SIGNSEG_OK = 0,
  SIGNSEG_ERR_PARSE = 1,
  SIGNSEG_ERR_EMPTY_INPUT = 2,
  SIGNSEG_ERR_DOMAIN = 3,
  SIGNSEG_ERR_INTERVAL_TOO_SHORT = 4,
  SIGNSEG_ERR_VERSION = 5,
  SIGNSEG_ERR_FORMAT = 6,
  SIGNSEG_ERR_IO = 7,
  SIGNSEG_ERR_INVALID_ARGUMENT = 8,
  SIGNSEG_ERR_INTERNAL = 9
} signseg_status;

typedef enum { SIGNSEG_KIND_SIGN = 0, SIGNSEG_KIND_MEAN = 1 } signseg_kind;

typedef struct signseg_data signseg_data;
typedef struct signseg_table signseg_table;
typedef struct signseg_table_cache signseg_table_cache;
typedef struct signseg_segmentation signseg_segmentation;

SIGNSEG_API const char* signseg_version(void);
SIGNSEG_API const char* signseg_status_name(signseg_status status);
/* Message of the last failed call on this thread ("" if none). */
SIGNSEG_API const char* signseg_last_error(void);
/* Worker cap for parallel sections; 0 restores the hardware default. */
SIGNSEG_API void signseg_set_threads(int threads);

/* Data panels (n rows = time points, p columns = coordinates). */
SIGNSEG_API signseg_status signseg_data_load_csv(const char* path, int has_header,
                                                 signseg_data** out);
SIGNSEG_API signseg_status signseg_data_from_array(size_t n, size_t p, const double* row_major,
                                                   signseg_data** out);
SIGNSEG_API void signseg_data_free(signseg_data* data);
SIGNSEG_API size_t signseg_data_n(const signseg_data* data);
SIGNSEG_API size_t signseg_data_p(const signseg_data* data);
SIGNSEG_API signseg_status signseg_data_write_csv(const signseg_data* data, const char* path);
/* Copies column j (0-based) into out[0..n). */
SIGNSEG_API signseg_status signseg_data_column(const signseg_data* data, size_t j, double* out);
/* Returns 1 and fills buf when the panel looks transposed (n > p). */
SIGNSEG_API int signseg_data_transpose_warning(const signseg_data* data, char* buf, size_t len);

/* Single-interval statistics. */
typedef struct {
  double stat;
  int argmax_k;
  int degenerate;
} signseg_sn_result;

SIGNSEG_API signseg_status signseg_d_statistic(const signseg_data* data, int k, int l, int m,
                                               signseg_kind kind, double* out);
SIGNSEG_API signseg_status signseg_sn_statistic(const signseg_data* data, int a, int b,
                                                signseg_kind kind, signseg_sn_result* out);

/* Fixed-n limit tables. noncentral = 0 ignores c and bstar. */
SIGNSEG_API signseg_status signseg_table_simulate(int n, size_t replicates, uint64_t seed,
                                                  int noncentral, double c, double bstar,
                                                  signseg_table** out);
SIGNSEG_API signseg_status signseg_table_load(const char* path, signseg_table** out);
SIGNSEG_API signseg_status signseg_table_save(const signseg_table* table, const char* path);
SIGNSEG_API void signseg_table_free(signseg_table* table);
SIGNSEG_API int signseg_table_n(const signseg_table* table);
SIGNSEG_API size_t signseg_table_replicates(const signseg_table* table);
SIGNSEG_API signseg_status signseg_table_quantile(const signseg_table* table, double prob,
                                                  double* out);
SIGNSEG_API signseg_status signseg_table_p_value(const signseg_table* table, double observed,
                                                 double* out);

/* Directory-backed table cache; dir may be NULL for memory only. */
SIGNSEG_API signseg_status signseg_table_cache_create(const char* dir, size_t replicates,
                                                      uint64_t seed,
                                                      signseg_table_cache** out);
SIGNSEG_API void signseg_table_cache_free(signseg_table_cache* cache);
SIGNSEG_API signseg_status signseg_table_cache_quantile(signseg_table_cache* cache, int n,
                                                        double prob, double* out);
SIGNSEG_API signseg_status signseg_table_cache_p_value(signseg_table_cache* cache, int n,
                                                       double observed, double* out);
/* Copy of the central table for length n (loaded or simulated on demand). */
SIGNSEG_API signseg_status signseg_table_cache_get(signseg_table_cache* cache, int n,
                                                   signseg_table** out);
/* Lengths simulated (not loaded) so far; returns the total count and writes
 * at most cap of them. */
SIGNSEG_API size_t signseg_table_cache_simulated(const signseg_table_cache* cache, int* lengths,
                                                 size_t cap);

/* Seeded binary segmentation. */
typedef struct {
  double zeta_p;
  double alpha;
  signseg_kind kind;
} signseg_segment_config;

typedef struct {
  int location;
  int interval_a;
  int interval_b;
  double p_value;
  double statistic;
} signseg_detection;

SIGNSEG_API void signseg_segment_config_default(signseg_segment_config* cfg);
SIGNSEG_API signseg_status signseg_segment(const signseg_data* data,
                                           const signseg_segment_config* cfg,
                                           signseg_table_cache* cache,
                                           signseg_segmentation** out);
SIGNSEG_API void signseg_segmentation_free(signseg_segmentation* seg);
SIGNSEG_API size_t signseg_segmentation_count(const signseg_segmentation* seg);
SIGNSEG_API signseg_status signseg_segmentation_detection(const signseg_segmentation* seg,
                                                          size_t index,
                                                          signseg_detection* out);
SIGNSEG_API signseg_status signseg_segmentation_write_csv(const signseg_segmentation* seg,
                                                          const char* path);
SIGNSEG_API signseg_status signseg_segmentation_write_json(const signseg_segmentation* seg,
                                                           const char* path);

/* Seeded interval collection; returns the total count via *count and writes
 * at most cap triples. Any of a, b, layer may be NULL. */
SIGNSEG_API signseg_status signseg_seeded_intervals(int n, double alpha, int* a, int* b,
                                                    int* layer, size_t cap, size_t* count);

/* Experiment presets: "table2", "table3", "table4", "powercurve". */
SIGNSEG_API int signseg_is_preset(const char* preset);
SIGNSEG_API signseg_status signseg_simulate_preset(const char* preset, size_t replicates,
                                                   uint64_t seed, signseg_table_cache* cache,
                                                   const char* csv_path, const char* json_path,
                                                   size_t* rows);

/* Diagnostics. */
typedef struct {
  int k;
  double left;
  double right;
  int left_defined;
  int right_defined;
} signseg_hill_estimate;

SIGNSEG_API signseg_status signseg_hill(const double* series, size_t length, int k,
                                        signseg_hill_estimate* out);
SIGNSEG_API signseg_status signseg_ari(const int* changes_a, size_t count_a,
                                       const int* changes_b, size_t count_b, int n,
                                       double* out);

#ifdef __cplusplus
}
#endif

#endif /* SIGNSEG_H_ */
