/*
 * Copyright 2026 The FlexDM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FLEXDM_FLEXDM_H
#define FLEXDM_FLEXDM_H

/*
 * C interface to the flexdm batch experiment runner.
 *
 * Handles are opaque and owned by the caller once returned; release them with
 * the matching *_free function. Functions returning flexdm_status leave a
 * human-readable message for the calling thread in flexdm_last_error().
 * Strings returned by accessors stay valid until the owning handle is freed.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FLEXDM_BUILDING_LIBRARY)
#    define FLEXDM_API __declspec(dllexport)
#  else
#    define FLEXDM_API __declspec(dllimport)
#  endif
#else
#  define FLEXDM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum flexdm_status {
  FLEXDM_OK = 0,
  FLEXDM_ERR_ARGUMENT = 1,   /* null handle, bad option value */
  FLEXDM_ERR_PARSE = 2,      /* malformed XML or schema violation */
  FLEXDM_ERR_VALIDATION = 3, /* spec parsed but failed validation */
  FLEXDM_ERR_PLAN = 4,       /* job cap exceeded, duplicate jobs */
  FLEXDM_ERR_IO = 5,         /* unreadable spec, unwritable output, corrupt journal */
  FLEXDM_ERR_ABORTED = 6,    /* run stopped early (sink or callback failure) */
  FLEXDM_ERR_INTERNAL = 99
} flexdm_status;

typedef struct flexdm_spec flexdm_spec;
typedef struct flexdm_plan flexdm_plan;
typedef struct flexdm_bench_report flexdm_bench_report;

FLEXDM_API const char* flexdm_last_error(void);
FLEXDM_API const char* flexdm_status_name(flexdm_status status);

/* ---- specs -------------------------------------------------------------- */

/* Dataset names in the spec resolve against the spec file's directory. */
FLEXDM_API flexdm_status flexdm_spec_load(const char* path, flexdm_spec** out);
/* base_dir may be NULL (current directory). */
FLEXDM_API flexdm_status flexdm_spec_parse(const char* xml, const char* base_dir,
                                           flexdm_spec** out);
FLEXDM_API void flexdm_spec_free(flexdm_spec* spec);

/* Canonical XML with all defaults written out. */
FLEXDM_API const char* flexdm_spec_canonical_xml(flexdm_spec* spec);

/* Loads datasets and checks names and flags. Returns FLEXDM_OK or
 * FLEXDM_ERR_VALIDATION; diagnostics are available either way. */
FLEXDM_API flexdm_status flexdm_spec_validate(flexdm_spec* spec);
FLEXDM_API size_t flexdm_spec_diagnostic_count(const flexdm_spec* spec);
FLEXDM_API const char* flexdm_spec_diagnostic(const flexdm_spec* spec, size_t index);

/* ---- plans -------------------------------------------------------------- */

/* job_cap == 0 selects the default cap of 1,000,000 jobs. */
FLEXDM_API flexdm_status flexdm_plan_create(const flexdm_spec* spec, uint64_t job_cap,
                                            flexdm_plan** out);
FLEXDM_API void flexdm_plan_free(flexdm_plan* plan);
FLEXDM_API size_t flexdm_plan_size(const flexdm_plan* plan);
FLEXDM_API const char* flexdm_plan_job_id(const flexdm_plan* plan, size_t index);
FLEXDM_API const char* flexdm_plan_canonical(const flexdm_plan* plan, size_t index);
FLEXDM_API const char* flexdm_plan_classifier(const flexdm_plan* plan, size_t index);

/* ---- runs --------------------------------------------------------------- */

typedef struct flexdm_run_options {
  unsigned threads;   /* 0: default (logical processors - 1, at least 1) */
  int resume;         /* skip jobs already journaled in out_dir */
  int retry_failed;   /* with resume: re-run jobs journaled as FAILED */
} flexdm_run_options;

typedef struct flexdm_progress {
  size_t done;
  size_t total;
  const char* job_id;
  const char* classifier;
  const char* params;
  int completed;      /* 1 completed, 0 failed */
  double accuracy;    /* valid when completed */
  const char* error;  /* failure reason when !completed, else "" */
} flexdm_progress;

/* Called once per finished job, never concurrently, after the result is on disk.
 * Return nonzero to stop the run (in-flight jobs finish; nothing more starts). */
typedef int (*flexdm_progress_fn)(void* user, const flexdm_progress* progress);

typedef struct flexdm_run_report {
  size_t completed;
  size_t failed;
  size_t skipped;
  size_t failed_overall; /* failed rows in summary.csv, including earlier runs */
  double wall_seconds;
} flexdm_run_report;

/* The spec must have passed flexdm_spec_validate. Writes <job_id>.result files,
 * journal.tsv and summary.csv into out_dir (created if missing). */
FLEXDM_API flexdm_status flexdm_run(flexdm_spec* spec, const flexdm_plan* plan,
                                    const char* out_dir, const flexdm_run_options* options,
                                    flexdm_progress_fn progress, void* user,
                                    flexdm_run_report* report);

/* ---- scheduling --------------------------------------------------------- */

FLEXDM_API unsigned flexdm_default_worker_count(unsigned n_logical);
FLEXDM_API unsigned flexdm_logical_processors(void);

/* Runs the plan once per thread count (must include 1), discarding results.
 * csv_path may be NULL. */
FLEXDM_API flexdm_status flexdm_bench(flexdm_spec* spec, const flexdm_plan* plan,
                                      const unsigned* threads, size_t count,
                                      const char* csv_path, flexdm_bench_report** out);
FLEXDM_API void flexdm_bench_report_free(flexdm_bench_report* report);
FLEXDM_API size_t flexdm_bench_row_count(const flexdm_bench_report* report);
FLEXDM_API flexdm_status flexdm_bench_row(const flexdm_bench_report* report, size_t index,
                                          unsigned* workers, double* seconds, double* speedup,
                                          double* theoretical);
FLEXDM_API const char* flexdm_bench_csv(const flexdm_bench_report* report);

#ifdef __cplusplus
}
#endif

#endif  /* FLEXDM_FLEXDM_H */
