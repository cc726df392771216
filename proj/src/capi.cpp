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

#include "flexdm/flexdm.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "experiment.hpp"

struct flexdm_spec {
  flexdm::LoadedSpec loaded;
  std::optional<flexdm::SpecCheck> check;
  std::vector<std::string> diagnostics;
  std::string canonical_xml;
};

struct flexdm_plan {
  flexdm::JobPlan plan;
};

struct flexdm_bench_report {
  flexdm::BenchReport report;
  std::string csv;
};

namespace {

thread_local std::string last_error;

flexdm_status fail(flexdm_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Maps the core's exception types onto status codes.
template <typename Fn>
flexdm_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const flexdm::SpecError& e) {
    return fail(FLEXDM_ERR_PARSE, e.what());
  } catch (const flexdm::PlanError& e) {
    return fail(FLEXDM_ERR_PLAN, e.what());
  } catch (const flexdm::PersistenceError& e) {
    return fail(FLEXDM_ERR_IO, e.what());
  } catch (const flexdm::ArffError& e) {
    return fail(FLEXDM_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(FLEXDM_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(FLEXDM_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(FLEXDM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FLEXDM_ERR_INTERNAL, "unknown error");
  }
}

flexdm_status ensure_validated(flexdm_spec* spec) {
  if (!spec->check) {
    spec->check = flexdm::check_spec(spec->loaded.spec, flexdm::default_registry(),
                                     spec->loaded.base_dir);
    spec->diagnostics.clear();
    for (const auto& d : spec->check->diagnostics) spec->diagnostics.push_back(d.str());
  }
  if (!spec->check->ok()) {
    std::string msg = "spec failed validation";
    if (!spec->diagnostics.empty()) msg += ": " + spec->diagnostics.front();
    return fail(FLEXDM_ERR_VALIDATION, msg);
  }
  return FLEXDM_OK;
}

struct ProgressBridge {
  flexdm_progress_fn fn;
  void* user;
};

struct StopRequested : std::runtime_error {
  StopRequested() : std::runtime_error("stopped by progress callback") {}
};

}  // namespace

extern "C" {

const char* flexdm_last_error(void) { return last_error.c_str(); }

const char* flexdm_status_name(flexdm_status status) {
  switch (status) {
    case FLEXDM_OK: return "ok";
    case FLEXDM_ERR_ARGUMENT: return "invalid argument";
    case FLEXDM_ERR_PARSE: return "parse error";
    case FLEXDM_ERR_VALIDATION: return "validation error";
    case FLEXDM_ERR_PLAN: return "plan error";
    case FLEXDM_ERR_IO: return "i/o error";
    case FLEXDM_ERR_ABORTED: return "aborted";
    case FLEXDM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

flexdm_status flexdm_spec_load(const char* path, flexdm_spec** out) {
  if (path == nullptr || out == nullptr) return fail(FLEXDM_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto spec = std::make_unique<flexdm_spec>();
    spec->loaded = flexdm::load_spec_file(path);
    *out = spec.release();
    return FLEXDM_OK;
  });
}

flexdm_status flexdm_spec_parse(const char* xml, const char* base_dir, flexdm_spec** out) {
  if (xml == nullptr || out == nullptr) return fail(FLEXDM_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto spec = std::make_unique<flexdm_spec>();
    spec->loaded.spec = flexdm::parse_spec(xml);
    spec->loaded.base_dir = base_dir ? base_dir : ".";
    *out = spec.release();
    return FLEXDM_OK;
  });
}

void flexdm_spec_free(flexdm_spec* spec) { delete spec; }

const char* flexdm_spec_canonical_xml(flexdm_spec* spec) {
  if (spec == nullptr) return "";
  spec->canonical_xml = flexdm::to_xml(spec->loaded.spec);
  return spec->canonical_xml.c_str();
}

flexdm_status flexdm_spec_validate(flexdm_spec* spec) {
  if (spec == nullptr) return fail(FLEXDM_ERR_ARGUMENT, "null spec");
  return guarded([&] { return ensure_validated(spec); });
}

size_t flexdm_spec_diagnostic_count(const flexdm_spec* spec) {
  return spec ? spec->diagnostics.size() : 0;
}

const char* flexdm_spec_diagnostic(const flexdm_spec* spec, size_t index) {
  if (spec == nullptr || index >= spec->diagnostics.size()) return nullptr;
  return spec->diagnostics[index].c_str();
}

flexdm_status flexdm_plan_create(const flexdm_spec* spec, uint64_t job_cap, flexdm_plan** out) {
  if (spec == nullptr || out == nullptr) return fail(FLEXDM_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto plan = std::make_unique<flexdm_plan>();
    plan->plan = flexdm::expand_jobs(spec->loaded.spec,
                                     job_cap == 0 ? flexdm::kDefaultJobCap : job_cap);
    *out = plan.release();
    return FLEXDM_OK;
  });
}

void flexdm_plan_free(flexdm_plan* plan) { delete plan; }

size_t flexdm_plan_size(const flexdm_plan* plan) { return plan ? plan->plan.jobs.size() : 0; }

const char* flexdm_plan_job_id(const flexdm_plan* plan, size_t index) {
  if (plan == nullptr || index >= plan->plan.jobs.size()) return nullptr;
  return plan->plan.jobs[index].id.c_str();
}

const char* flexdm_plan_canonical(const flexdm_plan* plan, size_t index) {
  if (plan == nullptr || index >= plan->plan.jobs.size()) return nullptr;
  return plan->plan.jobs[index].canonical.c_str();
}

const char* flexdm_plan_classifier(const flexdm_plan* plan, size_t index) {
  if (plan == nullptr || index >= plan->plan.jobs.size()) return nullptr;
  return plan->plan.jobs[index].classifier_name.c_str();
}

flexdm_status flexdm_run(flexdm_spec* spec, const flexdm_plan* plan, const char* out_dir,
                         const flexdm_run_options* options, flexdm_progress_fn progress,
                         void* user, flexdm_run_report* report) {
  if (spec == nullptr || plan == nullptr || out_dir == nullptr) {
    return fail(FLEXDM_ERR_ARGUMENT, "null argument");
  }
  return guarded([&] {
    if (auto st = ensure_validated(spec); st != FLEXDM_OK) return st;
    flexdm::RunOptions opts;
    if (options) {
      if (options->threads > 0) opts.workers = options->threads;
      opts.resume = options->resume != 0;
      opts.retry_failed = options->retry_failed != 0;
    }
    flexdm::RunHooks hooks;
    ProgressBridge bridge{progress, user};
    if (progress) {
      hooks.progress = [&bridge](const flexdm::ProgressEvent& ev) {
        std::string params = ev.job->params_string();
        flexdm_progress p{};
        p.done = ev.done;
        p.total = ev.total;
        p.job_id = ev.job->id.c_str();
        p.classifier = ev.job->classifier_name.c_str();
        p.params = params.c_str();
        p.completed = ev.result->completed() ? 1 : 0;
        p.accuracy = ev.result->accuracy;
        p.error = ev.result->message.c_str();
        if (bridge.fn(bridge.user, &p) != 0) throw StopRequested();
      };
    }
    auto result = flexdm::run_experiment(plan->plan, spec->check->datasets,
                                         flexdm::default_registry(), out_dir, opts, hooks);
    if (report) {
      report->completed = result.report.completed;
      report->failed = result.report.failed;
      report->skipped = result.report.skipped;
      report->failed_overall = result.failed_overall;
      report->wall_seconds = result.report.wall_time;
    }
    std::string warnings;
    for (const auto& w : result.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
    if (result.report.aborted) {
      return fail(FLEXDM_ERR_ABORTED, "run aborted: " + result.report.abort_reason);
    }
    last_error = warnings;
    return FLEXDM_OK;
  });
}

unsigned flexdm_default_worker_count(unsigned n_logical) {
  return flexdm::default_worker_count(n_logical);
}

unsigned flexdm_logical_processors(void) { return flexdm::logical_processor_count(); }

flexdm_status flexdm_bench(flexdm_spec* spec, const flexdm_plan* plan, const unsigned* threads,
                           size_t count, const char* csv_path, flexdm_bench_report** out) {
  if (spec == nullptr || plan == nullptr || threads == nullptr || out == nullptr) {
    return fail(FLEXDM_ERR_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    if (auto st = ensure_validated(spec); st != FLEXDM_OK) return st;
    std::vector<unsigned> counts(threads, threads + count);
    flexdm::NullSink sink;
    auto executor = flexdm::evaluation_executor(spec->check->datasets, flexdm::default_registry());
    auto report = std::make_unique<flexdm_bench_report>();
    report->report = flexdm::bench(plan->plan, counts, executor, sink);
    report->csv = report->report.csv();
    if (csv_path != nullptr) {
      std::ofstream f(csv_path, std::ios::binary | std::ios::trunc);
      f << report->csv;
      if (!f) throw flexdm::PersistenceError(std::string("cannot write ") + csv_path);
    }
    *out = report.release();
    return FLEXDM_OK;
  });
}

void flexdm_bench_report_free(flexdm_bench_report* report) { delete report; }

size_t flexdm_bench_row_count(const flexdm_bench_report* report) {
  return report ? report->report.rows.size() : 0;
}

flexdm_status flexdm_bench_row(const flexdm_bench_report* report, size_t index,
                               unsigned* workers, double* seconds, double* speedup,
                               double* theoretical) {
  if (report == nullptr || index >= report->report.rows.size()) {
    return fail(FLEXDM_ERR_ARGUMENT, "bench row out of range");
  }
  const auto& r = report->report.rows[index];
  if (workers) *workers = r.workers;
  if (seconds) *seconds = r.seconds;
  if (speedup) *speedup = r.speedup;
  if (theoretical) *theoretical = r.theoretical;
  return FLEXDM_OK;
}

const char* flexdm_bench_csv(const flexdm_bench_report* report) {
  return report ? report->csv.c_str() : "";
}

}  // extern "C"
