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

// Command-line front end. Links only the C API in flexdm/flexdm.h.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flexdm/flexdm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFailedJobs = 2;

struct SpecDeleter {
  void operator()(flexdm_spec* s) const { flexdm_spec_free(s); }
};
struct PlanDeleter {
  void operator()(flexdm_plan* p) const { flexdm_plan_free(p); }
};
struct BenchDeleter {
  void operator()(flexdm_bench_report* b) const { flexdm_bench_report_free(b); }
};
using SpecPtr = std::unique_ptr<flexdm_spec, SpecDeleter>;
using PlanPtr = std::unique_ptr<flexdm_plan, PlanDeleter>;
using BenchPtr = std::unique_ptr<flexdm_bench_report, BenchDeleter>;

void report_error(flexdm_status status) {
  std::cerr << "flexdm: " << flexdm_status_name(status) << ": " << flexdm_last_error() << '\n';
}

void print_diagnostics(const flexdm_spec* spec) {
  for (size_t i = 0; i < flexdm_spec_diagnostic_count(spec); ++i) {
    std::cerr << flexdm_spec_diagnostic(spec, i) << '\n';
  }
}

// Parse, validate and plan; prints whatever went wrong. Empty on failure.
std::optional<std::pair<SpecPtr, PlanPtr>> prepare(const std::string& spec_path) {
  flexdm_spec* raw = nullptr;
  if (auto st = flexdm_spec_load(spec_path.c_str(), &raw); st != FLEXDM_OK) {
    report_error(st);
    return std::nullopt;
  }
  SpecPtr spec(raw);
  flexdm_status st = flexdm_spec_validate(spec.get());
  if (st != FLEXDM_OK) {
    if (flexdm_spec_diagnostic_count(spec.get()) > 0) {
      print_diagnostics(spec.get());
    } else {
      report_error(st);
    }
    return std::nullopt;
  }
  flexdm_plan* plan = nullptr;
  if (st = flexdm_plan_create(spec.get(), 0, &plan); st != FLEXDM_OK) {
    report_error(st);
    return std::nullopt;
  }
  return std::make_pair(std::move(spec), PlanPtr(plan));
}

// --threads wins over FLEXDM_THREADS; 0 means "library default".
std::optional<unsigned> resolve_threads(const std::optional<unsigned>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("FLEXDM_THREADS");
  if (env == nullptr || *env == '\0') return 0u;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) {
    std::cerr << "flexdm: FLEXDM_THREADS must be a positive integer, got '" << env << "'\n";
    return std::nullopt;
  }
  return static_cast<unsigned>(v);
}

int print_progress(void*, const flexdm_progress* p) {
  if (p->completed) {
    std::fprintf(stderr, "[%zu/%zu] %s %s acc=%.4f\n", p->done, p->total, p->job_id,
                 p->classifier, p->accuracy);
  } else {
    std::fprintf(stderr, "[%zu/%zu] %s %s acc=FAILED (%s)\n", p->done, p->total, p->job_id,
                 p->classifier, p->error);
  }
  return 0;
}

int cmd_run(const std::string& spec_path, const std::string& out_dir,
            const std::optional<unsigned>& threads_flag, bool resume, bool retry_failed) {
  auto threads = resolve_threads(threads_flag);
  if (!threads) return kExitConfig;
  auto prepared = prepare(spec_path);
  if (!prepared) return kExitConfig;
  auto& [spec, plan] = *prepared;

  flexdm_run_options options{*threads, resume ? 1 : 0, retry_failed ? 1 : 0};
  flexdm_run_report report{};
  flexdm_status st = flexdm_run(spec.get(), plan.get(), out_dir.c_str(), &options,
                                print_progress, nullptr, &report);
  if (st != FLEXDM_OK) {
    report_error(st);
    return kExitConfig;
  }
  if (*flexdm_last_error() != '\0') std::cerr << "flexdm: warning: " << flexdm_last_error() << '\n';
  std::cerr << "completed " << report.completed << ", failed " << report.failed << ", skipped "
            << report.skipped << " in " << report.wall_seconds << " s; summary in " << out_dir
            << "/summary.csv\n";
  return report.failed_overall > 0 ? kExitFailedJobs : kExitOk;
}

int cmd_validate(const std::string& spec_path) {
  auto prepared = prepare(spec_path);
  if (!prepared) return kExitConfig;
  std::cout << "plan: " << flexdm_plan_size(prepared->second.get()) << " jobs\n";
  return kExitOk;
}

int cmd_expand(const std::string& spec_path) {
  auto prepared = prepare(spec_path);
  if (!prepared) return kExitConfig;
  const flexdm_plan* plan = prepared->second.get();
  for (size_t i = 0; i < flexdm_plan_size(plan); ++i) {
    std::cout << flexdm_plan_job_id(plan, i) << '\t' << flexdm_plan_canonical(plan, i) << '\n';
  }
  return kExitOk;
}

int cmd_bench(const std::string& spec_path, const std::vector<unsigned>& threads,
              const std::string& csv_path) {
  if (std::find(threads.begin(), threads.end(), 1u) == threads.end()) {
    std::cerr << "flexdm: bench --threads must include 1 (the speedup baseline)\n";
    return kExitConfig;
  }
  auto prepared = prepare(spec_path);
  if (!prepared) return kExitConfig;
  flexdm_bench_report* raw = nullptr;
  flexdm_status st = flexdm_bench(prepared->first.get(), prepared->second.get(), threads.data(),
                                  threads.size(), csv_path.empty() ? nullptr : csv_path.c_str(),
                                  &raw);
  if (st != FLEXDM_OK) {
    report_error(st);
    return kExitConfig;
  }
  BenchPtr report(raw);
  std::cout << flexdm_bench_csv(report.get());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch classifier experiments from a compact XML spec"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir = "flexdm-out";
  std::optional<unsigned> threads;
  bool resume = false;
  bool retry_failed = false;
  std::vector<unsigned> bench_threads;
  std::string csv_path;

  auto* run = app.add_subcommand("run", "Run every job in the spec");
  run->add_option("spec", spec_path, "Experiment spec (XML)")->required();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--threads", threads, "Worker threads (default: logical processors - 1)")
      ->check(CLI::PositiveNumber);
  run->add_flag("--resume", resume, "Skip jobs already recorded in the output journal");
  run->add_flag("--retry-failed", retry_failed, "With --resume, re-run jobs that failed");

  auto* validate = app.add_subcommand("validate", "Check a spec and report the job count");
  validate->add_option("spec", spec_path, "Experiment spec (XML)")->required();

  auto* expand = app.add_subcommand("expand", "Print every job id and canonical job string");
  expand->add_option("spec", spec_path, "Experiment spec (XML)")->required();

  auto* bench = app.add_subcommand("bench", "Time the plan at several thread counts");
  bench->add_option("spec", spec_path, "Experiment spec (XML)")->required();
  bench->add_option("--threads", bench_threads, "Comma-separated thread counts, e.g. 1,2,4")
      ->delimiter(',')
      ->required()
      ->check(CLI::PositiveNumber);
  bench->add_option("--csv", csv_path, "Write the speedup table here as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (*run) return cmd_run(spec_path, out_dir, threads, resume, retry_failed);
  if (*validate) return cmd_validate(spec_path);
  if (*expand) return cmd_expand(spec_path);
  if (*bench) return cmd_bench(spec_path, bench_threads, csv_path);
  return kExitConfig;
}
