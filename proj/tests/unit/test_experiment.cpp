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

#include <atomic>

#include "doctest.h"
#include "experiment.hpp"
#include "learners/registry.hpp"
#include "validate.hpp"
#include "test_support.hpp"

using namespace flexdm;
using flexdm::testing::read_file;
using flexdm::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct HealthRun {
  LoadedSpec loaded = load_spec_file(testing::health_path("health.xml"));
  SpecCheck check = check_spec(loaded.spec, default_registry(), loaded.base_dir);
  JobPlan plan = expand_jobs(loaded.spec);

  ExperimentRun run(const fs::path& out, RunOptions options, RunHooks hooks = {}) {
    return run_experiment(plan, check.datasets, default_registry(), out, options, hooks);
  }
};

std::size_t count_results(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == kResultSuffix;
  return n;
}

std::size_t count_lines(const fs::path& file) {
  std::string text = read_file(file);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("a full run writes results, journal and summary") {
  HealthRun f;
  TempDir out;
  auto run = f.run(out.path(), {2, false, false});
  CHECK(run.report.completed == 20);
  CHECK(run.failed_overall == 0);
  CHECK(run.summary == out.path() / kSummaryFile);
  CHECK(count_results(out.path()) == 20);
  CHECK(count_lines(out / kJournalFile) == 20);
  CHECK(count_lines(out / kSummaryFile) == 21);
  std::string first = read_file(result_path(out.path(), f.plan.jobs[0].id));
  CHECK(first.find("confusion matrix:") != std::string::npos);
}

TEST_CASE("resume executes only the remainder and reproduces the outputs") {
  HealthRun f;
  TempDir clean, cut;
  f.run(clean.path(), {2, false, false});

  RunHooks stop_after_5;
  stop_after_5.progress = [](const ProgressEvent& e) {
    if (e.done == 5) throw std::runtime_error("simulated crash");
  };
  auto partial = f.run(cut.path(), {1, false, false}, stop_after_5);
  CHECK(partial.report.aborted);
  CHECK(partial.summary.empty());
  CHECK(load_completed(cut.path()).size() == 5);

  std::atomic<int> executed{0};
  RunHooks counting;
  auto base = evaluation_executor(f.check.datasets, default_registry());
  counting.executor = [&](const Job& j) { ++executed; return base(j); };
  auto resumed = f.run(cut.path(), {3, true, false}, counting);
  CHECK(executed == 15);
  CHECK(resumed.report.skipped == 5);
  CHECK(read_file(cut / kSummaryFile) == read_file(clean / kSummaryFile));
  for (const auto& job : f.plan.jobs) {
    CHECK(read_file(result_path(cut.path(), job.id)) == read_file(result_path(clean.path(), job.id)));
  }
}

TEST_CASE("failed jobs are not retried on resume unless asked") {
  HealthRun f;
  f.plan.jobs[3].assignment = {{"-C", "1.5"}};
  finalize_job(f.plan.jobs[3]);
  TempDir out;
  auto first = f.run(out.path(), {2, false, false});
  CHECK(first.report.failed == 1);
  CHECK(first.failed_overall == 1);
  std::string summary = read_file(out / kSummaryFile);
  CHECK(summary.find(",-C=1.5,,FAILED\n") != std::string::npos);

  auto again = f.run(out.path(), {2, true, false});
  CHECK(again.report.skipped == 20);
  CHECK(again.failed_overall == 1);
  CHECK(read_file(out / kSummaryFile) == summary);

  auto retry = f.run(out.path(), {2, true, true});
  CHECK(retry.report.skipped == 19);
  CHECK(retry.report.failed == 1);
}

TEST_CASE("a rerun without resume overwrites results and appends to the journal") {
  HealthRun f;
  TempDir out;
  f.run(out.path(), {2, false, false});
  std::string summary = read_file(out / kSummaryFile);
  f.run(out.path(), {2, false, false});
  CHECK(count_lines(out / kJournalFile) == 40);
  CHECK(count_results(out.path()) == 20);
  CHECK(load_completed(out.path()).size() == 20);
  CHECK(read_file(out / kSummaryFile) == summary);
}

TEST_CASE("results become visible one at a time") {
  HealthRun f;
  TempDir out;
  bool in_step = true;
  RunHooks hooks;
  hooks.progress = [&](const ProgressEvent& e) {
    in_step = in_step && count_results(out.path()) == e.done &&
              count_lines(out / kJournalFile) == e.done;
  };
  f.run(out.path(), {1, false, false}, hooks);
  CHECK(in_step);
}
