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

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "learners/registry.hpp"
#include "persistence.hpp"
#include "scheduler.hpp"
#include "validate.hpp"

namespace flexdm {

struct LoadedSpec {
  ExperimentSpec spec;
  std::filesystem::path base_dir;
};

// Reads and parses a spec file. Throws SpecError (parse/schema) or
// PersistenceError (unreadable file).
LoadedSpec load_spec_file(const std::filesystem::path& path);

struct ProgressEvent {
  std::size_t done = 0;   // results received so far in this run
  std::size_t total = 0;  // jobs this run will execute
  const Job* job = nullptr;
  const EvalResult* result = nullptr;
};

struct RunOptions {
  unsigned workers = default_worker_count(logical_processor_count());
  bool resume = false;
  bool retry_failed = false;
};

struct RunHooks {
  // Serialized; called after the journal line is on disk. Throwing aborts the run.
  std::function<void(const ProgressEvent&)> progress;
  // Replaces evaluate_job (instrumentation, synthetic workloads).
  JobExecutor executor;
};

// Writes <job_id>.result on the worker, then journals and reports progress
// under the scheduler's serialization.
class DirectorySink : public ResultSink {
 public:
  DirectorySink(std::filesystem::path dir, std::size_t total,
                std::function<void(const ProgressEvent&)> progress);

  void store(const Job& job, EvalResult& result) override;
  void receive(const Job& job, const EvalResult& result) override;

  const std::map<std::string, EvalResult>& results() const { return results_; }

 private:
  std::filesystem::path dir_;
  Journal journal_;
  std::size_t total_;
  std::function<void(const ProgressEvent&)> progress_;
  std::map<std::string, EvalResult> results_;
};

struct ExperimentRun {
  RunReport report;
  std::size_t failed_overall = 0;  // failed rows in the summary, including earlier runs
  std::filesystem::path summary;   // empty if the run aborted
  std::vector<std::string> warnings;
};

// Resume filter, scheduling, and the summary. datasets is aligned with
// spec.datasets (see check_spec).
ExperimentRun run_experiment(const JobPlan& plan,
                             const std::vector<std::shared_ptr<const Dataset>>& datasets,
                             const LearnerRegistry& registry, const std::filesystem::path& out_dir,
                             const RunOptions& options, const RunHooks& hooks = {});

JobExecutor evaluation_executor(const std::vector<std::shared_ptr<const Dataset>>& datasets,
                                const LearnerRegistry& registry);

}  // namespace flexdm
