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

#include "experiment.hpp"

#include <fstream>
#include <sstream>

namespace flexdm {

namespace fs = std::filesystem;

LoadedSpec load_spec_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PersistenceError("cannot read spec file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  LoadedSpec loaded;
  loaded.spec = parse_spec(ss.str());
  loaded.base_dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  return loaded;
}

DirectorySink::DirectorySink(fs::path dir, std::size_t total,
                             std::function<void(const ProgressEvent&)> progress)
    : dir_(std::move(dir)), journal_(dir_), total_(total), progress_(std::move(progress)) {}

void DirectorySink::store(const Job& job, EvalResult& result) {
  write_result(dir_, job, result);
}

void DirectorySink::receive(const Job& job, const EvalResult& result) {
  journal_.append({job.id, result.status, result.wall_time});
  results_[job.id] = result;
  if (progress_) progress_({results_.size(), total_, &job, &result});
}

JobExecutor evaluation_executor(const std::vector<std::shared_ptr<const Dataset>>& datasets,
                                const LearnerRegistry& registry) {
  return [&datasets, &registry](const Job& job) {
    const auto& ds = datasets.at(job.dataset_index);
    if (!ds) throw std::runtime_error("dataset " + job.dataset_name + " is not loaded");
    return evaluate_job(job, *ds, registry);
  };
}

ExperimentRun run_experiment(const JobPlan& plan,
                             const std::vector<std::shared_ptr<const Dataset>>& datasets,
                             const LearnerRegistry& registry, const fs::path& out_dir,
                             const RunOptions& options, const RunHooks& hooks) {
  ExperimentRun out;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw PersistenceError("cannot create " + out_dir.string() + ": " + ec.message());

  std::set<std::string> skip;
  JournalState journal;
  if (options.resume) {
    journal = load_journal(out_dir);
    out.warnings = journal.warnings;
    skip = load_completed(out_dir);
    if (!options.retry_failed) {
      for (const auto& [id, status] : journal.latest) {
        if (status == JobStatus::kFailed) skip.insert(id);
      }
    }
  }
  std::size_t to_run = 0;
  for (const auto& job : plan.jobs) to_run += skip.count(job.id) ? 0 : 1;

  DirectorySink sink(out_dir, to_run, hooks.progress);
  SchedulerConfig cfg;
  cfg.worker_count = options.workers;
  JobExecutor executor = hooks.executor ? hooks.executor : evaluation_executor(datasets, registry);
  out.report = run(plan, cfg, executor, sink, skip);
  if (out.report.aborted) return out;

  std::vector<SummaryRow> rows;
  for (const auto& job : plan.jobs) {
    if (auto it = sink.results().find(job.id); it != sink.results().end()) {
      rows.push_back(summary_row(job, it->second));
    } else if (auto stored = read_result(out_dir, job.id)) {
      SummaryRow row = summary_row(job, EvalResult{});
      row.status = stored->status;
      row.accuracy.reset();
      if (stored->status == JobStatus::kCompleted) row.accuracy = stored->accuracy_text;
      rows.push_back(std::move(row));
    } else {
      EvalResult failed;
      failed.status = JobStatus::kFailed;
      rows.push_back(summary_row(job, failed));
    }
    if (rows.back().status == JobStatus::kFailed) ++out.failed_overall;
  }
  out.summary = write_summary(out_dir, std::move(rows));
  return out;
}

}  // namespace flexdm
