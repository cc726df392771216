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

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evaluation.hpp"
#include "planner.hpp"

namespace flexdm {

// One hardware thread is left for the rest of the machine: max(1, n - 1).
unsigned default_worker_count(unsigned n_logical);

// std::thread::hardware_concurrency(), never below 1.
unsigned logical_processor_count();

struct SchedulerConfig {
  unsigned worker_count = default_worker_count(logical_processor_count());
  // Soft limit: a job that ran longer is reported as failed. Jobs are never
  // interrupted. Meant for the bench harness.
  std::optional<double> job_timeout_seconds;
};

class ResultSink {
 public:
  virtual ~ResultSink() = default;
  // Runs on the worker that finished the job, possibly concurrently with other
  // workers. May downgrade the result to failed (e.g. a write error).
  virtual void store(const Job&, EvalResult&) {}
  // Serialized: at most one call at a time, in completion order. Returns before
  // the worker takes its next job. Throwing aborts the run.
  virtual void receive(const Job& job, const EvalResult& result) = 0;
};

class NullSink : public ResultSink {
 public:
  void receive(const Job&, const EvalResult&) override {}
};

using JobExecutor = std::function<EvalResult(const Job&)>;

struct RunReport {
  std::size_t completed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  double wall_time = 0.0;
  std::vector<std::pair<std::string, double>> durations;  // completion order
  bool aborted = false;
  std::string abort_reason;
};

// Jobs in `resume_set` are skipped; the rest go to the workers in plan order.
// Executor exceptions become failed results.
RunReport run(const JobPlan& plan, const SchedulerConfig& config, const JobExecutor& executor,
              ResultSink& sink, const std::set<std::string>& resume_set = {});

struct BenchRow {
  unsigned workers = 1;
  double seconds = 0.0;
  double speedup = 1.0;
  double theoretical = 1.0;  // list-scheduling bound jobs / ceil(jobs / w)
};

struct BenchReport {
  std::vector<BenchRow> rows;
  // "workers,total_seconds,speedup,theoretical" then one row per worker count.
  std::string csv() const;
};

double theoretical_speedup(std::size_t jobs, unsigned workers);

// Runs the whole plan once per worker count. `worker_counts` must contain 1.
BenchReport bench(const JobPlan& plan, std::span<const unsigned> worker_counts,
                  const JobExecutor& executor, ResultSink& sink);

}  // namespace flexdm
