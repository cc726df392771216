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

#include "scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace flexdm {

unsigned default_worker_count(unsigned n_logical) { return n_logical > 1 ? n_logical - 1 : 1; }

unsigned logical_processor_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

}  // namespace

RunReport run(const JobPlan& plan, const SchedulerConfig& config, const JobExecutor& executor,
              ResultSink& sink, const std::set<std::string>& resume_set) {
  if (config.worker_count < 1) throw std::invalid_argument("worker_count must be >= 1");
  auto started = Clock::now();
  RunReport report;

  std::vector<const Job*> queue;
  for (const auto& job : plan.jobs) {
    if (resume_set.count(job.id)) {
      ++report.skipped;
    } else {
      queue.push_back(&job);
    }
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex sink_mutex;

  auto worker = [&] {
    while (!abort.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= queue.size()) return;
      const Job& job = *queue[i];

      EvalResult result;
      auto job_started = Clock::now();
      try {
        result = executor(job);
      } catch (const std::exception& e) {
        result = EvalResult{};
        result.status = JobStatus::kFailed;
        result.message = e.what();
      }
      result.job_id = job.id;
      result.wall_time = seconds_since(job_started);
      if (config.job_timeout_seconds && result.completed() &&
          result.wall_time > *config.job_timeout_seconds) {
        result.status = JobStatus::kFailed;
        result.message = "exceeded the per-job time limit";
      }
      try {
        sink.store(job, result);
      } catch (const std::exception& e) {
        result.status = JobStatus::kFailed;
        result.message = std::string("write error: ") + e.what();
      }

      std::lock_guard<std::mutex> lock(sink_mutex);
      if (abort.load()) return;
      try {
        sink.receive(job, result);
      } catch (const std::exception& e) {
        abort.store(true);
        report.aborted = true;
        report.abort_reason = e.what();
        return;
      }
      if (result.completed()) {
        ++report.completed;
      } else {
        ++report.failed;
      }
      report.durations.emplace_back(job.id, result.wall_time);
    }
  };

  unsigned n = std::min<std::size_t>(config.worker_count, std::max<std::size_t>(queue.size(), 1));
  {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  report.wall_time = seconds_since(started);
  return report;
}

double theoretical_speedup(std::size_t jobs, unsigned workers) {
  if (jobs == 0 || workers == 0) return 1.0;
  std::size_t rounds = (jobs + workers - 1) / workers;
  return std::min(static_cast<double>(workers),
                  static_cast<double>(jobs) / static_cast<double>(rounds));
}

std::string BenchReport::csv() const {
  std::string out = "workers,total_seconds,speedup,theoretical\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%u,%.3f,%.3f,%.3f\n", r.workers, r.seconds, r.speedup,
                  r.theoretical);
    out += buf;
  }
  return out;
}

BenchReport bench(const JobPlan& plan, std::span<const unsigned> worker_counts,
                  const JobExecutor& executor, ResultSink& sink) {
  if (worker_counts.empty() ||
      std::find(worker_counts.begin(), worker_counts.end(), 1u) == worker_counts.end()) {
    throw std::invalid_argument("bench worker counts must include 1");
  }
  for (unsigned w : worker_counts) {
    if (w < 1) throw std::invalid_argument("bench worker counts must be >= 1");
  }
  BenchReport report;
  double baseline = 0.0;
  std::vector<double> seconds;
  for (unsigned w : worker_counts) {
    SchedulerConfig cfg;
    cfg.worker_count = w;
    RunReport r = run(plan, cfg, executor, sink);
    if (r.aborted) throw std::runtime_error("bench run aborted: " + r.abort_reason);
    seconds.push_back(r.wall_time);
    if (w == 1 && baseline == 0.0) baseline = r.wall_time;
  }
  for (std::size_t i = 0; i < worker_counts.size(); ++i) {
    BenchRow row;
    row.workers = worker_counts[i];
    row.seconds = seconds[i];
    row.speedup = worker_counts[i] == 1 ? 1.0 : (seconds[i] > 0 ? baseline / seconds[i] : 0.0);
    row.theoretical = theoretical_speedup(plan.jobs.size(), worker_counts[i]);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace flexdm
