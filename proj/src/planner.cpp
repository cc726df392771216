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

#include "planner.hpp"

#include <cstdio>
#include <unordered_map>

#include "job_id.hpp"

namespace flexdm {

std::string Job::params_string() const {
  std::string out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (i) out.push_back(';');
    out += assignment[i].flag;
    out.push_back('=');
    out += assignment[i].value;
  }
  return out;
}

std::string canonical_job_string(const Job& job) {
  return job.dataset_name + "|" + job.test.token() + "|" + job.classifier_name + "|" +
         job.params_string();
}

void finalize_job(Job& job) {
  job.canonical = canonical_job_string(job);
  job.id = job_id(job.canonical);
}

namespace {

struct RangeGrid {
  __int128 start = 0;
  __int128 step = 0;
  __int128 count = 0;
  int scale = 0;
};

// Both endpoints and the step are exact decimals, so the count is plain integer
// division on a common scale.
RangeGrid range_grid(const RangeValue& r) {
  RangeGrid g;
  g.scale = std::max({r.start.scale(), r.step.scale(), r.end.scale()});
  g.start = r.start.scaled_to(g.scale);
  g.step = r.step.scaled_to(g.scale);
  __int128 end = r.end.scaled_to(g.scale);
  g.count = (end - g.start) / g.step + 1;
  return g;
}

}  // namespace

unsigned __int128 value_count(const ValueSpec& value) {
  if (std::holds_alternative<ScalarValue>(value)) return 1;
  if (auto* l = std::get_if<ListValue>(&value)) return l->items.size();
  return static_cast<unsigned __int128>(range_grid(std::get<RangeValue>(value)).count);
}

std::vector<std::string> expand_value_spec(const ValueSpec& value) {
  if (auto* s = std::get_if<ScalarValue>(&value)) return {s->text};
  if (auto* l = std::get_if<ListValue>(&value)) return l->items;
  RangeGrid g = range_grid(std::get<RangeValue>(value));
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(g.count));
  for (__int128 i = 0; i < g.count; ++i) {
    out.push_back(format_scaled(g.start + i * g.step, g.scale));
  }
  return out;
}

JobPlan expand_jobs(const ExperimentSpec& spec, std::uint64_t cap) {
  unsigned __int128 total = 0;
  for (const auto& d : spec.datasets) {
    for (const auto& c : d.classifiers) {
      unsigned __int128 product = 1;
      for (const auto& p : c.parameters) {
        product *= value_count(p.value);
        if (product > cap) break;
      }
      total += product;
      if (total > cap) break;
    }
    if (total > cap) break;
  }
  if (total > cap) {
    // The break above leaves a lower bound; recompute exactly (saturating) for the message.
    long double exact = 0;
    for (const auto& d : spec.datasets) {
      for (const auto& c : d.classifiers) {
        long double product = 1;
        for (const auto& p : c.parameters) product *= static_cast<long double>(value_count(p.value));
        exact += product;
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.0Lf", exact);
    throw PlanError("plan has " + std::string(buf) + " jobs, exceeding the cap of " +
                    std::to_string(cap));
  }

  JobPlan plan;
  plan.jobs.reserve(static_cast<std::size_t>(total));
  for (std::size_t di = 0; di < spec.datasets.size(); ++di) {
    const auto& d = spec.datasets[di];
    for (const auto& c : d.classifiers) {
      std::vector<std::vector<std::string>> axes;
      for (const auto& p : c.parameters) axes.push_back(expand_value_spec(p.value));
      std::vector<std::size_t> odometer(axes.size(), 0);
      while (true) {
        Job job;
        job.dataset_index = di;
        job.dataset_name = d.name;
        job.test = d.test;
        job.results = d.results;
        job.classifier_name = c.name;
        for (std::size_t i = 0; i < axes.size(); ++i) {
          job.assignment.push_back({c.parameters[i].name, axes[i][odometer[i]]});
        }
        finalize_job(job);
        plan.jobs.push_back(std::move(job));

        std::size_t pos = axes.size();
        while (pos > 0) {
          --pos;
          if (++odometer[pos] < axes[pos].size()) break;
          odometer[pos] = 0;
          if (pos == 0) {
            pos = axes.size() + 1;  // wrapped: done
            break;
          }
        }
        if (axes.empty() || pos == axes.size() + 1) break;
      }
    }
  }
  std::unordered_map<std::string, const Job*> seen;
  for (const auto& job : plan.jobs) {
    auto [it, inserted] = seen.emplace(job.id, &job);
    if (!inserted) {
      if (it->second->canonical == job.canonical) {
        throw PlanError("duplicate job " + job.canonical);
      }
      throw PlanError("job id collision between " + it->second->canonical + " and " +
                      job.canonical);
    }
  }
  return plan;
}

}  // namespace flexdm
