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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spec.hpp"

namespace flexdm {

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParameterBinding {
  std::string flag;
  std::string value;
  friend bool operator==(const ParameterBinding&, const ParameterBinding&) = default;
};

// Flags in classifier declaration order.
using ParameterAssignment = std::vector<ParameterBinding>;

struct Job {
  std::size_t dataset_index = 0;  // position in ExperimentSpec::datasets
  std::string dataset_name;
  TestStrategy test;
  ResultOptions results;
  std::string classifier_name;
  ParameterAssignment assignment;
  std::string canonical;  // canonical_job_string(*this)
  std::string id;         // job_id(canonical)

  // "-C=0.1;-M=2"
  std::string params_string() const;
};

struct JobPlan {
  std::vector<Job> jobs;
  std::size_t total_count() const { return jobs.size(); }
};

inline constexpr std::uint64_t kDefaultJobCap = 1'000'000;

// Number of values a value spec expands to, computed without materializing.
unsigned __int128 value_count(const ValueSpec& value);

std::vector<std::string> expand_value_spec(const ValueSpec& value);

// Datasets, then classifiers, then the parameter grid in odometer order (the
// last-declared parameter varies fastest).
JobPlan expand_jobs(const ExperimentSpec& spec, std::uint64_t cap = kDefaultJobCap);

// "<dataset>|<test token>|<classifier>|<flag>=<value>;..." Changing this format
// invalidates every existing journal.
std::string canonical_job_string(const Job& job);

// Fills canonical and id from the other fields.
void finalize_job(Job& job);

}  // namespace flexdm
