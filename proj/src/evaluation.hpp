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

#include "arff.hpp"
#include "learners/registry.hpp"
#include "planner.hpp"

namespace flexdm {

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfusionMatrix {
  std::vector<std::string> labels;               // class declaration order
  std::vector<std::vector<std::size_t>> counts;  // [actual][predicted]

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::vector<std::string> class_labels);
  std::size_t total() const;
  std::size_t trace() const;
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// trace / total. Throws EvaluationError on an empty matrix.
double accuracy(const ConfusionMatrix& m);

enum class JobStatus { kCompleted, kFailed };

struct EvalResult {
  std::string job_id;
  ConfusionMatrix matrix;
  double accuracy = 0.0;
  double wall_time = 0.0;  // seconds
  JobStatus status = JobStatus::kCompleted;
  std::string message;     // failure reason

  bool completed() const { return status == JobStatus::kCompleted; }
};

// 64-bit LCG (multiplier 6364136223846793005, increment 1442695040888963407).
// Each step returns the new state.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }
  // Uniform-ish index in [0, n) from the high 32 bits.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>((next() >> 32) % n); }

 private:
  std::uint64_t state_;
};

// Fisher-Yates from the back: for i = n-1 .. 1, swap(v[i], v[below(i+1)]).
void seeded_shuffle(std::vector<std::size_t>& rows, std::uint64_t seed);

// Rows whose class is present, ascending. Evaluation never sees the others.
std::vector<std::size_t> labeled_rows(const Dataset& ds);

// Shuffles the labelled rows, then deals each class's rows (class declaration
// order) round-robin into k folds with one running counter. Folds are sorted.
std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& ds, std::size_t k,
                                                       std::uint64_t seed);

struct Fold {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // order in which predictions are made
};

// Train/test partitions for a strategy. Throws EvaluationError when the dataset
// is too small for it.
std::vector<Fold> make_folds(const TestStrategy& test, const Dataset& ds);

// Never throws for job-level problems: they come back as kFailed with a message.
EvalResult evaluate_job(const Job& job, const Dataset& ds, const LearnerRegistry& registry);

}  // namespace flexdm
