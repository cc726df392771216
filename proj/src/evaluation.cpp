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

#include "evaluation.hpp"

#include <algorithm>
#include <chrono>

namespace flexdm {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> class_labels)
    : labels(std::move(class_labels)),
      counts(labels.size(), std::vector<std::size_t>(labels.size(), 0)) {}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (const auto& row : counts) {
    for (std::size_t c : row) t += c;
  }
  return t;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
  return t;
}

double accuracy(const ConfusionMatrix& m) {
  std::size_t total = m.total();
  if (total == 0) throw EvaluationError("accuracy undefined for an empty confusion matrix");
  return static_cast<double>(m.trace()) / static_cast<double>(total);
}

void seeded_shuffle(std::vector<std::size_t>& rows, std::uint64_t seed) {
  Lcg64 rng(seed);
  for (std::size_t i = rows.size(); i > 1; --i) {
    std::swap(rows[i - 1], rows[rng.below(i)]);
  }
}

std::vector<std::size_t> labeled_rows(const Dataset& ds) {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < ds.num_rows(); ++r) {
    if (!ds.class_missing(r)) rows.push_back(r);
  }
  return rows;
}

std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& ds, std::size_t k,
                                                       std::uint64_t seed) {
  std::vector<std::size_t> rows = labeled_rows(ds);
  if (k < 2) throw EvaluationError("need at least 2 folds");
  if (k > rows.size()) {
    throw EvaluationError("cannot make " + std::to_string(k) + " folds from " +
                          std::to_string(rows.size()) + " instances");
  }
  seeded_shuffle(rows, seed);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t next = 0;
  for (std::size_t c = 0; c < ds.num_classes(); ++c) {
    for (std::size_t r : rows) {
      if (ds.class_label(r) != c) continue;
      folds[next % k].push_back(r);
      ++next;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

namespace {

std::vector<std::size_t> complement(const std::vector<std::size_t>& all,
                                    const std::vector<std::size_t>& sorted_subset) {
  std::vector<std::size_t> out;
  std::set_difference(all.begin(), all.end(), sorted_subset.begin(), sorted_subset.end(),
                      std::back_inserter(out));
  return out;
}

// ceil(percent / 100 * n) in exact arithmetic.
std::size_t train_size(const Decimal& percent, std::size_t n) {
  __int128 num = static_cast<__int128>(percent.units()) * static_cast<__int128>(n);
  __int128 den = 100;
  for (int i = 0; i < percent.scale(); ++i) den *= 10;
  return static_cast<std::size_t>((num + den - 1) / den);
}

}  // namespace

std::vector<Fold> make_folds(const TestStrategy& test, const Dataset& ds) {
  std::vector<std::size_t> rows = labeled_rows(ds);
  std::vector<Fold> folds;
  switch (test.kind) {
    case TestStrategy::Kind::kLeaveOneOut: {
      if (rows.size() < 2) {
        throw EvaluationError("leave-one-out needs at least 2 instances, dataset has " +
                              std::to_string(rows.size()));
      }
      for (std::size_t r : rows) folds.push_back({complement(rows, {r}), {r}});
      break;
    }
    case TestStrategy::Kind::kKFold: {
      if (rows.size() < static_cast<std::size_t>(test.folds)) {
        throw EvaluationError(std::to_string(test.folds) + "-fold cross-validation needs at least " +
                              std::to_string(test.folds) + " instances, dataset has " +
                              std::to_string(rows.size()));
      }
      for (auto& f : stratified_folds(ds, static_cast<std::size_t>(test.folds), test.seed)) {
        folds.push_back({complement(rows, f), std::move(f)});
      }
      break;
    }
    case TestStrategy::Kind::kPercentageSplit: {
      if (rows.size() < 2) {
        throw EvaluationError("percentage split needs at least 2 instances, dataset has " +
                              std::to_string(rows.size()));
      }
      std::size_t n_train = train_size(test.train_percent, rows.size());
      if (n_train == 0 || n_train >= rows.size()) {
        throw EvaluationError("split:" + test.train_percent.str() + " of " +
                              std::to_string(rows.size()) +
                              " instances leaves an empty train or test set");
      }
      seeded_shuffle(rows, test.seed);
      Fold f;
      f.train.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
      f.test.assign(rows.begin() + static_cast<std::ptrdiff_t>(n_train), rows.end());
      std::sort(f.train.begin(), f.train.end());
      std::sort(f.test.begin(), f.test.end());
      folds.push_back(std::move(f));
      break;
    }
  }
  return folds;
}

EvalResult evaluate_job(const Job& job, const Dataset& ds, const LearnerRegistry& registry) {
  auto started = std::chrono::steady_clock::now();
  EvalResult result;
  result.job_id = job.id;
  if (ds.class_attribute().nominal()) {
    result.matrix = ConfusionMatrix(ds.class_attribute().labels);
  }
  try {
    const LearnerFactory* factory = registry.find(job.classifier_name);
    if (factory == nullptr) throw LearnerError("unknown classifier " + job.classifier_name);
    if (!ds.class_attribute().nominal()) {
      throw LearnerError("class attribute '" + ds.class_attribute().name + "' is not nominal");
    }
    for (const Fold& fold : make_folds(job.test, ds)) {
      auto model = factory->fit(job.assignment, ds, fold.train);
      for (std::size_t r : fold.test) {
        ++result.matrix.counts[ds.class_label(r)][model->predict(ds, r)];
      }
    }
    result.accuracy = accuracy(result.matrix);
  } catch (const std::exception& e) {
    result.status = JobStatus::kFailed;
    result.message = e.what();
    result.accuracy = 0.0;
    if (ds.class_attribute().nominal()) result.matrix = ConfusionMatrix(ds.class_attribute().labels);
  }
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace flexdm
