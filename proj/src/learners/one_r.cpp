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

#include <algorithm>
#include <limits>
#include <optional>

#include "learners/factories.hpp"
#include "learners/training_data.hpp"

namespace flexdm {

namespace {

// Single-attribute rule. Nominal: one label per category. Numeric: ascending
// buckets, each with an inclusive upper bound (the last is +inf).
struct OneRule {
  std::size_t attribute = 0;
  bool numeric = false;
  std::vector<std::size_t> labels;
  std::vector<double> upper;
  std::size_t errors = 0;
};

class OneRModel : public Model {
 public:
  OneRModel(FeatureEncoder enc, std::optional<OneRule> rule, std::size_t fallback)
      : enc_(std::move(enc)), rule_(std::move(rule)), fallback_(fallback) {}

  std::size_t predict(const Dataset& ds, std::size_t row) const override {
    if (!rule_) return fallback_;
    if (!rule_->numeric) return rule_->labels[enc_.category(ds, row, rule_->attribute)];
    double v = enc_.numeric(ds, row, rule_->attribute);
    for (std::size_t i = 0; i < rule_->upper.size(); ++i) {
      if (v <= rule_->upper[i]) return rule_->labels[i];
    }
    return rule_->labels.back();
  }

 private:
  FeatureEncoder enc_;
  std::optional<OneRule> rule_;
  std::size_t fallback_;
};

OneRule nominal_rule(const Dataset& ds, const FeatureEncoder& enc,
                     std::span<const std::size_t> rows, std::size_t a, std::size_t fallback) {
  std::size_t k = FeatureEncoder::num_categories(ds, a);
  std::vector<std::vector<std::size_t>> counts(k, std::vector<std::size_t>(ds.num_classes(), 0));
  for (std::size_t r : rows) ++counts[enc.category(ds, r, a)][ds.class_label(r)];
  OneRule rule;
  rule.attribute = a;
  for (const auto& c : counts) {
    std::size_t total = 0;
    for (std::size_t x : c) total += x;
    std::size_t label = total == 0 ? fallback : argmax_first(c);
    rule.labels.push_back(label);
    rule.errors += total - c[label];
  }
  return rule;
}

// Buckets grow until their majority class has at least `min_bucket` members and
// the next row has a different class and a different value; neighbouring buckets
// with the same majority are then merged.
OneRule numeric_rule(const Dataset& ds, const FeatureEncoder& enc,
                     std::span<const std::size_t> rows, std::size_t a, std::size_t min_bucket) {
  std::vector<std::pair<double, std::size_t>> sorted;
  for (std::size_t r : rows) sorted.emplace_back(enc.numeric(ds, r, a), ds.class_label(r));
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  struct Bucket {
    std::vector<std::size_t> counts;
    double upper;
  };
  std::vector<Bucket> buckets;
  std::size_t n = sorted.size();
  std::size_t i = 0;
  while (i < n) {
    Bucket b{std::vector<std::size_t>(ds.num_classes(), 0),
             std::numeric_limits<double>::infinity()};
    while (i < n) {
      ++b.counts[sorted[i].second];
      ++i;
      std::size_t maj = argmax_first(b.counts);
      if (i < n && b.counts[maj] >= min_bucket && sorted[i].second != maj &&
          sorted[i].first != sorted[i - 1].first) {
        b.upper = (sorted[i - 1].first + sorted[i].first) / 2.0;
        break;
      }
    }
    buckets.push_back(std::move(b));
  }
  buckets.back().upper = std::numeric_limits<double>::infinity();

  OneRule rule;
  rule.attribute = a;
  rule.numeric = true;
  for (const auto& b : buckets) {
    std::size_t label = argmax_first(b.counts);
    std::size_t total = 0;
    for (std::size_t x : b.counts) total += x;
    rule.errors += total - b.counts[label];
    if (!rule.labels.empty() && rule.labels.back() == label) {
      rule.upper.back() = b.upper;
    } else {
      rule.labels.push_back(label);
      rule.upper.push_back(b.upper);
    }
  }
  return rule;
}

class OneRFactory : public LearnerFactory {
 public:
  std::string_view name() const override { return "oner"; }
  const std::vector<FlagSpec>& flags() const override {
    static const std::vector<FlagSpec> kFlags = {
        {"-B", "6", "minimum bucket size for numeric attributes"},
    };
    return kFlags;
  }

 protected:
  std::unique_ptr<Model> fit_rows(const Options& options, const Dataset& ds,
                                  std::span<const std::size_t> rows) const override {
    long min_bucket = options.integer("-B");
    if (min_bucket < 1) throw LearnerError("minimum bucket size must be >= 1");
    FeatureEncoder enc(ds, rows);
    std::size_t majority = argmax_first(class_counts(ds, rows));
    std::optional<OneRule> best;
    for (std::size_t a = 0; a < ds.num_attributes(); ++a) {
      if (a == ds.class_index) continue;
      OneRule rule = ds.attributes[a].nominal()
                         ? nominal_rule(ds, enc, rows, a, majority)
                         : numeric_rule(ds, enc, rows, a, static_cast<std::size_t>(min_bucket));
      if (!best || rule.errors < best->errors) best = std::move(rule);
    }
    return std::make_unique<OneRModel>(std::move(enc), std::move(best), majority);
  }
};

}  // namespace

std::shared_ptr<const LearnerFactory> make_one_r_factory() {
  return std::make_shared<OneRFactory>();
}

}  // namespace flexdm
