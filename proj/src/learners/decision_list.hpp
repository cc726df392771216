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

#include <cstddef>
#include <span>
#include <vector>

#include "learners/tree.hpp"

namespace flexdm {

struct RuleCondition {
  std::size_t attribute = 0;
  bool numeric = false;
  std::size_t category = 0;  // nominal: encoded category to match
  double threshold = 0.0;    // numeric
  bool at_most = true;       // numeric: value <= threshold, else value > threshold
};

struct Rule {
  std::vector<RuleCondition> conditions;
  std::size_t label = 0;
  std::size_t covered = 0;  // training rows removed by this rule
};

// Ordered rule list; the first rule whose conditions all hold fires, otherwise
// the default label.
class DecisionListModel : public Model {
 public:
  DecisionListModel(FeatureEncoder encoder, std::vector<Rule> rules, std::size_t default_label)
      : encoder_(std::move(encoder)), rules_(std::move(rules)), default_label_(default_label) {}

  std::size_t predict(const Dataset& ds, std::size_t row) const override;
  bool matches(const Rule& rule, const Dataset& ds, std::size_t row) const;

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t default_label() const { return default_label_; }

 private:
  FeatureEncoder encoder_;
  std::vector<Rule> rules_;
  std::size_t default_label_;
};

// Repeatedly grows a pruned tree on the uncovered rows and keeps its largest
// leaf as the next rule, until every training row is covered.
DecisionListModel build_decision_list(const Dataset& ds, std::span<const std::size_t> train_rows,
                                      const PruningParams& params);

}  // namespace flexdm
