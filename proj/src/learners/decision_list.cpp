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

#include "learners/decision_list.hpp"

#include "learners/factories.hpp"

namespace flexdm {

bool DecisionListModel::matches(const Rule& rule, const Dataset& ds, std::size_t row) const {
  for (const auto& c : rule.conditions) {
    if (c.numeric) {
      bool le = encoder_.numeric(ds, row, c.attribute) <= c.threshold;
      if (le != c.at_most) return false;
    } else if (encoder_.category(ds, row, c.attribute) != c.category) {
      return false;
    }
  }
  return true;
}

std::size_t DecisionListModel::predict(const Dataset& ds, std::size_t row) const {
  for (const auto& rule : rules_) {
    if (matches(rule, ds, row)) return rule.label;
  }
  return default_label_;
}

namespace {

struct LeafPath {
  const TreeNode* leaf = nullptr;
  std::vector<RuleCondition> conditions;
};

// Depth-first, branch order; the first leaf with the strictly largest count wins.
void largest_leaf(const Dataset& ds, const TreeNode& node, std::vector<RuleCondition>& path,
                  LeafPath& best) {
  if (node.is_leaf()) {
    if (best.leaf == nullptr || node.count > best.leaf->count) {
      best.leaf = &node;
      best.conditions = path;
    }
    return;
  }
  std::size_t a = *node.attribute;
  bool numeric = !ds.attributes[a].nominal();
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    RuleCondition c;
    c.attribute = a;
    c.numeric = numeric;
    if (numeric) {
      c.threshold = node.threshold;
      c.at_most = i == 0;
    } else {
      c.category = i;
    }
    path.push_back(c);
    largest_leaf(ds, *node.children[i], path, best);
    path.pop_back();
  }
}

}  // namespace

DecisionListModel build_decision_list(const Dataset& ds, std::span<const std::size_t> train_rows,
                                      const PruningParams& params) {
  FeatureEncoder encoder(ds, train_rows);
  std::size_t default_label = argmax_first(class_counts(ds, train_rows));
  DecisionListModel scratch(encoder, {}, default_label);

  std::vector<Rule> rules;
  std::vector<std::size_t> remaining(train_rows.begin(), train_rows.end());
  while (!remaining.empty()) {
    DecisionTree tree = DecisionTree::build(ds, remaining, encoder, params);
    LeafPath best;
    std::vector<RuleCondition> path;
    largest_leaf(ds, tree.root(), path, best);

    Rule rule{std::move(best.conditions), best.leaf->label, 0};
    std::vector<std::size_t> rest;
    for (std::size_t r : remaining) {
      if (scratch.matches(rule, ds, r)) {
        ++rule.covered;
      } else {
        rest.push_back(r);
      }
    }
    remaining = std::move(rest);
    rules.push_back(std::move(rule));
  }
  return DecisionListModel(std::move(encoder), std::move(rules), default_label);
}

namespace {

class DecisionListFactory : public LearnerFactory {
 public:
  std::string_view name() const override { return "part"; }
  const std::vector<FlagSpec>& flags() const override {
    static const std::vector<FlagSpec> kFlags = {
        {"-C", "0.25", "pruning confidence factor"},
        {"-M", "2", "minimum rows per leaf"},
    };
    return kFlags;
  }

 protected:
  std::unique_ptr<Model> fit_rows(const Options& options, const Dataset& ds,
                                  std::span<const std::size_t> rows) const override {
    return std::make_unique<DecisionListModel>(
        build_decision_list(ds, rows, PruningParams::from_options(options)));
  }
};

}  // namespace

std::shared_ptr<const LearnerFactory> make_decision_list_factory() {
  return std::make_shared<DecisionListFactory>();
}

}  // namespace flexdm
