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
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "arff.hpp"
#include "learners/learner.hpp"
#include "learners/training_data.hpp"

namespace flexdm {

struct PruningParams {
  double confidence = 0.25;  // (0, 1]
  std::size_t min_leaf = 2;  // >= 1

  // Reads -C and -M, enforcing the ranges above.
  static PruningParams from_options(const Options& options);
};

struct TreeNode {
  std::size_t label = 0;   // majority class of the rows reaching this node
  std::size_t count = 0;   // training rows reaching this node
  std::size_t errors = 0;  // of those, rows not labelled `label`

  // Internal nodes only.
  std::optional<std::size_t> attribute;
  double threshold = 0.0;  // numeric split: child 0 takes value <= threshold
  std::vector<std::unique_ptr<TreeNode>> children;

  bool is_leaf() const { return !attribute.has_value(); }
};

// Gain-ratio tree with multiway nominal splits, binary numeric splits and
// pessimistic-error subtree replacement.
class DecisionTree {
 public:
  static DecisionTree build(const Dataset& ds, std::span<const std::size_t> rows,
                            const FeatureEncoder& encoder, const PruningParams& params);

  const TreeNode& root() const { return *root_; }
  const TreeNode& leaf_for(const Dataset& ds, std::size_t row,
                           const FeatureEncoder& encoder) const;
  std::size_t predict(const Dataset& ds, std::size_t row, const FeatureEncoder& encoder) const {
    return leaf_for(ds, row, encoder).label;
  }

  std::size_t leaf_count() const;
  std::size_t internal_count() const;
  std::size_t depth() const;         // a single leaf has depth 0
  std::size_t prune_count() const { return prunes_; }

 private:
  std::unique_ptr<TreeNode> root_;
  std::size_t prunes_ = 0;
};

class TreeModel : public Model {
 public:
  TreeModel(FeatureEncoder encoder, DecisionTree tree)
      : encoder_(std::move(encoder)), tree_(std::move(tree)) {}

  std::size_t predict(const Dataset& ds, std::size_t row) const override {
    return tree_.predict(ds, row, encoder_);
  }
  const DecisionTree& tree() const { return tree_; }

 private:
  FeatureEncoder encoder_;
  DecisionTree tree_;
};

TreeModel build_pruned_tree(const Dataset& ds, std::span<const std::size_t> train_rows,
                            const PruningParams& params);

}  // namespace flexdm
