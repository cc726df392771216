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

#include "learners/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "learners/factories.hpp"
#include "learners/pruning.hpp"

namespace flexdm {

PruningParams PruningParams::from_options(const Options& options) {
  PruningParams p;
  p.confidence = options.number("-C");
  if (!(p.confidence > 0.0 && p.confidence <= 1.0)) {
    throw LearnerError("confidence factor out of range (0,1]: " + options.text("-C"));
  }
  long m = options.integer("-M");
  if (m < 1) throw LearnerError("minimum leaf size must be >= 1: " + options.text("-M"));
  p.min_leaf = static_cast<std::size_t>(m);
  return p;
}

namespace {

constexpr double kMinGain = 1e-10;

double entropy(std::span<const std::size_t> counts, std::size_t total) {
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

struct Split {
  std::size_t attribute = 0;
  double threshold = 0.0;
  double gain_ratio = 0.0;
};

class Builder {
 public:
  Builder(const Dataset& ds, const FeatureEncoder& enc, const PruningParams& params)
      : ds_(ds), enc_(enc), params_(params), classes_(ds.num_classes()) {}

  std::unique_ptr<TreeNode> grow(std::vector<std::size_t> rows, std::size_t parent_label) {
    auto node = std::make_unique<TreeNode>();
    node->count = rows.size();
    if (rows.empty()) {
      node->label = parent_label;
      return node;
    }
    auto counts = class_counts(ds_, rows);
    node->label = argmax_first(counts);
    node->errors = rows.size() - counts[node->label];
    if (node->errors == 0 || rows.size() < 2 * params_.min_leaf) return node;

    auto split = best_split(rows, counts);
    if (!split) return node;

    node->attribute = split->attribute;
    node->threshold = split->threshold;
    for (auto& part : partition(rows, *split)) {
      node->children.push_back(grow(std::move(part), node->label));
    }
    prune(*node);
    return node;
  }

  std::size_t prunes() const { return prunes_; }

 private:
  std::vector<std::vector<std::size_t>> partition(const std::vector<std::size_t>& rows,
                                                  const Split& split) const {
    std::size_t a = split.attribute;
    if (ds_.attributes[a].nominal()) {
      std::vector<std::vector<std::size_t>> parts(FeatureEncoder::num_categories(ds_, a));
      for (std::size_t r : rows) parts[enc_.category(ds_, r, a)].push_back(r);
      return parts;
    }
    std::vector<std::vector<std::size_t>> parts(2);
    for (std::size_t r : rows) {
      parts[enc_.numeric(ds_, r, a) <= split.threshold ? 0 : 1].push_back(r);
    }
    return parts;
  }

  std::optional<Split> best_split(const std::vector<std::size_t>& rows,
                                  const std::vector<std::size_t>& counts) const {
    double base = entropy(counts, rows.size());
    std::optional<Split> best;
    for (std::size_t a = 0; a < ds_.num_attributes(); ++a) {
      if (a == ds_.class_index) continue;
      auto candidate = ds_.attributes[a].nominal() ? nominal_split(rows, a, base)
                                                   : numeric_split(rows, a, base);
      if (candidate && (!best || candidate->gain_ratio > best->gain_ratio)) best = candidate;
    }
    return best;
  }

  std::optional<Split> nominal_split(const std::vector<std::size_t>& rows, std::size_t a,
                                     double base) const {
    std::size_t k = FeatureEncoder::num_categories(ds_, a);
    std::vector<std::vector<std::size_t>> branch(k, std::vector<std::size_t>(classes_, 0));
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t r : rows) {
      std::size_t cat = enc_.category(ds_, r, a);
      ++branch[cat][ds_.class_label(r)];
      ++sizes[cat];
    }
    std::size_t viable = 0;
    for (std::size_t s : sizes) viable += s >= params_.min_leaf ? 1 : 0;
    if (viable < 2) return std::nullopt;

    double n = static_cast<double>(rows.size());
    double remainder = 0.0;
    double split_info = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (sizes[i] == 0) continue;
      double w = static_cast<double>(sizes[i]) / n;
      remainder += w * entropy(branch[i], sizes[i]);
      split_info -= w * std::log2(w);
    }
    double gain = base - remainder;
    if (gain <= kMinGain || split_info <= kMinGain) return std::nullopt;
    return Split{a, 0.0, gain / split_info};
  }

  std::optional<Split> numeric_split(const std::vector<std::size_t>& rows, std::size_t a,
                                     double base) const {
    std::vector<std::pair<double, std::size_t>> sorted;  // (value, class)
    sorted.reserve(rows.size());
    for (std::size_t r : rows) sorted.emplace_back(enc_.numeric(ds_, r, a), ds_.class_label(r));
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });

    std::size_t n = sorted.size();
    std::vector<std::size_t> left(classes_, 0);
    std::vector<std::size_t> right(classes_, 0);
    for (const auto& [v, c] : sorted) ++right[c];

    double best_gain = kMinGain;
    std::optional<std::size_t> best_cut;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      ++left[sorted[i].second];
      --right[sorted[i].second];
      std::size_t nl = i + 1;
      std::size_t nr = n - nl;
      if (sorted[i].first == sorted[i + 1].first) continue;
      if (nl < params_.min_leaf || nr < params_.min_leaf) continue;
      double gain = base - (static_cast<double>(nl) * entropy(left, nl) +
                            static_cast<double>(nr) * entropy(right, nr)) /
                               static_cast<double>(n);
      if (gain > best_gain) {
        best_gain = gain;
        best_cut = i;
      }
    }
    if (!best_cut) return std::nullopt;
    double wl = static_cast<double>(*best_cut + 1) / static_cast<double>(n);
    double wr = 1.0 - wl;
    double split_info = -wl * std::log2(wl) - wr * std::log2(wr);
    double threshold = (sorted[*best_cut].first + sorted[*best_cut + 1].first) / 2.0;
    return Split{a, threshold, best_gain / split_info};
  }

  double subtree_estimate(const TreeNode& node) const {
    if (node.is_leaf()) {
      return pessimistic_error_count(static_cast<double>(node.errors),
                                     static_cast<double>(node.count), params_.confidence);
    }
    double sum = 0.0;
    for (const auto& child : node.children) sum += subtree_estimate(*child);
    return sum;
  }

  // Subtree replacement: collapse to a leaf when the leaves' pessimistic error
  // total is worse than the collapsed node's own estimate.
  void prune(TreeNode& node) {
    double as_leaf = pessimistic_error_count(static_cast<double>(node.errors),
                                             static_cast<double>(node.count),
                                             params_.confidence);
    if (subtree_estimate(node) > as_leaf) {
      node.attribute.reset();
      node.children.clear();
      ++prunes_;
    }
  }

  const Dataset& ds_;
  const FeatureEncoder& enc_;
  PruningParams params_;
  std::size_t classes_;
  std::size_t prunes_ = 0;
};

std::size_t count_nodes(const TreeNode& node, bool leaves) {
  if (node.is_leaf()) return leaves ? 1 : 0;
  std::size_t n = leaves ? 0 : 1;
  for (const auto& c : node.children) n += count_nodes(*c, leaves);
  return n;
}

std::size_t node_depth(const TreeNode& node) {
  std::size_t d = 0;
  for (const auto& c : node.children) d = std::max(d, 1 + node_depth(*c));
  return d;
}

}  // namespace

DecisionTree DecisionTree::build(const Dataset& ds, std::span<const std::size_t> rows,
                                 const FeatureEncoder& encoder, const PruningParams& params) {
  Builder builder(ds, encoder, params);
  DecisionTree tree;
  tree.root_ = builder.grow(std::vector<std::size_t>(rows.begin(), rows.end()), 0);
  tree.prunes_ = builder.prunes();
  return tree;
}

const TreeNode& DecisionTree::leaf_for(const Dataset& ds, std::size_t row,
                                       const FeatureEncoder& encoder) const {
  const TreeNode* node = root_.get();
  while (!node->is_leaf()) {
    std::size_t a = *node->attribute;
    std::size_t branch = ds.attributes[a].nominal()
                             ? encoder.category(ds, row, a)
                             : (encoder.numeric(ds, row, a) <= node->threshold ? 0 : 1);
    node = node->children[branch].get();
  }
  return *node;
}

std::size_t DecisionTree::leaf_count() const { return count_nodes(*root_, true); }
std::size_t DecisionTree::internal_count() const { return count_nodes(*root_, false); }
std::size_t DecisionTree::depth() const { return node_depth(*root_); }

TreeModel build_pruned_tree(const Dataset& ds, std::span<const std::size_t> train_rows,
                            const PruningParams& params) {
  FeatureEncoder encoder(ds, train_rows);
  DecisionTree tree = DecisionTree::build(ds, train_rows, encoder, params);
  return TreeModel(std::move(encoder), std::move(tree));
}

namespace {

class TreeFactory : public LearnerFactory {
 public:
  std::string_view name() const override { return "j48"; }
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
    return std::make_unique<TreeModel>(
        build_pruned_tree(ds, rows, PruningParams::from_options(options)));
  }
};

}  // namespace

std::shared_ptr<const LearnerFactory> make_tree_factory() {
  return std::make_shared<TreeFactory>();
}

}  // namespace flexdm
