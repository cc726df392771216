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

#include "learners/registry.hpp"

#include <stdexcept>

#include "learners/factories.hpp"

namespace flexdm {

void LearnerRegistry::add(const std::vector<std::string>& names,
                          std::shared_ptr<const LearnerFactory> factory) {
  for (const auto& n : names) {
    if (by_name_.count(n)) throw std::invalid_argument("learner name registered twice: " + n);
  }
  for (const auto& n : names) by_name_[n] = factory;
  ordered_.push_back(std::move(factory));
}

const LearnerFactory* LearnerRegistry::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second.get();
}

std::vector<std::string> LearnerRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [n, f] : by_name_) out.push_back(n);
  return out;
}

std::vector<const LearnerFactory*> LearnerRegistry::factories() const {
  std::vector<const LearnerFactory*> out;
  for (const auto& f : ordered_) out.push_back(f.get());
  return out;
}

const LearnerRegistry& default_registry() {
  static const LearnerRegistry registry = [] {
    LearnerRegistry r;
    r.add({"weka.classifiers.rules.ZeroR", "zeror"}, make_zero_r_factory());
    r.add({"weka.classifiers.rules.OneR", "oner"}, make_one_r_factory());
    r.add({"weka.classifiers.bayes.NaiveBayes", "nb"}, make_naive_bayes_factory());
    r.add({"weka.classifiers.lazy.IBk", "knn"}, make_knn_factory());
    r.add({"weka.classifiers.trees.J48", "j48"}, make_tree_factory());
    r.add({"weka.classifiers.rules.PART", "part"}, make_decision_list_factory());
    return r;
  }();
  return registry;
}

}  // namespace flexdm
