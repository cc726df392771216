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

#include <memory>

#include "learners/learner.hpp"

namespace flexdm {

std::shared_ptr<const LearnerFactory> make_zero_r_factory();
std::shared_ptr<const LearnerFactory> make_one_r_factory();
std::shared_ptr<const LearnerFactory> make_naive_bayes_factory();
std::shared_ptr<const LearnerFactory> make_knn_factory();
std::shared_ptr<const LearnerFactory> make_tree_factory();
std::shared_ptr<const LearnerFactory> make_decision_list_factory();

}  // namespace flexdm
