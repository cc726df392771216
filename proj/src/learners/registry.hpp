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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "learners/learner.hpp"

namespace flexdm {

class LearnerRegistry {
 public:
  // Registers one factory under each of `names`. Throws std::invalid_argument
  // if a name is already taken.
  void add(const std::vector<std::string>& names, std::shared_ptr<const LearnerFactory> factory);

  // nullptr when unknown.
  const LearnerFactory* find(const std::string& name) const;

  std::vector<std::string> names() const;
  // One entry per distinct factory, in registration order.
  std::vector<const LearnerFactory*> factories() const;

 private:
  std::map<std::string, std::shared_ptr<const LearnerFactory>> by_name_;
  std::vector<std::shared_ptr<const LearnerFactory>> ordered_;
};

// WEKA-style class names plus short aliases for the built-in learners.
const LearnerRegistry& default_registry();

}  // namespace flexdm
