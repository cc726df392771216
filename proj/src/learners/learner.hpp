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
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arff.hpp"
#include "planner.hpp"

namespace flexdm {

// Job-level failure: bad flag value, empty training set, unknown flag.
class LearnerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Model {
 public:
  virtual ~Model() = default;
  // Index of the predicted class label. Pure; never abstains.
  virtual std::size_t predict(const Dataset& ds, std::size_t row) const = 0;
};

struct FlagSpec {
  std::string flag;
  std::string default_value;
  std::string description;
};

// Flag values after defaults are applied, with typed accessors.
class Options {
 public:
  explicit Options(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  const std::string& text(const std::string& flag) const;
  double number(const std::string& flag) const;
  long integer(const std::string& flag) const;

 private:
  std::map<std::string, std::string> values_;
};

class LearnerFactory {
 public:
  virtual ~LearnerFactory() = default;

  virtual std::string_view name() const = 0;
  virtual const std::vector<FlagSpec>& flags() const = 0;

  bool accepts(std::string_view flag) const;

  // Applies defaults, drops rows whose class is missing and fits. Throws
  // LearnerError for invalid options or an empty training set.
  std::unique_ptr<Model> fit(const ParameterAssignment& assignment, const Dataset& ds,
                             std::span<const std::size_t> train_rows) const;

 protected:
  virtual std::unique_ptr<Model> fit_rows(const Options& options, const Dataset& ds,
                                          std::span<const std::size_t> rows) const = 0;
};

}  // namespace flexdm
