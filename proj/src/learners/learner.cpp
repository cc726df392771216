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

#include "learners/learner.hpp"

#include <charconv>
#include <cmath>

namespace flexdm {

const std::string& Options::text(const std::string& flag) const {
  auto it = values_.find(flag);
  if (it == values_.end()) throw LearnerError("option " + flag + " not set");
  return it->second;
}

double Options::number(const std::string& flag) const {
  const std::string& s = text(flag);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    throw LearnerError("invalid value for " + flag + ": '" + s + "'");
  }
  return v;
}

long Options::integer(const std::string& flag) const {
  const std::string& s = text(flag);
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
    throw LearnerError("invalid value for " + flag + ": '" + s + "' (expected an integer)");
  }
  return v;
}

bool LearnerFactory::accepts(std::string_view flag) const {
  for (const auto& f : flags()) {
    if (f.flag == flag) return true;
  }
  return false;
}

std::unique_ptr<Model> LearnerFactory::fit(const ParameterAssignment& assignment,
                                           const Dataset& ds,
                                           std::span<const std::size_t> train_rows) const {
  std::map<std::string, std::string> values;
  for (const auto& f : flags()) values[f.flag] = f.default_value;
  for (const auto& binding : assignment) {
    if (!accepts(binding.flag)) {
      throw LearnerError("unknown parameter " + binding.flag + " for " + std::string(name()));
    }
    values[binding.flag] = binding.value;
  }
  if (!ds.class_attribute().nominal()) {
    throw LearnerError("class attribute '" + ds.class_attribute().name + "' is not nominal");
  }
  std::vector<std::size_t> rows;
  rows.reserve(train_rows.size());
  for (std::size_t r : train_rows) {
    if (!ds.class_missing(r)) rows.push_back(r);
  }
  if (rows.empty()) throw LearnerError("empty training set");
  return fit_rows(Options(std::move(values)), ds, rows);
}

}  // namespace flexdm
