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

#include "arff.hpp"

namespace flexdm {

// Missing-value policy shared by all learners. Numeric gaps take the mean of the
// training rows; nominal gaps become one extra category (index == label count).
// Fitted on training rows only, so test rows never leak into it.
class FeatureEncoder {
 public:
  FeatureEncoder() = default;
  FeatureEncoder(const Dataset& ds, std::span<const std::size_t> train_rows);

  double numeric(const Dataset& ds, std::size_t row, std::size_t attr) const {
    return ds.missing(row, attr) ? means_[attr] : ds.cell(row, attr);
  }
  std::size_t category(const Dataset& ds, std::size_t row, std::size_t attr) const {
    return ds.missing(row, attr) ? ds.attributes[attr].labels.size() : ds.label(row, attr);
  }
  static std::size_t num_categories(const Dataset& ds, std::size_t attr) {
    return ds.attributes[attr].labels.size() + 1;
  }

 private:
  std::vector<double> means_;
};

}  // namespace flexdm
