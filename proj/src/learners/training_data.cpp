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

#include "learners/training_data.hpp"

namespace flexdm {

FeatureEncoder::FeatureEncoder(const Dataset& ds, std::span<const std::size_t> train_rows)
    : means_(ds.num_attributes(), 0.0) {
  for (std::size_t a = 0; a < ds.num_attributes(); ++a) {
    if (ds.attributes[a].nominal()) continue;
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t r : train_rows) {
      if (ds.missing(r, a)) continue;
      sum += ds.cell(r, a);
      ++n;
    }
    means_[a] = n > 0 ? sum / static_cast<double>(n) : 0.0;
  }
}

}  // namespace flexdm
