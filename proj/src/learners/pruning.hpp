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

namespace flexdm {

// Inverse standard normal CDF. Throws std::domain_error unless 0 < p < 1.
double normal_quantile(double p);

// Upper confidence limit on a leaf's true error rate after observing `errors`
// misclassifications among `count` rows. Smaller confidence -> larger bound.
//   errors == 0 : 1 - confidence^(1/count)
//   otherwise   : upper end of the normal-approximation interval with
//                 z = normal_quantile(1 - confidence), clamped to [f, 1].
// confidence >= 0.5 gives z <= 0, i.e. the observed rate f itself.
double pessimistic_error_upper_bound(double errors, double count, double confidence);

// count * bound, returned as exactly `errors` whenever the bound is the observed rate.
double pessimistic_error_count(double errors, double count, double confidence);

}  // namespace flexdm
