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

#include "learners/factories.hpp"

namespace flexdm {

namespace {

class MajorityModel : public Model {
 public:
  explicit MajorityModel(std::size_t label) : label_(label) {}
  std::size_t predict(const Dataset&, std::size_t) const override { return label_; }

 private:
  std::size_t label_;
};

class ZeroRFactory : public LearnerFactory {
 public:
  std::string_view name() const override { return "zeror"; }
  const std::vector<FlagSpec>& flags() const override {
    static const std::vector<FlagSpec> kFlags;
    return kFlags;
  }

 protected:
  std::unique_ptr<Model> fit_rows(const Options&, const Dataset& ds,
                                  std::span<const std::size_t> rows) const override {
    // Ties go to the first-declared label.
    return std::make_unique<MajorityModel>(argmax_first(class_counts(ds, rows)));
  }
};

}  // namespace

std::shared_ptr<const LearnerFactory> make_zero_r_factory() {
  return std::make_shared<ZeroRFactory>();
}

}  // namespace flexdm
