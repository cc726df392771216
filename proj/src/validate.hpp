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

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "arff.hpp"
#include "learners/registry.hpp"
#include "spec.hpp"

namespace flexdm {

struct Diagnostic {
  enum class Severity { kError, kWarning };

  Severity severity = Severity::kError;
  SourcePos pos;  // line 0: no position
  std::string message;

  // "line 4, column 5: error: unknown classifier 'x'"
  std::string str() const;
};

struct SpecCheck {
  std::vector<Diagnostic> diagnostics;
  // Aligned with spec.datasets; null where the file could not be loaded.
  std::vector<std::shared_ptr<const Dataset>> datasets;

  bool ok() const;  // no error-severity diagnostics
};

// Relative dataset names resolve against base_dir (the spec file's directory).
std::filesystem::path resolve_dataset(const std::filesystem::path& base_dir,
                                      const std::string& name);

// Loads every dataset once and checks classifier names, parameter flags and
// class attributes.
SpecCheck check_spec(const ExperimentSpec& spec, const LearnerRegistry& registry,
                     const std::filesystem::path& base_dir);

std::vector<Diagnostic> validate_spec(const ExperimentSpec& spec, const LearnerRegistry& registry,
                                      const std::filesystem::path& base_dir);

}  // namespace flexdm
