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

#include "validate.hpp"

#include <map>

namespace flexdm {

namespace fs = std::filesystem;

std::string Diagnostic::str() const {
  std::string out;
  if (pos.line > 0) {
    out = "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": ";
  }
  out += severity == Severity::kError ? "error: " : "warning: ";
  return out + message;
}

bool SpecCheck::ok() const {
  for (const auto& d : diagnostics) {
    if (d.severity == Diagnostic::Severity::kError) return false;
  }
  return true;
}

fs::path resolve_dataset(const fs::path& base_dir, const std::string& name) {
  fs::path p(name);
  return p.is_absolute() ? p : base_dir / p;
}

SpecCheck check_spec(const ExperimentSpec& spec, const LearnerRegistry& registry,
                     const fs::path& base_dir) {
  SpecCheck check;
  std::map<fs::path, std::shared_ptr<const Dataset>> cache;
  auto error = [&](SourcePos pos, std::string msg) {
    check.diagnostics.push_back({Diagnostic::Severity::kError, pos, std::move(msg)});
  };

  for (const auto& d : spec.datasets) {
    fs::path path = resolve_dataset(base_dir, d.name);
    std::shared_ptr<const Dataset> ds;
    if (auto it = cache.find(path); it != cache.end()) {
      ds = it->second;
    } else {
      std::error_code ec;
      if (!fs::is_regular_file(path, ec)) {
        error(d.pos, "dataset file not found: " + path.string());
      } else {
        try {
          auto loaded = std::make_shared<Dataset>(load_arff(path.string()));
          if (!loaded->class_attribute().nominal()) {
            error(d.pos, "dataset " + path.string() + ": class attribute '" +
                             loaded->class_attribute().name +
                             "' is not nominal (classification only)");
          } else {
            ds = std::move(loaded);
          }
        } catch (const ArffError& e) {
          error(d.pos, e.what());
        }
      }
      cache[path] = ds;
    }
    check.datasets.push_back(ds);

    for (const auto& c : d.classifiers) {
      const LearnerFactory* f = registry.find(c.name);
      if (f == nullptr) {
        error(c.pos, "unknown classifier '" + c.name + "'");
        continue;
      }
      for (const auto& p : c.parameters) {
        if (f->accepts(p.name)) continue;
        std::string accepted;
        for (const auto& flag : f->flags()) {
          accepted += accepted.empty() ? flag.flag : ", " + flag.flag;
        }
        error(p.pos, "unknown parameter " + p.name + " for " + c.name + " (accepts: " +
                         (accepted.empty() ? std::string("none") : accepted) + ")");
      }
    }
  }
  return check;
}

std::vector<Diagnostic> validate_spec(const ExperimentSpec& spec, const LearnerRegistry& registry,
                                      const fs::path& base_dir) {
  return check_spec(spec, registry, base_dir).diagnostics;
}

}  // namespace flexdm
