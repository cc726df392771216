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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "decimal.hpp"
#include "xml_document.hpp"

namespace flexdm {

// Raised for malformed XML, schema violations and bad value specs. Carries the
// source position when one is known (line 0 means "no position").
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& what, SourcePos pos = {})
      : std::runtime_error(what), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct ScalarValue {
  std::string text;
  friend bool operator==(const ScalarValue&, const ScalarValue&) = default;
};

struct RangeValue {
  Decimal start;
  Decimal step;
  Decimal end;
  friend bool operator==(const RangeValue&, const RangeValue&) = default;
};

struct ListValue {
  std::vector<std::string> items;
  friend bool operator==(const ListValue&, const ListValue&) = default;
};

using ValueSpec = std::variant<ScalarValue, RangeValue, ListValue>;

// "[a:s:b]" -> range, "{x,y}" -> list, anything else -> scalar (verbatim).
ValueSpec parse_value_spec(const std::string& text);
std::string to_string(const ValueSpec& value);

struct TestStrategy {
  enum class Kind { kLeaveOneOut, kKFold, kPercentageSplit };

  Kind kind = Kind::kKFold;
  int folds = 10;                    // kKFold only
  Decimal train_percent{66, 0};      // kPercentageSplit only, in (0, 100)
  std::uint64_t seed = 1;

  double train_fraction() const { return train_percent.to_double() / 100.0; }

  // Canonical token used in job strings: "leavexval", "xval:10", "split:66".
  std::string token() const;

  friend bool operator==(const TestStrategy&, const TestStrategy&) = default;
};

// Accepts "leavexval", "xval", "xval:k", "split", "split:pct".
TestStrategy parse_test_strategy(const std::string& token);

struct ResultOptions {
  bool include_matrix = false;
  std::string token() const { return include_matrix ? "matrix" : "accuracy"; }
  friend bool operator==(const ResultOptions&, const ResultOptions&) = default;
};

struct ParameterSpec {
  std::string name;
  ValueSpec value;
  SourcePos pos;  // not part of equality

  friend bool operator==(const ParameterSpec& a, const ParameterSpec& b) {
    return a.name == b.name && a.value == b.value;
  }
};

struct ClassifierSpec {
  std::string name;
  std::vector<ParameterSpec> parameters;
  SourcePos pos;

  friend bool operator==(const ClassifierSpec& a, const ClassifierSpec& b) {
    return a.name == b.name && a.parameters == b.parameters;
  }
};

struct DatasetSpec {
  std::string name;
  TestStrategy test;
  ResultOptions results;
  std::vector<ClassifierSpec> classifiers;
  SourcePos pos;

  friend bool operator==(const DatasetSpec& a, const DatasetSpec& b) {
    return a.name == b.name && a.test == b.test && a.results == b.results &&
           a.classifiers == b.classifiers;
  }
};

struct ExperimentSpec {
  std::vector<DatasetSpec> datasets;
  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

ExperimentSpec parse_spec(const std::string& xml_text);

// Canonical XML with every default written out; parse_spec(to_xml(s)) == s.
std::string to_xml(const ExperimentSpec& spec);

}  // namespace flexdm
