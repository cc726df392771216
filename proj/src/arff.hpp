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

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flexdm {

class ArffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Attribute {
  enum class Kind { kNumeric, kNominal };

  std::string name;
  Kind kind = Kind::kNumeric;
  std::vector<std::string> labels;  // kNominal only, declaration order

  bool nominal() const { return kind == Kind::kNominal; }
  friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Value {
  enum class Kind { kNumber, kLabel, kMissing };
  Kind kind = Kind::kMissing;
  double number = 0.0;
  std::size_t label = 0;
};

// Row-major table. A cell holds the number itself for numeric attributes and the
// label index for nominal ones; NaN marks a missing value in either case.
struct Dataset {
  std::string relation;
  std::vector<Attribute> attributes;
  std::vector<double> cells;
  std::size_t class_index = 0;

  std::size_t num_attributes() const { return attributes.size(); }
  std::size_t num_rows() const {
    return attributes.empty() ? 0 : cells.size() / attributes.size();
  }
  double cell(std::size_t row, std::size_t attr) const {
    return cells[row * attributes.size() + attr];
  }
  bool missing(std::size_t row, std::size_t attr) const { return std::isnan(cell(row, attr)); }
  std::size_t label(std::size_t row, std::size_t attr) const {
    return static_cast<std::size_t>(cell(row, attr));
  }
  Value value(std::size_t row, std::size_t attr) const;

  const Attribute& class_attribute() const { return attributes[class_index]; }
  std::size_t num_classes() const { return class_attribute().labels.size(); }
  bool class_missing(std::size_t row) const { return missing(row, class_index); }
  std::size_t class_label(std::size_t row) const { return label(row, class_index); }

  friend bool operator==(const Dataset& a, const Dataset& b);
};

// Numeric and nominal attributes only; the class is the last attribute.
Dataset parse_arff(const std::string& text);
Dataset load_arff(const std::string& path);

// Debug writer; parse_arff(write_arff(ds)) == ds.
std::string write_arff(const Dataset& ds);

// Histogram of non-missing class labels over the selected rows.
std::vector<std::size_t> class_counts(const Dataset& ds, std::span<const std::size_t> rows);
std::vector<std::size_t> class_counts(const Dataset& ds);

std::size_t argmax_first(std::span<const std::size_t> counts);

}  // namespace flexdm
