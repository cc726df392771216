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
#include <optional>
#include <string>
#include <string_view>

namespace flexdm {

// Exact base-10 number: value = units / 10^scale.
// Range endpoints are kept exact so grid expansion never drifts.
class Decimal {
 public:
  static constexpr int kMaxScale = 18;

  constexpr Decimal() = default;
  constexpr Decimal(std::int64_t units, int scale) : units_(units), scale_(scale) {}

  // Accepts [+-]digits[.digits] or [+-].digits. No exponents, no inf/nan.
  static std::optional<Decimal> parse(std::string_view text);

  std::int64_t units() const { return units_; }
  int scale() const { return scale_; }
  double to_double() const;

  // Value scaled to 10^scale as an exact integer. scale must be >= this->scale().
  __int128 scaled_to(int scale) const;

  // Shortest exact rendering: trailing fractional zeros stripped, "1.0" -> "1", "-0" -> "0".
  std::string str() const;

  friend bool operator==(const Decimal& a, const Decimal& b) { return compare(a, b) == 0; }
  friend bool operator<(const Decimal& a, const Decimal& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Decimal& a, const Decimal& b) { return compare(a, b) <= 0; }
  static int compare(const Decimal& a, const Decimal& b);

 private:
  std::int64_t units_ = 0;
  int scale_ = 0;
};

// Renders units / 10^scale for an arbitrary 128-bit scaled integer.
std::string format_scaled(__int128 units, int scale);

// Shortest round-trip rendering of a double with trailing zeros stripped.
std::string format_double(double value);

}  // namespace flexdm
