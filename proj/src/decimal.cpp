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

#include "decimal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace flexdm {

namespace {

__int128 pow10(int n) {
  __int128 r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

std::optional<Decimal> Decimal::parse(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  int scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      any_digit = true;
      if (seen_point) ++scale;
      digits.push_back(c);
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      return std::nullopt;
    }
  }
  if (!any_digit) return std::nullopt;
  // Drop trailing fractional zeros so equal values compare cheaply and stay small.
  while (scale > 0 && digits.back() == '0') {
    digits.pop_back();
    --scale;
  }
  auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  if (digits.size() > 18 || scale > kMaxScale) return std::nullopt;
  std::int64_t units = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), units);
  return Decimal(negative ? -units : units, scale);
}

double Decimal::to_double() const {
  // Round-trips through text so the double is the correctly rounded value.
  return std::strtod(str().c_str(), nullptr);
}

__int128 Decimal::scaled_to(int scale) const {
  return static_cast<__int128>(units_) * pow10(scale - scale_);
}

int Decimal::compare(const Decimal& a, const Decimal& b) {
  int s = std::max(a.scale_, b.scale_);
  __int128 x = a.scaled_to(s);
  __int128 y = b.scaled_to(s);
  return x < y ? -1 : (x > y ? 1 : 0);
}

std::string Decimal::str() const { return format_scaled(units_, scale_); }

std::string format_scaled(__int128 units, int scale) {
  bool negative = units < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-units)
                                   : static_cast<unsigned __int128>(units);
  std::string digits;
  do {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  } while (mag != 0);
  while (static_cast<int>(digits.size()) <= scale) digits.push_back('0');
  std::reverse(digits.begin(), digits.end());
  std::string whole = digits.substr(0, digits.size() - scale);
  std::string frac = digits.substr(digits.size() - scale);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out;
  bool zero = whole == "0" && frac.empty();
  if (negative && !zero) out.push_back('-');
  out += whole;
  if (!frac.empty()) {
    out.push_back('.');
    out += frac;
  }
  return out;
}

std::string format_double(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  std::string s(buf, res.ptr);
  if (s.find_first_of("eE") != std::string::npos) return s;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

}  // namespace flexdm
