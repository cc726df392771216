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

#include "arff.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "decimal.hpp"

namespace flexdm {

Value Dataset::value(std::size_t row, std::size_t attr) const {
  Value v;
  if (missing(row, attr)) return v;
  if (attributes[attr].nominal()) {
    v.kind = Value::Kind::kLabel;
    v.label = label(row, attr);
  } else {
    v.kind = Value::Kind::kNumber;
    v.number = cell(row, attr);
  }
  return v;
}

bool operator==(const Dataset& a, const Dataset& b) {
  if (a.relation != b.relation || a.attributes != b.attributes ||
      a.class_index != b.class_index || a.cells.size() != b.cells.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    bool na = std::isnan(a.cells[i]);
    bool nb = std::isnan(b.cells[i]);
    if (na != nb || (!na && a.cells[i] != b.cells[i])) return false;
  }
  return true;
}

namespace {

struct Token {
  std::string text;
  bool quoted = false;
};

class LineError {
 public:
  static ArffError at(std::size_t line, const std::string& msg) {
    return ArffError("line " + std::to_string(line) + ": " + msg);
  }
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Cuts a '%' comment that is not inside quotes.
std::string strip_comment(const std::string& line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quote) {
      if (c == '\\') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == '%') {
      return line.substr(0, i);
    }
  }
  return line;
}

// Reads one possibly quoted token starting at pos; stops at whitespace or any of
// the given delimiters when unquoted.
Token read_token(const std::string& s, std::size_t& pos, std::string_view delims,
                 std::size_t line_no) {
  while (pos < s.size() && is_space(s[pos])) ++pos;
  Token t;
  if (pos < s.size() && (s[pos] == '\'' || s[pos] == '"')) {
    char quote = s[pos++];
    t.quoted = true;
    while (true) {
      if (pos >= s.size()) throw LineError::at(line_no, "unterminated quoted token");
      char c = s[pos++];
      if (c == '\\' && pos < s.size()) {
        t.text.push_back(s[pos++]);
      } else if (c == quote) {
        break;
      } else {
        t.text.push_back(c);
      }
    }
    return t;
  }
  while (pos < s.size() && !is_space(s[pos]) && delims.find(s[pos]) == std::string_view::npos) {
    t.text.push_back(s[pos++]);
  }
  return t;
}

// Splits a comma-separated list (data row or nominal label set), honoring quotes.
std::vector<Token> split_list(const std::string& s, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (true) {
    Token t = read_token(s, pos, ",", line_no);
    if (!t.quoted) {
      // Unquoted values may contain inner spaces, e.g. "a b"; keep reading to the comma.
      while (pos < s.size() && s[pos] != ',') t.text.push_back(s[pos++]);
      while (!t.text.empty() && is_space(t.text.back())) t.text.pop_back();
    } else {
      while (pos < s.size() && is_space(s[pos])) ++pos;
      if (pos < s.size() && s[pos] != ',') {
        throw LineError::at(line_no, "unexpected text after quoted value");
      }
    }
    out.push_back(std::move(t));
    if (pos >= s.size()) break;
    ++pos;  // comma
  }
  return out;
}

Attribute parse_attribute(const std::string& rest, std::size_t line_no) {
  std::size_t pos = 0;
  Attribute a;
  Token name = read_token(rest, pos, "{", line_no);
  if (name.text.empty()) throw LineError::at(line_no, "@attribute without a name");
  a.name = name.text;
  while (pos < rest.size() && is_space(rest[pos])) ++pos;
  std::string type = rest.substr(pos);
  while (!type.empty() && is_space(type.back())) type.pop_back();
  if (!type.empty() && type.front() == '{') {
    if (type.back() != '}') throw LineError::at(line_no, "unterminated nominal label set");
    a.kind = Attribute::Kind::kNominal;
    std::set<std::string> seen;
    for (auto& t : split_list(type.substr(1, type.size() - 2), line_no)) {
      if (t.text.empty()) throw LineError::at(line_no, "empty nominal label");
      if (!seen.insert(t.text).second) {
        throw LineError::at(line_no, "duplicate nominal label '" + t.text + "'");
      }
      a.labels.push_back(t.text);
    }
    return a;
  }
  std::string kind = lower(type);
  if (kind == "numeric" || kind == "real" || kind == "integer") {
    a.kind = Attribute::Kind::kNumeric;
    return a;
  }
  if (kind == "string" || kind.rfind("date", 0) == 0 || kind == "relational") {
    throw LineError::at(line_no, "unsupported ARFF feature: " + kind + " attribute '" +
                                     a.name + "'");
  }
  throw LineError::at(line_no, "unknown attribute type '" + type + "'");
}

double parse_number(const std::string& text, std::size_t line_no) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last || !std::isfinite(v)) {
    throw LineError::at(line_no, "invalid numeric value '" + text + "'");
  }
  return v;
}

}  // namespace

Dataset parse_arff(const std::string& text) {
  Dataset ds;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool in_data = false;
  bool seen_relation = false;
  std::set<std::string> names;
  const double kMissing = std::numeric_limits<double>::quiet_NaN();

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    while (!line.empty() && is_space(line.back())) line.pop_back();

    if (!in_data) {
      if (line.front() != '@') throw LineError::at(line_no, "expected a header declaration");
      std::size_t pos = 1;
      while (pos < line.size() && !is_space(line[pos])) ++pos;
      std::string keyword = lower(line.substr(1, pos - 1));
      std::string rest = line.substr(pos);
      if (keyword == "relation") {
        std::size_t p = 0;
        ds.relation = read_token(rest, p, "", line_no).text;
        seen_relation = true;
      } else if (keyword == "attribute") {
        Attribute a = parse_attribute(rest, line_no);
        if (!names.insert(a.name).second) {
          throw LineError::at(line_no, "duplicate attribute '" + a.name + "'");
        }
        ds.attributes.push_back(std::move(a));
      } else if (keyword == "data") {
        if (ds.attributes.empty()) throw LineError::at(line_no, "@data before any @attribute");
        in_data = true;
      } else {
        throw LineError::at(line_no, "unknown header keyword '@" + keyword + "'");
      }
      continue;
    }

    if (line.front() == '{') {
      throw LineError::at(line_no, "unsupported ARFF feature: sparse instance");
    }
    auto tokens = split_list(line, line_no);
    if (tokens.size() != ds.attributes.size()) {
      throw LineError::at(line_no, "expected " + std::to_string(ds.attributes.size()) +
                                       " values, found " + std::to_string(tokens.size()));
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      const Attribute& a = ds.attributes[i];
      if (!t.quoted && t.text == "?") {
        ds.cells.push_back(kMissing);
      } else if (a.nominal()) {
        auto it = std::find(a.labels.begin(), a.labels.end(), t.text);
        if (it == a.labels.end()) {
          throw ArffError("undeclared nominal label '" + t.text + "' (line " +
                          std::to_string(line_no) + ")");
        }
        ds.cells.push_back(static_cast<double>(it - a.labels.begin()));
      } else {
        ds.cells.push_back(parse_number(t.text, line_no));
      }
    }
  }
  if (!in_data) {
    throw ArffError(ds.attributes.empty() && !seen_relation ? "not an ARFF file"
                                                           : "missing @data section");
  }
  ds.class_index = ds.attributes.size() - 1;
  return ds;
}

Dataset load_arff(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArffError("cannot open dataset '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_arff(ss.str());
  } catch (const ArffError& e) {
    throw ArffError(path + ": " + e.what());
  }
}

namespace {

std::string quote_if_needed(const std::string& s) {
  bool plain = !s.empty() && s != "?" &&
               s.find_first_of(" \t,{}'\"%\\") == std::string::npos;
  if (plain) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "'";
}

}  // namespace

std::string write_arff(const Dataset& ds) {
  std::ostringstream out;
  out << "@relation " << quote_if_needed(ds.relation) << "\n\n";
  for (const auto& a : ds.attributes) {
    out << "@attribute " << quote_if_needed(a.name) << ' ';
    if (a.nominal()) {
      out << '{';
      for (std::size_t i = 0; i < a.labels.size(); ++i) {
        if (i) out << ',';
        out << quote_if_needed(a.labels[i]);
      }
      out << '}';
    } else {
      out << "numeric";
    }
    out << '\n';
  }
  out << "\n@data\n";
  for (std::size_t r = 0; r < ds.num_rows(); ++r) {
    for (std::size_t c = 0; c < ds.num_attributes(); ++c) {
      if (c) out << ',';
      if (ds.missing(r, c)) {
        out << '?';
      } else if (ds.attributes[c].nominal()) {
        out << quote_if_needed(ds.attributes[c].labels[ds.label(r, c)]);
      } else {
        out << format_double(ds.cell(r, c));
      }
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::size_t> class_counts(const Dataset& ds, std::span<const std::size_t> rows) {
  if (!ds.class_attribute().nominal()) throw ArffError("class attribute is not nominal");
  std::vector<std::size_t> counts(ds.num_classes(), 0);
  for (std::size_t r : rows) {
    if (!ds.class_missing(r)) ++counts[ds.class_label(r)];
  }
  return counts;
}

std::vector<std::size_t> class_counts(const Dataset& ds) {
  if (!ds.class_attribute().nominal()) throw ArffError("class attribute is not nominal");
  std::vector<std::size_t> counts(ds.num_classes(), 0);
  for (std::size_t r = 0; r < ds.num_rows(); ++r) {
    if (!ds.class_missing(r)) ++counts[ds.class_label(r)];
  }
  return counts;
}

std::size_t argmax_first(std::span<const std::size_t> counts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  return best;
}

}  // namespace flexdm
