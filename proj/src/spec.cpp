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

#include "spec.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace flexdm {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string where(SourcePos pos) {
  return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

[[noreturn]] void fail(const std::string& msg, SourcePos pos) {
  throw SpecError(pos.line > 0 ? where(pos) + ": " + msg : msg, pos);
}

Decimal range_component(std::string_view part) {
  std::string t = trim(part);
  auto d = Decimal::parse(t);
  if (!d) throw SpecError("range component '" + t + "' is not a decimal");
  return *d;
}

}  // namespace

ValueSpec parse_value_spec(const std::string& text) {
  if (text.empty()) throw SpecError("empty value spec");
  if (text.front() == '[') {
    if (text.back() != ']' || text.size() < 2) {
      throw SpecError("unterminated range '" + text + "'");
    }
    std::string_view body(text.data() + 1, text.size() - 2);
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i == body.size() || body[i] == ':') {
        parts.push_back(body.substr(start, i - start));
        start = i + 1;
      }
    }
    if (parts.size() != 3) {
      throw SpecError("range '" + text + "' must have the form [start:step:end]");
    }
    RangeValue r{range_component(parts[0]), range_component(parts[1]),
                 range_component(parts[2])};
    if (r.step <= Decimal{}) {
      throw SpecError("range '" + text + "': step must be positive");
    }
    if (r.end < r.start) {
      throw SpecError("range '" + text + "': start exceeds end");
    }
    return r;
  }
  if (text.front() == '{') {
    if (text.back() != '}' || text.size() < 2) {
      throw SpecError("unterminated list '" + text + "'");
    }
    std::string_view body(text.data() + 1, text.size() - 2);
    if (trim(body).empty()) throw SpecError("empty list '" + text + "'");
    ListValue l;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i == body.size() || body[i] == ',') {
        std::string item = trim(body.substr(start, i - start));
        if (item.empty()) throw SpecError("empty element in list '" + text + "'");
        l.items.push_back(std::move(item));
        start = i + 1;
      }
    }
    return l;
  }
  return ScalarValue{text};
}

std::string to_string(const ValueSpec& value) {
  if (auto* s = std::get_if<ScalarValue>(&value)) return s->text;
  if (auto* r = std::get_if<RangeValue>(&value)) {
    return "[" + r->start.str() + ":" + r->step.str() + ":" + r->end.str() + "]";
  }
  const auto& l = std::get<ListValue>(value);
  std::string out = "{";
  for (std::size_t i = 0; i < l.items.size(); ++i) {
    if (i) out.push_back(',');
    out += l.items[i];
  }
  return out + "}";
}

std::string TestStrategy::token() const {
  switch (kind) {
    case Kind::kLeaveOneOut: return "leavexval";
    case Kind::kKFold: return "xval:" + std::to_string(folds);
    case Kind::kPercentageSplit: return "split:" + train_percent.str();
  }
  return {};
}

TestStrategy parse_test_strategy(const std::string& token) {
  TestStrategy t;
  auto colon = token.find(':');
  std::string head = token.substr(0, colon);
  std::string arg = colon == std::string::npos ? std::string() : token.substr(colon + 1);
  bool has_arg = colon != std::string::npos;
  if (head == "leavexval" && !has_arg) {
    t.kind = TestStrategy::Kind::kLeaveOneOut;
    return t;
  }
  if (head == "xval") {
    t.kind = TestStrategy::Kind::kKFold;
    if (has_arg) {
      int k = 0;
      auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
      if (ec != std::errc() || p != arg.data() + arg.size() || k < 2) {
        throw SpecError("invalid fold count in test strategy '" + token +
                        "' (need an integer >= 2)");
      }
      t.folds = k;
    }
    return t;
  }
  if (head == "split") {
    t.kind = TestStrategy::Kind::kPercentageSplit;
    if (has_arg) {
      auto pct = Decimal::parse(arg);
      if (!pct || *pct <= Decimal{} || Decimal{100, 0} <= *pct) {
        throw SpecError("invalid train percentage in test strategy '" + token +
                        "' (need 0 < pct < 100)");
      }
      t.train_percent = *pct;
    }
    return t;
  }
  throw SpecError("unknown test strategy '" + token +
                  "' (expected leavexval, xval[:k] or split[:pct])");
}

namespace {

void check_attributes(const XmlElement& el, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : el.attributes) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail("unknown attribute '" + key + "' on <" + el.name + ">", el.pos);
  }
}

const std::string& required(const XmlElement& el, const char* key) {
  const std::string* v = el.attribute(key);
  if (v == nullptr) {
    fail(el.name + " missing required attribute '" + std::string(key) + "'", el.pos);
  }
  return *v;
}

void check_no_text(const XmlElement& el) {
  if (!trim(el.text).empty()) {
    fail("unexpected text inside <" + el.name + ">", el.pos);
  }
}

const XmlElement& expect_child(const XmlElement& child, const char* name,
                               const XmlElement& parent) {
  if (child.name != name) {
    fail("unknown element <" + child.name + "> inside <" + parent.name + ">", child.pos);
  }
  return child;
}

ParameterSpec parse_parameter(const XmlElement& el) {
  check_attributes(el, {"name", "value"});
  check_no_text(el);
  if (!el.children.empty()) {
    fail("unknown element <" + el.children.front()->name + "> inside <parameter>",
         el.children.front()->pos);
  }
  ParameterSpec p;
  p.pos = el.pos;
  p.name = required(el, "name");
  const std::string& value = required(el, "value");
  if (p.name.size() < 2 || p.name.front() != '-') {
    fail("parameter name '" + p.name + "' must look like -X", el.pos);
  }
  try {
    p.value = parse_value_spec(value);
  } catch (const SpecError& e) {
    fail("parameter " + p.name + ": " + e.what(), el.pos);
  }
  return p;
}

ClassifierSpec parse_classifier(const XmlElement& el) {
  check_attributes(el, {"name"});
  check_no_text(el);
  ClassifierSpec c;
  c.pos = el.pos;
  c.name = required(el, "name");
  if (c.name.empty()) fail("classifier name must not be empty", el.pos);
  std::set<std::string> seen;
  for (const auto& child : el.children) {
    auto p = parse_parameter(expect_child(*child, "parameter", el));
    if (!seen.insert(p.name).second) {
      fail("duplicate parameter '" + p.name + "' in classifier " + c.name, child->pos);
    }
    c.parameters.push_back(std::move(p));
  }
  return c;
}

DatasetSpec parse_dataset(const XmlElement& el) {
  check_attributes(el, {"name", "test", "results"});
  check_no_text(el);
  DatasetSpec d;
  d.pos = el.pos;
  d.name = required(el, "name");
  if (d.name.empty()) fail("dataset name must not be empty", el.pos);
  if (const auto* test = el.attribute("test")) {
    try {
      d.test = parse_test_strategy(*test);
    } catch (const SpecError& e) {
      fail(e.what(), el.pos);
    }
  }
  if (const auto* results = el.attribute("results")) {
    if (*results == "matrix") {
      d.results.include_matrix = true;
    } else if (*results != "accuracy") {
      fail("unknown results option '" + *results + "' (expected accuracy or matrix)",
           el.pos);
    }
  }
  for (const auto& child : el.children) {
    d.classifiers.push_back(parse_classifier(expect_child(*child, "classifier", el)));
  }
  if (d.classifiers.empty()) {
    fail("dataset " + d.name + " requires at least one classifier", el.pos);
  }
  return d;
}

}  // namespace

ExperimentSpec parse_spec(const std::string& xml_text) {
  std::unique_ptr<XmlElement> root;
  try {
    root = parse_xml(xml_text);
  } catch (const XmlError& e) {
    fail(std::string("malformed XML: ") + e.what(), e.pos());
  }
  if (root->name != "flexdm") {
    fail("unknown root element <" + root->name + "> (expected <flexdm>)", root->pos);
  }
  check_attributes(*root, {});
  check_no_text(*root);
  ExperimentSpec spec;
  for (const auto& child : root->children) {
    spec.datasets.push_back(parse_dataset(expect_child(*child, "dataset", *root)));
  }
  if (spec.datasets.empty()) fail("at least one dataset required", root->pos);
  return spec;
}

std::string to_xml(const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "<!DOCTYPE flexdm SYSTEM \"flexdm.dtd\">\n<flexdm>\n";
  for (const auto& d : spec.datasets) {
    out << "  <dataset name=\"" << xml_escape(d.name) << "\" test=\"" << d.test.token()
        << "\" results=\"" << d.results.token() << "\">\n";
    for (const auto& c : d.classifiers) {
      out << "    <classifier name=\"" << xml_escape(c.name) << "\"";
      if (c.parameters.empty()) {
        out << "/>\n";
        continue;
      }
      out << ">\n";
      for (const auto& p : c.parameters) {
        out << "      <parameter name=\"" << xml_escape(p.name) << "\" value=\""
            << xml_escape(to_string(p.value)) << "\"/>\n";
      }
      out << "    </classifier>\n";
    }
    out << "  </dataset>\n";
  }
  out << "</flexdm>\n";
  return out.str();
}

}  // namespace flexdm
