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

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flexdm {

struct SourcePos {
  long line = 0;
  long column = 0;
};

class XmlError : public std::runtime_error {
 public:
  XmlError(const std::string& what, SourcePos pos)
      : std::runtime_error(what), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;  // document order
  std::vector<std::unique_ptr<XmlElement>> children;
  std::string text;  // concatenated character data directly under this element
  SourcePos pos;

  const std::string* attribute(const std::string& key) const;
};

// Minimal DOM: elements, attributes and character data. DOCTYPE declarations are
// accepted and skipped; external entities are never loaded.
std::unique_ptr<XmlElement> parse_xml(const std::string& text);

std::string xml_escape(const std::string& text);

}  // namespace flexdm
