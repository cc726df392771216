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

#include <random>

#include "doctest.h"
#include "spec.hpp"
#include "test_support.hpp"

using namespace flexdm;
using flexdm::testing::health_path;
using flexdm::testing::read_file;

namespace {

std::string error_of(const std::string& xml) {
  try {
    parse_spec(xml);
  } catch (const SpecError& e) {
    return e.what();
  }
  return {};
}

std::string random_name(std::mt19937_64& rng) {
  static const std::string chars = "abcdefgh_.&<>\"'";
  std::string s = "n";
  std::size_t len = 1 + rng() % 6;
  for (std::size_t i = 0; i < len; ++i) s.push_back(chars[rng() % chars.size()]);
  return s;
}

ValueSpec random_value(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: {
      std::int64_t a = static_cast<std::int64_t>(rng() % 1000);
      std::int64_t s = 1 + static_cast<std::int64_t>(rng() % 50);
      std::int64_t b = a + static_cast<std::int64_t>(rng() % 500);
      int scale = static_cast<int>(rng() % 4);
      return RangeValue{Decimal(a, scale), Decimal(s, scale), Decimal(b, scale)};
    }
    case 1: {
      ListValue l;
      std::size_t n = 1 + rng() % 4;
      for (std::size_t i = 0; i < n; ++i) l.items.push_back(random_name(rng));
      return l;
    }
    default:
      return ScalarValue{random_name(rng)};
  }
}

ExperimentSpec random_spec(std::mt19937_64& rng) {
  ExperimentSpec spec;
  std::size_t nd = 1 + rng() % 3;
  for (std::size_t d = 0; d < nd; ++d) {
    DatasetSpec ds;
    ds.name = random_name(rng) + ".arff";
    switch (rng() % 3) {
      case 0: ds.test = parse_test_strategy("leavexval"); break;
      case 1: ds.test = parse_test_strategy("xval:" + std::to_string(2 + rng() % 9)); break;
      default: ds.test = parse_test_strategy("split:" + std::to_string(1 + rng() % 98)); break;
    }
    ds.results.include_matrix = rng() % 2;
    std::size_t nc = 1 + rng() % 3;
    for (std::size_t c = 0; c < nc; ++c) {
      ClassifierSpec cs;
      cs.name = random_name(rng);
      std::size_t np = rng() % 3;
      for (std::size_t p = 0; p < np; ++p) {
        cs.parameters.push_back({"-" + std::string(1, static_cast<char>('A' + p)),
                                 random_value(rng), {}});
      }
      ds.classifiers.push_back(std::move(cs));
    }
    spec.datasets.push_back(std::move(ds));
  }
  return spec;
}

}  // namespace

TEST_CASE("health example document") {
  std::string xml = read_file(health_path("health.xml"));
  ExperimentSpec spec = parse_spec(xml);
  REQUIRE(spec.datasets.size() == 1);
  const auto& d = spec.datasets[0];
  CHECK(d.name == "health.arff");
  CHECK(d.test.kind == TestStrategy::Kind::kLeaveOneOut);
  CHECK(d.results.include_matrix);
  REQUIRE(d.classifiers.size() == 2);
  CHECK(d.classifiers[0].name == "weka.classifiers.trees.J48");
  CHECK(d.classifiers[1].name == "weka.classifiers.rules.PART");
  for (const auto& c : d.classifiers) {
    REQUIRE(c.parameters.size() == 1);
    CHECK(c.parameters[0].name == "-C");
    CHECK(c.parameters[0].value == parse_value_spec("[0.1:0.1:1.0]"));
  }
}

TEST_CASE("health example document is 11 lines and 321 non-space characters") {
  std::string xml = read_file(health_path("health.xml"));
  std::size_t lines = 0, chars = 0;
  for (char c : xml) {
    if (c == '\n') ++lines;
    else if (!std::isspace(static_cast<unsigned char>(c))) ++chars;
  }
  if (!xml.empty() && xml.back() != '\n') ++lines;
  CHECK(lines == 11);
  CHECK(chars == 321);
}

TEST_CASE("all attributes defaulted") {
  auto spec = parse_spec(R"(<flexdm><dataset name="d.arff"><classifier name="zeror"/></dataset></flexdm>)");
  REQUIRE(spec.datasets.size() == 1);
  const auto& d = spec.datasets[0];
  CHECK(d.test.kind == TestStrategy::Kind::kKFold);
  CHECK(d.test.folds == 10);
  CHECK(d.test.seed == 1);
  CHECK_FALSE(d.results.include_matrix);
  REQUIRE(d.classifiers.size() == 1);
  CHECK(d.classifiers[0].parameters.empty());
}

TEST_CASE("schema violations name the offender") {
  CHECK(error_of(R"(<flexdm><dataset name="d"><classifier name="z"><parameter value="x"/></classifier></dataset></flexdm>)")
            .find("parameter missing required attribute 'name'") != std::string::npos);
  CHECK(error_of(R"(<flexdm><dataset name="d"><classifier name="z"/><bogus/></dataset></flexdm>)")
            .find("unknown element <bogus>") != std::string::npos);
  CHECK(error_of(R"(<flexdm><dataset name="d" color="red"><classifier name="z"/></dataset></flexdm>)")
            .find("unknown attribute 'color'") != std::string::npos);
  CHECK(error_of("<flexdm/>").find("at least one dataset required") != std::string::npos);
  CHECK(error_of("<flexdm></flexdm>").find("at least one dataset required") != std::string::npos);
  CHECK(error_of(R"(<flexdm><dataset name="d"/></flexdm>)")
            .find("requires at least one classifier") != std::string::npos);
  CHECK(error_of(R"(<flexdm><dataset name="d"><classifier name="z"><parameter name="-C" value="1"/><parameter name="-C" value="2"/></classifier></dataset></flexdm>)")
            .find("duplicate parameter '-C'") != std::string::npos);
  CHECK(error_of(R"(<experiment/>)").find("unknown root element") != std::string::npos);
  CHECK(error_of(R"(<flexdm><dataset name="d" results="all"><classifier name="z"/></dataset></flexdm>)")
            .find("unknown results option") != std::string::npos);
  CHECK(error_of(R"(<flexdm><dataset name="d"><classifier name="z"><parameter name="-C" value="[1:0:2]"/></classifier></dataset></flexdm>)")
            .find("step must be positive") != std::string::npos);
}

TEST_CASE("malformed XML reports line and column") {
  std::string xml = "<flexdm>\n  <dataset name=\"d\">\n    <classifier name=\"z\">\n  </dataset>\n</flexdm>\n";
  try {
    parse_spec(xml);
    FAIL("expected a parse error");
  } catch (const SpecError& e) {
    CHECK(e.pos().line == 4);
    CHECK(e.pos().column > 0);
    CHECK(std::string(e.what()).rfind("line 4, column ", 0) == 0);
  }
}

TEST_CASE("schema errors carry the element position") {
  std::string xml = "<flexdm>\n<dataset name=\"d\">\n<classifier name=\"z\">\n<param name=\"-C\" value=\"1\"/>\n</classifier>\n</dataset>\n</flexdm>\n";
  try {
    parse_spec(xml);
    FAIL("expected a schema error");
  } catch (const SpecError& e) {
    CHECK(e.pos().line == 4);
  }
}

TEST_CASE("default injection is idempotent") {
  auto implicit = parse_spec(R"(<flexdm><dataset name="d.arff"><classifier name="j48"><parameter name="-C" value="0.25"/></classifier></dataset></flexdm>)");
  auto explicit_ = parse_spec(R"(<flexdm><dataset name="d.arff" test="xval:10" results="accuracy"><classifier name="j48"><parameter name="-C" value="0.25"/></classifier></dataset></flexdm>)");
  auto bare_xval = parse_spec(R"(<flexdm><dataset name="d.arff" test="xval"><classifier name="j48"><parameter name="-C" value="0.25"/></classifier></dataset></flexdm>)");
  CHECK(implicit == explicit_);
  CHECK(implicit == bare_xval);
}

TEST_CASE("canonical XML round-trips the health example") {
  auto spec = parse_spec(read_file(health_path("health.xml")));
  std::string xml = to_xml(spec);
  CHECK(parse_spec(xml) == spec);
  CHECK(to_xml(parse_spec(xml)) == xml);
}

TEST_CASE("canonical XML round-trips random specs") {
  std::mt19937_64 rng(2026);
  for (int i = 0; i < 300; ++i) {
    ExperimentSpec spec = random_spec(rng);
    std::string xml = to_xml(spec);
    ExperimentSpec back = parse_spec(xml);
    REQUIRE(back == spec);
  }
}

TEST_CASE("shipped DTD is the reconstructed schema") {
  std::string expected =
      "<!ELEMENT flexdm (dataset+)>\n"
      "<!ELEMENT dataset (classifier+)>\n"
      "<!ATTLIST dataset name CDATA #REQUIRED test CDATA \"xval\" results CDATA \"accuracy\">\n"
      "<!ELEMENT classifier (parameter*)>\n"
      "<!ATTLIST classifier name CDATA #REQUIRED>\n"
      "<!ELEMENT parameter EMPTY>\n"
      "<!ATTLIST parameter name CDATA #REQUIRED value CDATA #REQUIRED>\n";
  CHECK(read_file(FLEXDM_DTD_PATH) == expected);
  CHECK(read_file(health_path("flexdm.dtd")) == expected);
}
