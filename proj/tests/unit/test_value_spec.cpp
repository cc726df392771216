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
#include "decimal.hpp"
#include "spec.hpp"

using namespace flexdm;

TEST_CASE("decimal parsing and rendering") {
  CHECK(Decimal::parse("0.1")->str() == "0.1");
  CHECK(Decimal::parse("1.0")->str() == "1");
  CHECK(Decimal::parse("-0")->str() == "0");
  CHECK(Decimal::parse(".5")->str() == "0.5");
  CHECK(Decimal::parse("+2.500")->str() == "2.5");
  CHECK(Decimal::parse("-3.25")->str() == "-3.25");
  CHECK_FALSE(Decimal::parse("1e3").has_value());
  CHECK_FALSE(Decimal::parse("nan").has_value());
  CHECK_FALSE(Decimal::parse("").has_value());
  CHECK(*Decimal::parse("0.10") == *Decimal::parse("0.1"));
  CHECK(*Decimal::parse("0.9") < *Decimal::parse("1"));
  CHECK(Decimal::parse("1.25")->scaled_to(4) == 12500);
}

TEST_CASE("format helpers") {
  CHECK(format_scaled(3, 1) == "0.3");
  CHECK(format_scaled(-15, 1) == "-1.5");
  CHECK(format_scaled(100, 2) == "1");
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("value spec examples") {
  auto v = parse_value_spec("[0.1:0.1:1.0]");
  REQUIRE(std::holds_alternative<RangeValue>(v));
  const auto& r = std::get<RangeValue>(v);
  CHECK(r.start.str() == "0.1");
  CHECK(r.step.str() == "0.1");
  CHECK(r.end.str() == "1");

  auto s = parse_value_spec("0.25");
  REQUIRE(std::holds_alternative<ScalarValue>(s));
  CHECK(std::get<ScalarValue>(s).text == "0.25");

  auto l = parse_value_spec("{linear, rbf,poly}");
  REQUIRE(std::holds_alternative<ListValue>(l));
  CHECK(std::get<ListValue>(l).items == std::vector<std::string>{"linear", "rbf", "poly"});

  CHECK_THROWS_WITH_AS(parse_value_spec("[1:0:2]"), doctest::Contains("step must be positive"),
                       SpecError);
  CHECK_THROWS_AS(parse_value_spec("[1:-1:2]"), SpecError);
  CHECK_THROWS_WITH_AS(parse_value_spec("[3:1:2]"), doctest::Contains("start exceeds end"),
                       SpecError);
  CHECK_THROWS_WITH_AS(parse_value_spec("[a:1:2]"), doctest::Contains("not a decimal"),
                       SpecError);
  CHECK_THROWS_AS(parse_value_spec("[1:2]"), SpecError);
  CHECK_THROWS_AS(parse_value_spec("{}"), SpecError);
  CHECK_THROWS_AS(parse_value_spec("{a,,b}"), SpecError);
  CHECK_THROWS_AS(parse_value_spec(""), SpecError);
}

TEST_CASE("value spec rendering round-trips") {
  for (const char* text : {"[0.1:0.1:1]", "[1:2:9]", "{a,b}", "0.25", "weka"}) {
    CHECK(to_string(parse_value_spec(text)) == text);
  }
}

TEST_CASE("parse_value_spec is total over non-empty strings") {
  std::mt19937_64 rng(42);
  const std::string alphabet = "[]{}:,.-+0123456789ab ";
  for (int i = 0; i < 5000; ++i) {
    std::string text;
    std::size_t len = 1 + rng() % 12;
    for (std::size_t j = 0; j < len; ++j) text.push_back(alphabet[rng() % alphabet.size()]);
    int outcomes = 0;
    try {
      ValueSpec v = parse_value_spec(text);
      outcomes += static_cast<int>(v.index() < 3);
    } catch (const SpecError&) {
      ++outcomes;
    }
    CHECK(outcomes == 1);
  }
}

TEST_CASE("test strategy tokens") {
  CHECK(parse_test_strategy("leavexval").kind == TestStrategy::Kind::kLeaveOneOut);
  CHECK(parse_test_strategy("xval").token() == "xval:10");
  CHECK(parse_test_strategy("xval:5").folds == 5);
  CHECK(parse_test_strategy("split").token() == "split:66");
  CHECK(parse_test_strategy("split:80").train_fraction() == doctest::Approx(0.8));
  CHECK(parse_test_strategy("xval").seed == 1);
  CHECK_THROWS_AS(parse_test_strategy("xval:1"), SpecError);
  CHECK_THROWS_AS(parse_test_strategy("xval:x"), SpecError);
  CHECK_THROWS_AS(parse_test_strategy("split:100"), SpecError);
  CHECK_THROWS_AS(parse_test_strategy("holdout"), SpecError);
}
