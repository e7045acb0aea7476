// Copyright 2026 The restoracle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "restoracle/json_path.h"

#include <random>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "restoracle/errors.h"

namespace restoracle {
namespace {

using ::testing::ElementsAre;

std::vector<std::string> Locations(const std::vector<PathMatch>& matches) {
  std::vector<std::string> out;
  for (const auto& m : matches) out.push_back(m.location.str());
  return out;
}

TEST(JsonPathTest, ParsesDottedAndWildcardForms) {
  JsonPath path = JsonPath::Parse("businesses[*].coordinates.latitude");
  EXPECT_EQ(path.str(), "businesses[*].coordinates.latitude");
  ASSERT_EQ(path.segments().size(), 4u);
  EXPECT_TRUE(path.has_wildcard());
  EXPECT_EQ(path.LastName(), "latitude");
}

TEST(JsonPathTest, RootRendersAsDollar) {
  EXPECT_EQ(JsonPath().str(), "$");
  EXPECT_TRUE(JsonPath::Parse("$").is_root());
  EXPECT_EQ(JsonPath().LastName(), "$");
}

TEST(JsonPathTest, AcceptsLeadingDollar) {
  EXPECT_EQ(JsonPath::Parse("$.total").str(), "total");
  EXPECT_EQ(JsonPath::Parse("$[*].id").str(), JsonPath().Elements().Child("id").str());
}

TEST(JsonPathTest, QuotesKeysThatAreNotBare) {
  JsonPath path = JsonPath().Child("meta").Child("content-type.v2");
  EXPECT_EQ(path.str(), "meta[\"content-type.v2\"]");
  EXPECT_EQ(JsonPath::Parse(path.str()), path);
  JsonPath spaced = JsonPath().Child("a b").Child("\"q\"");
  EXPECT_EQ(JsonPath::Parse(spaced.str()), spaced);
}

TEST(JsonPathTest, RejectsMalformedInput) {
  for (const char* bad : {"a..b", "a[", "a[0]", "a[*", ".a", "a.", "a[\"x]", ""}) {
    if (std::string(bad).empty()) continue;
    EXPECT_THROW(JsonPath::Parse(bad), ParseError) << bad;
  }
}

TEST(JsonPathTest, OrderingFollowsText) {
  EXPECT_LT(JsonPath::Parse("a"), JsonPath::Parse("b"));
  EXPECT_EQ(JsonPath::Parse("a.b"), JsonPath().Child("a").Child("b"));
}

TEST(ResolvePathTest, FansOutOverArrayElementsInIndexOrder) {
  Json doc = Json::parse(R"({"businesses":[{"price":"$"},{"price":"$$"},{}]})");
  auto matches = ResolvePath(JsonPath::Parse("businesses[*].price"), doc);
  EXPECT_THAT(Locations(matches),
              ElementsAre("businesses[0].price", "businesses[1].price"));
  EXPECT_EQ(matches[1].value.get(), "$$");
}

TEST(ResolvePathTest, NestedWildcards) {
  Json doc = Json::parse(R"({"a":[{"b":[1,2]},{"b":[]},{"b":[3]}]})");
  auto matches = ResolvePath(JsonPath::Parse("a[*].b[*]"), doc);
  EXPECT_THAT(Locations(matches), ElementsAre("a[0].b[0]", "a[0].b[1]", "a[2].b[0]"));
}

TEST(ResolvePathTest, MissingKeysAndWrongShapesYieldNothing) {
  Json doc = Json::parse(R"({"a":5,"b":{"c":null}})");
  EXPECT_TRUE(ResolvePath(JsonPath::Parse("a.x"), doc).empty());
  EXPECT_TRUE(ResolvePath(JsonPath::Parse("a[*]"), doc).empty());
  EXPECT_TRUE(ResolvePath(JsonPath::Parse("z"), doc).empty());
  auto null_match = ResolvePath(JsonPath::Parse("b.c"), doc);
  ASSERT_EQ(null_match.size(), 1u);
  EXPECT_TRUE(null_match[0].value.get().is_null());
}

TEST(ResolvePathTest, RootPathMatchesDocument) {
  Json doc = Json::parse("[1,2]");
  auto matches = ResolvePath(JsonPath(), doc);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].location.str(), "$");
  EXPECT_THAT(Locations(ResolvePath(JsonPath().Elements(), doc)), ElementsAre("[0]", "[1]"));
}

TEST(LocationTest, RoundTripsAndConvertsToPointer) {
  Location loc = Location().Child("businesses").Index(3).Child("a/b~c");
  EXPECT_EQ(Location::Parse(loc.str()), loc);
  Json doc = Json::parse(R"({"businesses":[0,1,2,{"a/b~c":"hit"}]})");
  EXPECT_EQ(doc.at(loc.ToPointer()), "hit");
}

TEST(IsBareKeyTest, Classification) {
  EXPECT_TRUE(IsBareKey("image_url"));
  EXPECT_TRUE(IsBareKey("x-rate-limit"));
  EXPECT_FALSE(IsBareKey(""));
  EXPECT_FALSE(IsBareKey("$"));
  EXPECT_FALSE(IsBareKey("a.b"));
  EXPECT_FALSE(IsBareKey("a b"));
}

// Every matched location must point back at the matched value, and the number
// of matches of `k[*]` equals the array length.
TEST(ResolvePathPropertyTest, LocationsAddressMatchedValues) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    Json doc = Json::object();
    std::size_t n = rng() % 6;
    Json arr = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      Json item = Json::object();
      if (rng() % 3 != 0) item["v"] = static_cast<int>(rng() % 100);
      arr.push_back(item);
    }
    doc["k"] = arr;
    auto elements = ResolvePath(JsonPath::Parse("k[*]"), doc);
    ASSERT_EQ(elements.size(), n);
    for (const auto& m : ResolvePath(JsonPath::Parse("k[*].v"), doc)) {
      EXPECT_EQ(doc.at(m.location.ToPointer()), m.value.get());
      EXPECT_EQ(Location::Parse(m.location.str()), m.location);
    }
  }
}

}  // namespace
}  // namespace restoracle
