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

#include "restoracle/oracle.h"

#include <set>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "restoracle/errors.h"
#include "test_util.h"

namespace restoracle {
namespace {

using ::testing::ElementsAre;
using testing::Gen;
using testing::LoadJson;

TEST(OracleCatalogTest, SeventeenBaseTypesAndTwelveLifted) {
  EXPECT_EQ(AllOracleTypes().size(), 29u);
  int base = 0;
  std::set<std::string> keys;
  for (OracleType t : AllOracleTypes()) {
    base += IsLifted(t) ? 0 : 1;
    keys.insert(std::string(OracleKey(t)));
    EXPECT_EQ(ParseOracleKey(OracleKey(t)), t);
  }
  EXPECT_EQ(base, 17);
  EXPECT_EQ(keys.size(), 29u);
  EXPECT_FALSE(ParseOracleKey("string_is_uuid").has_value());
}

TEST(OracleCatalogTest, LiftingMapsToBaseElementOracle) {
  for (OracleType t : AllOracleTypes()) {
    if (!IsLifted(t)) continue;
    OracleType base = BaseType(t);
    EXPECT_FALSE(IsLifted(base));
    EXPECT_EQ(LiftedType(base), t);
    EXPECT_EQ(OracleKey(t), "array_" + std::string(OracleKey(base)));
    EXPECT_EQ(KindOf(t), KindOf(base));
    EXPECT_EQ(ObservedDatatype(t), Datatype::kArray);
  }
  EXPECT_FALSE(LiftedType(OracleType::kArrayMinSize).has_value());
}

TEST(OracleCatalogTest, ApplicableOraclesPerDatatype) {
  auto keys = [](Datatype d, std::optional<Datatype> e = std::nullopt) {
    std::vector<std::string> out;
    for (OracleType t : ApplicableOracles(d, e)) out.emplace_back(OracleKey(t));
    return out;
  };
  EXPECT_THAT(keys(Datatype::kString),
              ElementsAre("string_is_url", "string_is_numeric", "string_specific_values",
                          "string_is_email", "string_is_date", "string_fixed_length",
                          "string_is_time"));
  EXPECT_THAT(keys(Datatype::kBoolean), ElementsAre("boolean_always_true", "boolean_always_false"));
  EXPECT_EQ(keys(Datatype::kInteger), keys(Datatype::kNumber));
  EXPECT_THAT(keys(Datatype::kArray, Datatype::kObject),
              ElementsAre("array_min_size", "array_max_size", "array_specific_sizes"));
  // Table rows Array + Array[number]: 3 element keys, 3 size keys, 2 order keys.
  EXPECT_THAT(keys(Datatype::kArray, Datatype::kInteger),
              ElementsAre("array_number_min_value", "array_number_max_value",
                          "array_number_specific_values", "array_min_size", "array_max_size",
                          "array_specific_sizes", "array_number_asc_order",
                          "array_number_desc_order"));
  EXPECT_EQ(keys(Datatype::kArray, Datatype::kString).size(), 10u);
  EXPECT_EQ(keys(Datatype::kArray, Datatype::kBoolean).size(), 5u);
  EXPECT_TRUE(keys(Datatype::kObject).empty());
}

TEST(OracleValueTest, PriceCompletionDecodes) {
  Json completion = LoadJson("yelp/price_completion.json");
  std::vector<OracleType> asserted;
  for (const auto& [key, json] : completion.items()) {
    OracleType type = *ParseOracleKey(key);
    OracleValue value = ValueFromJson(type, json);
    if (IsAsserted(value)) asserted.push_back(type);
  }
  ASSERT_THAT(asserted, ElementsAre(OracleType::kStringSpecificValues));
  EXPECT_EQ(std::get<StringSetValue>(ValueFromJson(OracleType::kStringSpecificValues,
                                                   completion["string_specific_values"])),
            (StringSetValue{{"$", "$$", "$$$", "$$$$"}}));
}

TEST(OracleValueTest, NoOracleEncodings) {
  for (OracleType t : AllOracleTypes()) {
    EXPECT_FALSE(IsAsserted(NoOracle(t))) << OracleKey(t);
    EXPECT_TRUE(KindMatches(t, NoOracle(t)));
    EXPECT_FALSE(IsAsserted(ValueFromJson(t, nullptr)));
  }
  EXPECT_FALSE(IsAsserted(ValueFromJson(OracleType::kStringIsUrl, false)));
  EXPECT_FALSE(IsAsserted(ValueFromJson(OracleType::kStringSpecificValues, Json::array())));
  EXPECT_TRUE(IsAsserted(ValueFromJson(OracleType::kStringFixedLength, 0)));
}

TEST(OracleValueTest, StrictDecoding) {
  EXPECT_THROW(ValueFromJson(OracleType::kStringIsUrl, "true"), OracleFormatError);
  EXPECT_THROW(ValueFromJson(OracleType::kStringFixedLength, -1), OracleFormatError);
  EXPECT_THROW(ValueFromJson(OracleType::kStringFixedLength, 2.5), OracleFormatError);
  EXPECT_THROW(ValueFromJson(OracleType::kNumberMinValue, "0"), OracleFormatError);
  EXPECT_THROW(ValueFromJson(OracleType::kStringSpecificValues, Json::array({1})),
               OracleFormatError);
  EXPECT_THROW(ValueFromJson(OracleType::kArraySpecificSizes, Json::array({-2})),
               OracleFormatError);
}

TEST(OracleValueTest, SetsDeduplicateAndMatchIgnoringOrder) {
  OracleValue a = ValueFromJson(OracleType::kStringSpecificValues, Json::array({"b", "a", "b"}));
  EXPECT_EQ(std::get<StringSetValue>(a).values.size(), 2u);
  EXPECT_TRUE(ValuesMatch(a, StringSetValue{{"a", "b"}}));
  EXPECT_FALSE(ValuesMatch(a, StringSetValue{{"a"}}));
  EXPECT_TRUE(ValuesMatch(NumberSetValue{{1.0, 2.0}}, NumberSetValue{{2, 1}}));
  EXPECT_TRUE(ValuesMatch(BoundValue{0.0}, BoundValue{-0.0}));
  EXPECT_FALSE(ValuesMatch(BoundValue{0.0}, BoundValue{1.0}));
  EXPECT_FALSE(ValuesMatch(CountValue{2}, BoundValue{2.0}));
}

TEST(OracleValueTest, NumbersRenderAsIntegersWhenIntegral) {
  EXPECT_EQ(NumberToJson(-90.0).dump(), "-90");
  EXPECT_EQ(NumberToJson(4.5).dump(), "4.5");
  EXPECT_EQ(ValueToJson(NumberSetValue{{1.0, 2.5}}).dump(), "[1,2.5]");
  EXPECT_EQ(ValueToString(BoundValue{5.0}), "5");
}

TEST(OracleValueTest, JsonRoundTripOnRandomValues) {
  Gen gen(11);
  for (int i = 0; i < 2000; ++i) {
    OracleType t = gen.Type();
    OracleValue v = gen.Value(t);
    EXPECT_EQ(ValueFromJson(t, ValueToJson(v)), v) << OracleKey(t);
  }
}

TEST(OracleSetTest, SetDropsNoOracleEncodings) {
  OracleSet set;
  JsonPath price = JsonPath::Parse("businesses[*].price");
  set.Set(price, OracleType::kStringIsUrl, FlagValue{false});
  EXPECT_TRUE(set.empty());
  set.Set(price, OracleType::kStringSpecificValues, StringSetValue{{"$"}});
  set.Set(price, OracleType::kStringFixedLength, CountValue{1});
  EXPECT_EQ(set.AssertedCount(), 2u);
  set.Set(price, OracleType::kStringFixedLength, CountValue{});
  EXPECT_EQ(set.AssertedCount(), 1u);
  EXPECT_EQ(set.Find(price, OracleType::kStringFixedLength), nullptr);
  set.Set(price, OracleType::kStringSpecificValues, StringSetValue{});
  EXPECT_TRUE(set.empty());
}

TEST(OracleSetTest, FileRoundTrip) {
  OracleSet set = OracleSet::FromJson(LoadJson("yelp/ground_truth.json"));
  EXPECT_EQ(set.operation_id, "getBusinesses");
  EXPECT_EQ(set.AssertedCount(), 10u);
  set.provenance[JsonPath::Parse("total")] = Provenance::kHumanEdited;
  EXPECT_EQ(OracleSet::FromJson(set.ToJson()), set);
  EXPECT_EQ(OracleSet::FromJson(set.ToJson()).ToJson().dump(), set.ToJson().dump());
}

TEST(OracleSetTest, RejectsMalformedFiles) {
  EXPECT_THROW(OracleSet::FromJson(Json::parse(R"({"fields":{}})")), OracleFormatError);
  EXPECT_THROW(OracleSet::FromJson(Json::parse(
                   R"({"operationId":"x","fields":{"a":{"string_is_uuid":true}}})")),
               OracleFormatError);
  EXPECT_THROW(OracleSet::FromJson(Json::parse(
                   R"({"operationId":"x","fields":{"a..b":{"string_is_url":true}}})")),
               Error);
  EXPECT_THROW(OracleSet::FromJson(Json::parse(
                   R"({"operationId":"x","fields":{"a":{"string_is_url":"yes"}}})")),
               OracleFormatError);
}

}  // namespace
}  // namespace restoracle
