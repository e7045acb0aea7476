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

#include "restoracle/evaluate.h"

#include <algorithm>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace restoracle {
namespace {

using ::testing::IsEmpty;
using testing::Gen;
using testing::LoadJson;

OracleSet PriceAnswerSet() {
  OracleSet set;
  set.operation_id = "getBusinesses";
  set.Set(JsonPath::Parse("businesses[*].price"), OracleType::kStringSpecificValues,
          StringSetValue{{"$", "$$", "$$$", "$$$$"}});
  return set;
}

TEST(CheckValueTest, SpecExamples) {
  StringSetValue prices{{"$", "$$", "$$$", "$$$$"}};
  EXPECT_EQ(CheckValue(OracleType::kStringSpecificValues, prices, "$"), Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kStringSpecificValues, prices, "$$$$$"), Verdict::kFail);
  EXPECT_EQ(CheckValue(OracleType::kStringFixedLength, CountValue{2}, "ES"), Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kStringFixedLength, CountValue{2}, "ESP"), Verdict::kFail);
  EXPECT_EQ(CheckValue(OracleType::kNumberMinValue, BoundValue{-90.0}, -90), Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kStringIsUrl, FlagValue{true}, "https://a b.com/x"),
            Verdict::kFail);
}

TEST(CheckValueTest, NullWrongTypeAndNoOracleAreNotApplicable) {
  EXPECT_EQ(CheckValue(OracleType::kStringIsUrl, FlagValue{true}, nullptr), Verdict::kNotApplicable);
  EXPECT_EQ(CheckValue(OracleType::kStringIsUrl, FlagValue{true}, 5), Verdict::kNotApplicable);
  EXPECT_EQ(CheckValue(OracleType::kStringIsUrl, FlagValue{false}, "x"), Verdict::kNotApplicable);
  EXPECT_EQ(CheckValue(OracleType::kNumberMaxValue, BoundValue{}, 5), Verdict::kNotApplicable);
  EXPECT_EQ(CheckValue(OracleType::kNumberMaxValue, FlagValue{true}, 5), Verdict::kNotApplicable);
  EXPECT_EQ(CheckValue(OracleType::kBooleanAlwaysTrue, FlagValue{true}, "true"),
            Verdict::kNotApplicable);
}

TEST(CheckValueTest, FixedLengthCountsCodePoints) {
  EXPECT_EQ(CheckValue(OracleType::kStringFixedLength, CountValue{4}, "caf\xC3\xA9"), Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kStringFixedLength, CountValue{1}, "\xF0\x9F\x98\x80"),
            Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kStringFixedLength, CountValue{0}, ""), Verdict::kPass);
}

TEST(CheckValueTest, NumericSetsUseNumericEquality) {
  EXPECT_EQ(CheckValue(OracleType::kNumberSpecificValues, NumberSetValue{{1.0}}, 1), Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kNumberSpecificValues, NumberSetValue{{1.0}}, 1.0), Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kNumberSpecificValues, NumberSetValue{{1.0}}, 1.5), Verdict::kFail);
}

TEST(CheckValueTest, EpsilonWidensBounds) {
  EvalOptions loose;
  loose.epsilon = 0.01;
  EXPECT_EQ(CheckValue(OracleType::kNumberMaxValue, BoundValue{90.0}, 90.005), Verdict::kFail);
  EXPECT_EQ(CheckValue(OracleType::kNumberMaxValue, BoundValue{90.0}, 90.005, loose), Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kNumberSpecificValues, NumberSetValue{{2.0}}, 2.009, loose),
            Verdict::kPass);
}

TEST(CheckValueTest, ArrayOracles) {
  Json three = Json::array({3, 1, 2});
  EXPECT_EQ(CheckValue(OracleType::kArrayMinSize, CountValue{3}, three), Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kArrayMaxSize, CountValue{2}, three), Verdict::kFail);
  EXPECT_EQ(CheckValue(OracleType::kArraySpecificSizes, SizeSetValue{{1, 3}}, three), Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kArrayNumberAscOrder, FlagValue{true}, three), Verdict::kFail);
  EXPECT_EQ(CheckValue(OracleType::kArrayNumberAscOrder, FlagValue{true}, Json::array({1, 1, 2})),
            Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kArrayNumberDescOrder, FlagValue{true}, Json::array({2, 2, 1})),
            Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kArrayNumberAscOrder, FlagValue{true}, Json::array({1, "2"})),
            Verdict::kNotApplicable);
  EXPECT_EQ(CheckValue(OracleType::kArrayStringIsEmail, FlagValue{true},
                       Json::array({"a@b.co", nullptr, "c@d.io"})),
            Verdict::kPass);
  EXPECT_EQ(CheckValue(OracleType::kArrayStringIsEmail, FlagValue{true}, Json::array({"a@b.co", "x"})),
            Verdict::kFail);
  EXPECT_EQ(CheckValue(OracleType::kArrayMinSize, CountValue{1}, "abc"), Verdict::kNotApplicable);
}

TEST(EvaluateTest, PriceAnswerSetAgainstSampleIsGreen) {
  EXPECT_THAT(Evaluate(PriceAnswerSet(), LoadJson("yelp/sample_response.json")), IsEmpty());
}

TEST(EvaluateTest, EmptySetIsVacuous) {
  EXPECT_THAT(Evaluate(OracleSet{}, LoadJson("yelp/sample_response.json")), IsEmpty());
}

TEST(EvaluateTest, MutatedLatitudeGivesExactlyOneViolation) {
  OracleSet set;
  set.Set(JsonPath::Parse("businesses[*].coordinates.latitude"), OracleType::kNumberMinValue, BoundValue{-90.0});
  set.Set(JsonPath::Parse("businesses[*].coordinates.latitude"), OracleType::kNumberMaxValue, BoundValue{90.0});
  set.Set(JsonPath::Parse("businesses[*].coordinates.longitude"), OracleType::kNumberMinValue, BoundValue{-180.0});
  set.Set(JsonPath::Parse("businesses[*].coordinates.longitude"), OracleType::kNumberMaxValue, BoundValue{180.0});
  set.Set(JsonPath::Parse("businesses[*].location.country"), OracleType::kStringFixedLength, CountValue{2});
  Json response = LoadJson("yelp/sample_response.json");
  EXPECT_THAT(Evaluate(set, response), IsEmpty());
  response["businesses"][0]["coordinates"]["latitude"] = 137.4;
  auto violations = Evaluate(set, response);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].location, "businesses[0].coordinates.latitude");
  EXPECT_EQ(violations[0].type, OracleType::kNumberMaxValue);
  EXPECT_EQ(violations[0].observed, 137.4);
  EXPECT_EQ(violations[0].message,
            "businesses[0].coordinates.latitude violates number_max_value = 90 (observed 137.4)");
}

TEST(EvaluateTest, LiftedViolationListsFailingElements) {
  OracleSet set;
  set.Set(JsonPath::Parse("tags"), OracleType::kArrayStringFixedLength, CountValue{2});
  auto violations = Evaluate(set, Json::parse(R"({"tags":["ab","abc","cd","x"]})"));
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].location, "tags");
  EXPECT_THAT(violations[0].message, ::testing::EndsWith("at element(s) 1, 3"));
}

TEST(EvaluateTest, GroundTruthIsGreenOnCorpus) {
  for (const std::string api : {"yelp", "catalog"}) {
    OracleSet truth = OracleSet::FromJson(LoadJson(api + "/ground_truth.json"));
    for (const Json& response : testing::LoadResponses(api)) {
      EXPECT_THAT(Evaluate(truth, response), IsEmpty()) << api;
    }
  }
}

// Re-checking the oracle at the reported location reproduces the failure.
TEST(EvaluatePropertyTest, ViolationsReproduceAtLocation) {
  Gen gen(21);
  for (int round = 0; round < 500; ++round) {
    OracleSet set;
    OracleType t = gen.Type();
    set.Set(JsonPath::Parse("items[*].v"), t, gen.Value(t));
    Json doc = {{"items", Json::array()}};
    for (std::uint64_t i = 0; i < 1 + gen.Below(4); ++i) doc["items"].push_back({{"v", gen.Any()}});
    auto first = Evaluate(set, doc);
    EXPECT_EQ(Json(first.size()), Json(Evaluate(set, doc).size()));
    for (const auto& v : first) {
      const Json& at = doc.at(Location::Parse(v.location).ToPointer());
      EXPECT_EQ(CheckValue(v.type, v.expected, at), Verdict::kFail);
      EXPECT_EQ(at, v.observed);
    }
  }
}

TEST(EvaluatePropertyTest, PureAndByteIdentical) {
  OracleSet truth = OracleSet::FromJson(LoadJson("catalog/ground_truth.json"));
  Json response = testing::LoadResponses("catalog")[0];
  response["books"][0]["isbn"] = "97812";
  response["books"][0]["cover_urls"][0] = "not a url";
  auto dump = [](const std::vector<Violation>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(v.ToJson());
    return out.dump();
  };
  std::string once = dump(Evaluate(truth, response));
  EXPECT_EQ(once, dump(Evaluate(truth, response)));
  EXPECT_NE(once, "[]");
}

Datatype JsonDatatype(const Json& v) {
  if (v.is_string()) return Datatype::kString;
  if (v.is_boolean()) return Datatype::kBoolean;
  if (v.is_number()) return Datatype::kNumber;
  if (v.is_array()) return Datatype::kArray;
  return Datatype::kObject;
}

TEST(CheckValuePropertyTest, TypingSoundness) {
  Gen gen(1);
  for (int i = 0; i < 5000; ++i) {
    OracleType t = gen.Type();
    Json observed = gen.Any();
    Verdict v = CheckValue(t, gen.Value(t), observed);
    if (observed.is_null() || JsonDatatype(observed) != ObservedDatatype(t)) {
      EXPECT_EQ(v, Verdict::kNotApplicable) << OracleKey(t) << " " << observed.dump();
    }
  }
}

TEST(CheckValuePropertyTest, LiftingLaw) {
  Gen gen(2);
  for (int i = 0; i < 5000; ++i) {
    OracleType lifted = gen.Type();
    if (!IsLifted(lifted)) continue;
    OracleValue value = gen.Value(lifted);
    Json array = Json::array();
    for (std::uint64_t k = 0; k < gen.Below(5); ++k) array.push_back(gen.Scalar());
    bool every = std::all_of(array.begin(), array.end(), [&](const Json& e) {
      return CheckValue(BaseType(lifted), value, e) != Verdict::kFail;
    });
    EXPECT_EQ(CheckValue(lifted, value, array) == Verdict::kPass, every) << array.dump();
  }
}

TEST(CheckValuePropertyTest, MonotoneSets) {
  Gen gen(3);
  for (int i = 0; i < 3000; ++i) {
    auto a = std::get<StringSetValue>(gen.Value(OracleType::kStringSpecificValues));
    auto b = a;
    b.values.push_back(gen.String());
    std::string observed = gen.String();
    if (CheckValue(OracleType::kStringSpecificValues, a, observed) == Verdict::kPass) {
      EXPECT_EQ(CheckValue(OracleType::kStringSpecificValues, b, observed), Verdict::kPass);
    }
  }
}

TEST(CheckValuePropertyTest, BoundsCoherence) {
  Gen gen(4);
  for (int i = 0; i < 3000; ++i) {
    double m = gen.Number();
    double observed = gen.Coin() ? m : gen.Number();
    bool both = CheckValue(OracleType::kNumberMinValue, BoundValue{m}, observed) == Verdict::kPass &&
                CheckValue(OracleType::kNumberMaxValue, BoundValue{m}, observed) == Verdict::kPass;
    EXPECT_EQ(both, observed == m);
  }
}

TEST(CheckValuePropertyTest, OrderOracles) {
  Gen gen(5);
  for (int i = 0; i < 3000; ++i) {
    std::vector<double> values;
    for (std::uint64_t k = 0; k < gen.Below(7); ++k) values.push_back(gen.Number());
    Json raw(values);
    auto sorted = values;
    std::sort(sorted.begin(), sorted.end());
    bool has_descending_pair = false;
    for (std::size_t k = 1; k < values.size(); ++k) has_descending_pair |= values[k - 1] > values[k];
    Verdict asc = CheckValue(OracleType::kArrayNumberAscOrder, FlagValue{true}, raw);
    if (values.size() <= 1) EXPECT_EQ(asc, Verdict::kPass);
    EXPECT_EQ(asc == Verdict::kFail, has_descending_pair);
    EXPECT_EQ(CheckValue(OracleType::kArrayNumberAscOrder, FlagValue{true}, Json(sorted)), Verdict::kPass);
    std::reverse(sorted.begin(), sorted.end());
    EXPECT_EQ(CheckValue(OracleType::kArrayNumberDescOrder, FlagValue{true}, Json(sorted)), Verdict::kPass);
  }
}

TEST(ValidateSetTest, Examples) {
  ApiSpec spec = ApiSpec::Load(testing::kFixtures + "/yelp/openapi.yaml");
  auto fields = ExtractFields(spec, "getBusinesses").fields;
  EXPECT_THAT(ValidateSet(PriceAnswerSet(), fields), IsEmpty());
  OracleSet bad;
  bad.Set(JsonPath::Parse("businesses[*].name"), OracleType::kNumberMinValue, BoundValue{0.0});
  bad.Set(JsonPath::Parse("nowhere"), OracleType::kStringIsUrl, FlagValue{true});
  auto mismatches = ValidateSet(bad, fields);
  ASSERT_EQ(mismatches.size(), 2u);
  EXPECT_EQ(mismatches[0].reason,
            "number_min_value does not apply to a field of type string");
  EXPECT_EQ(mismatches[1].reason, "unknown field path");
  for (const std::string api : {"yelp", "catalog"}) {
    ApiSpec s = ApiSpec::Load(testing::kFixtures + "/" + api + "/openapi.yaml");
    OracleSet truth = OracleSet::FromJson(LoadJson(api + "/ground_truth.json"));
    EXPECT_THAT(ValidateSet(truth, ExtractFields(s, truth.operation_id).fields), IsEmpty());
  }
}

TEST(ValidateSetPropertyTest, WellTypedRandomSetsHaveNoMismatch) {
  Gen gen(6);
  ApiSpec spec = ApiSpec::Load(testing::kFixtures + "/catalog/openapi.yaml");
  auto fields = ExtractFields(spec, "listBooks").fields;
  for (int round = 0; round < 300; ++round) {
    OracleSet set;
    for (int k = 0; k < 8; ++k) {
      const ResponseField& f = fields[gen.Below(fields.size())];
      auto types = ApplicableOracles(f);
      OracleType t = types[gen.Below(types.size())];
      set.Set(f.path, t, gen.Value(t));
    }
    EXPECT_THAT(ValidateSet(set, fields), IsEmpty());
  }
}

}  // namespace
}  // namespace restoracle
