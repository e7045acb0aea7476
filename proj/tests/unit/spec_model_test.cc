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

#include "restoracle/spec_model.h"

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "restoracle/errors.h"
#include "restoracle/schema.h"

namespace restoracle {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;

const std::string kFixtures = RESTORACLE_FIXTURES;

std::vector<std::string> Paths(const std::vector<ResponseField>& fields) {
  std::vector<std::string> out;
  for (const auto& f : fields) out.push_back(f.path.str());
  return out;
}

bool HasWarning(const std::vector<SpecWarning>& warnings, const std::string& code) {
  for (const auto& w : warnings) {
    if (w.code == code) return true;
  }
  return false;
}

std::string WrapResponse(const std::string& schema_yaml,
                         const std::string& components = "") {
  std::string text =
      "openapi: 3.0.3\n"
      "info: {title: T, version: '1'}\n"
      "paths:\n"
      "  /x:\n"
      "    get:\n"
      "      operationId: op\n"
      "      responses:\n"
      "        '200':\n"
      "          description: ok\n"
      "          content:\n"
      "            application/json:\n"
      "              schema: " + schema_yaml + "\n";
  if (!components.empty()) text += "components:\n  schemas:\n" + components;
  return text;
}

TEST(LoadSpecTest, YelpExcerpt) {
  ApiSpec spec = ApiSpec::Load(kFixtures + "/yelp/openapi.yaml");
  EXPECT_EQ(spec.title(), "Yelp");
  ASSERT_EQ(spec.operations().size(), 1u);
  const OperationRef& op = spec.operations()[0];
  EXPECT_EQ(op.operation_id, "getBusinesses");
  EXPECT_EQ(op.http_method, "GET");
  EXPECT_EQ(op.path_template, "/businesses/search");
  EXPECT_EQ(op.success_status, "200");
}

TEST(LoadSpecTest, MinimalSpecWithEmptyResponseObject) {
  ApiSpec spec = ApiSpec::FromText(WrapResponse("{type: object}"));
  ASSERT_EQ(spec.operations().size(), 1u);
  EXPECT_THAT(ExtractFields(spec, "op").fields, IsEmpty());
}

TEST(LoadSpecTest, RejectsSwaggerAndOtherVersions) {
  EXPECT_THROW(ApiSpec::FromText("swagger: '2.0'\ninfo: {title: a}\npaths: {}\n"),
               UnsupportedVersion);
  EXPECT_THROW(ApiSpec::FromText("openapi: 2.1.0\npaths: {}\n"), UnsupportedVersion);
  EXPECT_THROW(ApiSpec::FromText("info: {title: a}\n"), UnsupportedVersion);
}

TEST(LoadSpecTest, MalformedTextIsParseError) {
  EXPECT_THROW(ApiSpec::FromText("openapi: [3.0\n  : :"), ParseError);
  EXPECT_THROW(ApiSpec::FromText("{\"openapi\": \"3.0.0\","), ParseError);
  EXPECT_THROW(ApiSpec::Load(kFixtures + "/does/not/exist.yaml"), ParseError);
}

TEST(LoadSpecTest, UnresolvableRefIsRefError) {
  EXPECT_THROW(ApiSpec::FromText(WrapResponse("{$ref: '#/components/schemas/Nope'}")),
               RefError);
}

TEST(LoadSpecTest, PathTemplatesMustStartWithSlash) {
  EXPECT_THROW(ApiSpec::FromText("openapi: 3.0.0\ninfo: {title: a}\npaths:\n"
                                 "  x:\n    get: {responses: {}}\n"),
               ParseError);
}

TEST(LoadSpecTest, SynthesizesMissingOperationIdsInDocumentOrder) {
  ApiSpec spec = ApiSpec::FromText(
      "openapi: 3.1.0\ninfo: {title: a}\npaths:\n"
      "  /b:\n    post: {responses: {}}\n    get: {operationId: getB, responses: {}}\n"
      "  /a:\n    delete: {responses: {}}\n");
  std::vector<std::string> ids;
  for (const auto& op : spec.operations()) ids.push_back(op.operation_id);
  EXPECT_THAT(ids, ElementsAre("POST /b", "getB", "DELETE /a"));
  EXPECT_EQ(spec.title(), "a");
}

TEST(LoadSpecTest, JsonInputIsAccepted) {
  ApiSpec spec = ApiSpec::FromText(
      R"({"openapi":"3.0.1","info":{"title":"J"},"paths":{"/p":{"get":{"operationId":"g",)"
      R"("responses":{"200":{"content":{"application/json":{"schema":{"type":"string"}}}}}}}}})");
  EXPECT_EQ(spec.title(), "J");
  auto fields = ExtractFields(spec, "g").fields;
  ASSERT_EQ(fields.size(), 1u);
  EXPECT_TRUE(fields[0].path.is_root());
}

TEST(LoadSpecTest, QuotedScalarsStayStrings) {
  ApiSpec spec = ApiSpec::FromText(WrapResponse(
      "{type: object, properties: {v: {type: string, example: '42', enum: ['1', 2, true, null]}}}"));
  auto fields = ExtractFields(spec, "op").fields;
  ASSERT_EQ(fields.size(), 1u);
  EXPECT_EQ(*fields[0].example, Json("42"));
  EXPECT_EQ(Json(*fields[0].enum_values), Json::parse(R"(["1",2,true])"));
}

TEST(ExtractFieldsTest, YelpFields) {
  ApiSpec spec = ApiSpec::Load(kFixtures + "/yelp/openapi.yaml");
  Extraction ex = ExtractFields(spec, "getBusinesses");
  EXPECT_THAT(ex.warnings, IsEmpty());
  EXPECT_THAT(Paths(ex.fields),
              ElementsAre("total", "businesses", "businesses[*].id", "businesses[*].name",
                          "businesses[*].image_url", "businesses[*].rating",
                          "businesses[*].coordinates.latitude",
                          "businesses[*].coordinates.longitude", "businesses[*].price",
                          "businesses[*].location.city", "businesses[*].location.country"));
  const ResponseField& total = ex.fields[0];
  EXPECT_EQ(OracleDatatype(total.datatype), Datatype::kNumber);
  const ResponseField& price = ex.fields[8];
  EXPECT_EQ(price.datatype, Datatype::kString);
  EXPECT_EQ(price.name, "price");
  EXPECT_EQ(*price.description, "Price level. Value is one of $, $$, $$$, $$$$.");
  EXPECT_EQ(*price.example, Json("$$"));
  EXPECT_EQ(ex.fields[6].datatype, Datatype::kNumber);
  EXPECT_EQ(ex.fields[1].datatype, Datatype::kArray);
  EXPECT_EQ(ex.fields[1].element_datatype, Datatype::kObject);
}

TEST(ExtractFieldsTest, UnknownOperation) {
  ApiSpec spec = ApiSpec::Load(kFixtures + "/yelp/openapi.yaml");
  EXPECT_THROW(ExtractFields(spec, "nope"), UnknownOperation);
}

TEST(ExtractFieldsTest, BareStringSchemaIsRootField) {
  ApiSpec spec = ApiSpec::FromText(WrapResponse("{type: string, format: date}"));
  auto fields = ExtractFields(spec, "op").fields;
  ASSERT_EQ(fields.size(), 1u);
  EXPECT_EQ(fields[0].path.str(), "$");
  EXPECT_EQ(fields[0].datatype, Datatype::kString);
  EXPECT_EQ(*fields[0].format, "date");
}

TEST(ExtractFieldsTest, RefEqualsInlinedEquivalent) {
  const std::string biz =
      "{type: object, properties: {id: {type: string}, tags: {type: array, items: "
      "{type: string, format: email}}, loc: {type: object, properties: {lat: "
      "{type: number, minimum: -90}}}}}";
  ApiSpec inlined = ApiSpec::FromText(WrapResponse(
      "{type: object, properties: {items: {type: array, items: " + biz + "}}}"));
  ApiSpec reffed = ApiSpec::FromText(
      WrapResponse("{type: object, properties: {items: {type: array, items: "
                   "{$ref: '#/components/schemas/Biz'}}}}",
                   "    Biz: " + biz + "\n"));
  auto a = ExtractFields(inlined, "op").fields;
  auto b = ExtractFields(reffed, "op").fields;
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a, b);
}

TEST(ExtractFieldsTest, ArraysOfPrimitivesBecomeOneField) {
  ApiSpec spec = ApiSpec::FromText(WrapResponse(
      "{type: object, properties: {n: {type: array, minItems: 1, items: {type: integer, maximum: 9}}}}"));
  auto fields = ExtractFields(spec, "op").fields;
  ASSERT_EQ(fields.size(), 1u);
  EXPECT_EQ(fields[0].path.str(), "n");
  EXPECT_EQ(fields[0].datatype, Datatype::kArray);
  EXPECT_EQ(fields[0].element_datatype, Datatype::kInteger);
  EXPECT_EQ(fields[0].constraints["minItems"], 1);
  EXPECT_EQ(fields[0].constraints["items"]["maximum"], 9);
}

TEST(ExtractFieldsTest, NestedArraysOfArrays) {
  ApiSpec spec = ApiSpec::FromText(WrapResponse(
      "{type: object, properties: {m: {type: array, items: {type: array, items: "
      "{type: object, properties: {v: {type: number}}}}}}}"));
  EXPECT_THAT(Paths(ExtractFields(spec, "op").fields), ElementsAre("m", "m[*]", "m[*][*].v"));
}

// Independent leaf enumeration over a fully inlined schema tree: objects
// recurse into properties, arrays of objects/arrays recurse with "[*]" after
// contributing themselves, everything else is a leaf.
void EnumerateLeaves(const Json& schema, const std::string& path,
                     std::vector<std::string>& out) {
  const std::string type = schema.value("type", "");
  if (type == "object") {
    for (const auto& [key, child] : schema["properties"].items()) {
      EnumerateLeaves(child, path.empty() ? key : path + "." + key, out);
    }
    return;
  }
  out.push_back(path.empty() ? "$" : path);
  if (type == "array") {
    const std::string items = schema["items"].value("type", "");
    if (items == "object" || items == "array") EnumerateLeaves(schema["items"], path + "[*]", out);
  }
}

TEST(ExtractFieldsTest, ThreeLevelNestingMatchesBruteForceWalk) {
  const char* schema = R"({"type":"object","properties":{
    "meta":{"type":"object","properties":{"page":{"type":"integer"},
      "links":{"type":"object","properties":{"self":{"type":"string"},"next":{"type":"string"}}}}},
    "orders":{"type":"array","items":{"type":"object","properties":{
      "id":{"type":"string"},
      "lines":{"type":"array","items":{"type":"object","properties":{
        "sku":{"type":"string"},"qty":{"type":"integer"},
        "dims":{"type":"object","properties":{"w":{"type":"number"},"h":{"type":"number"}}}}}},
      "paid":{"type":"boolean"}}}},
    "codes":{"type":"array","items":{"type":"string"}}}})";
  std::vector<std::string> expected;
  EnumerateLeaves(Json::parse(schema), "", expected);
  ApiSpec spec = ApiSpec::FromText(WrapResponse(schema));
  EXPECT_EQ(Paths(ExtractFields(spec, "op").fields), expected);
  EXPECT_EQ(expected.size(), 12u);
}

TEST(ExtractFieldsTest, CycleIsCutWithWarningAndSiblingsSurvive) {
  ApiSpec spec = ApiSpec::FromText(WrapResponse(
      "{$ref: '#/components/schemas/Node'}",
      "    Node: {type: object, properties: {name: {type: string}, "
      "children: {type: array, items: {$ref: '#/components/schemas/Node'}}}}\n"));
  Extraction ex = ExtractFields(spec, "op");
  EXPECT_THAT(Paths(ex.fields), ElementsAre("name", "children"));
  ASSERT_TRUE(HasWarning(ex.warnings, "CyclicSchema"));
  EXPECT_THAT(ex.warnings[0].message, ::testing::HasSubstr("#/components/schemas/Node"));
  ExtractOptions strict;
  strict.strict_cycles = true;
  EXPECT_THROW(ExtractFields(spec, "op", strict), CyclicSchema);
}

TEST(ExtractFieldsTest, SameRefInSiblingsIsNotACycle) {
  ApiSpec spec = ApiSpec::FromText(WrapResponse(
      "{type: object, properties: {a: {$ref: '#/components/schemas/P'}, "
      "b: {$ref: '#/components/schemas/P'}}}",
      "    P: {type: object, properties: {x: {type: number}}}\n"));
  Extraction ex = ExtractFields(spec, "op");
  EXPECT_THAT(Paths(ex.fields), ElementsAre("a.x", "b.x"));
  EXPECT_THAT(ex.warnings, IsEmpty());
}

TEST(ExtractFieldsTest, AllOfUnionWithConflictWarning) {
  ApiSpec spec = ApiSpec::FromText(WrapResponse(
      "{allOf: [{type: object, properties: {a: {type: string}, c: {type: string}}}, "
      "{type: object, properties: {b: {type: number}, c: {type: integer}}}]}"));
  Extraction ex = ExtractFields(spec, "op");
  EXPECT_THAT(Paths(ex.fields), ElementsAre("a", "c", "b"));
  EXPECT_EQ(ex.fields[1].datatype, Datatype::kInteger);
  EXPECT_TRUE(HasWarning(ex.warnings, "AllOfConflict"));
}

TEST(ExtractFieldsTest, OneOfTakesFirstBranchWithWarning) {
  ApiSpec spec = ApiSpec::FromText(WrapResponse(
      "{oneOf: [{type: object, properties: {a: {type: string}}}, "
      "{type: object, properties: {b: {type: number}}}]}"));
  Extraction ex = ExtractFields(spec, "op");
  EXPECT_THAT(Paths(ex.fields), ElementsAre("a"));
  EXPECT_TRUE(HasWarning(ex.warnings, "PolymorphicSchema"));
}

TEST(ExtractFieldsTest, NullBranchMakesFieldNullable) {
  ApiSpec spec = ApiSpec::FromText(WrapResponse(
      "{type: object, properties: {a: {anyOf: [{type: 'null'}, {type: string}]}, "
      "b: {type: [integer, 'null']}}}"));
  Extraction ex = ExtractFields(spec, "op");
  ASSERT_EQ(ex.fields.size(), 2u);
  EXPECT_TRUE(ex.fields[0].nullable);
  EXPECT_EQ(ex.fields[0].datatype, Datatype::kString);
  EXPECT_TRUE(ex.fields[1].nullable);
  EXPECT_EQ(ex.fields[1].datatype, Datatype::kInteger);
  EXPECT_FALSE(HasWarning(ex.warnings, "PolymorphicSchema"));
}

TEST(SuccessSelectionTest, PrefersTwoHundredThenLowestTwoXxThenDefault) {
  auto pick = [](const std::string& responses) {
    ApiSpec spec = ApiSpec::FromText(
        "openapi: 3.0.0\ninfo: {title: a}\npaths:\n  /p:\n    get:\n"
        "      operationId: g\n      responses:\n" + responses);
    return spec.operations()[0].success_status;
  };
  const std::string json = "{content: {application/json: {schema: {type: string}}}}";
  EXPECT_EQ(pick("        '201': " + json + "\n        '200': " + json + "\n"), "200");
  EXPECT_EQ(pick("        '204': " + json + "\n        '202': " + json + "\n"), "202");
  EXPECT_EQ(pick("        default: " + json + "\n        '404': " + json + "\n"), "default");
  EXPECT_EQ(pick("        '404': " + json + "\n"), "");
}

TEST(SuccessSelectionTest, NonJsonMediaTypesAreSkippedWithWarning) {
  ApiSpec spec = ApiSpec::FromText(
      "openapi: 3.0.0\ninfo: {title: a}\npaths:\n  /p:\n    get:\n"
      "      operationId: g\n      responses:\n        '200':\n          content:\n"
      "            text/csv: {schema: {type: string}}\n");
  Extraction ex = ExtractFields(spec, "g");
  EXPECT_THAT(ex.fields, IsEmpty());
  std::vector<SpecWarning> all = spec.warnings();
  all.insert(all.end(), ex.warnings.begin(), ex.warnings.end());
  EXPECT_TRUE(HasWarning(all, "SkippedMediaType") || HasWarning(all, "NoJsonResponse"));
}

TEST(ResponseFieldTest, JsonRoundTrip) {
  ApiSpec spec = ApiSpec::Load(kFixtures + "/catalog/openapi.yaml");
  for (const auto& op : spec.operations()) {
    for (const auto& field : ExtractFields(spec, op.operation_id).fields) {
      EXPECT_EQ(ResponseField::FromJson(field.ToJson()), field) << field.path.str();
    }
  }
}

TEST(ResponseFieldTest, KeyOrderIsStable) {
  ApiSpec spec = ApiSpec::Load(kFixtures + "/yelp/openapi.yaml");
  auto fields = ExtractFields(spec, "getBusinesses").fields;
  EXPECT_EQ(fields[8].ToJson().dump(),
            R"({"path":"businesses[*].price","name":"price","datatype":"string",)"
            R"("description":"Price level. Value is one of $, $$, $$$, $$$$.",)"
            R"("example":"$$","nullable":false})");
}

TEST(ExtractPropertyTest, DeterministicAcrossLoads) {
  std::string text = ReadFile(kFixtures + "/catalog/openapi.yaml");
  ApiSpec a = ApiSpec::FromText(text);
  ApiSpec b = ApiSpec::FromText(text);
  for (const auto& op : a.operations()) {
    EXPECT_EQ(ExtractFields(a, op.operation_id).fields,
              ExtractFields(b, op.operation_id).fields);
  }
}

// Random schema trees: documents generated from the same tree only expose
// values of each field's datatype at the field's path.
struct SchemaGen {
  std::mt19937_64 rng;
  int depth = 0;

  Json Schema() {
    int pick = static_cast<int>(rng() % (depth >= 3 ? 4 : 6));
    ++depth;
    Json s;
    switch (pick) {
      case 0: s = {{"type", "string"}}; break;
      case 1: s = {{"type", "integer"}}; break;
      case 2: s = {{"type", "number"}, {"nullable", true}}; break;
      case 3: s = {{"type", "boolean"}}; break;
      case 4: {
        s = {{"type", "object"}, {"properties", Json::object()}};
        int n = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) s["properties"]["p" + std::to_string(i)] = Schema();
        break;
      }
      default: s = {{"type", "array"}, {"items", Schema()}}; break;
    }
    --depth;
    return s;
  }

  Json Instance(const Json& s) {
    const std::string type = s["type"];
    if (s.value("nullable", false) && rng() % 4 == 0) return nullptr;
    if (type == "string") return "s" + std::to_string(rng() % 10);
    if (type == "integer") return static_cast<int>(rng() % 100);
    if (type == "number") return static_cast<double>(rng() % 1000) / 8.0;
    if (type == "boolean") return rng() % 2 == 0;
    if (type == "object") {
      Json o = Json::object();
      for (const auto& [k, v] : s["properties"].items()) {
        if (rng() % 5 != 0) o[k] = Instance(v);
      }
      return o;
    }
    Json a = Json::array();
    std::size_t n = rng() % 4;
    for (std::size_t i = 0; i < n; ++i) a.push_back(Instance(s["items"]));
    return a;
  }
};

bool HasType(const Json& v, Datatype t) {
  switch (t) {
    case Datatype::kString: return v.is_string();
    case Datatype::kBoolean: return v.is_boolean();
    case Datatype::kNumber: return v.is_number();
    case Datatype::kInteger: return v.is_number_integer();
    case Datatype::kObject: return v.is_object();
    case Datatype::kArray: return v.is_array();
  }
  return false;
}

TEST(ExtractPropertyTest, ResolvedValuesHaveFieldDatatype) {
  SchemaGen gen{std::mt19937_64(20260117)};
  for (int round = 0; round < 150; ++round) {
    Json schema = gen.Schema();
    ApiSpec spec = ApiSpec::FromText(WrapResponse(schema.dump()));
    auto fields = ExtractFields(spec, "op").fields;
    for (int d = 0; d < 5; ++d) {
      Json doc = gen.Instance(schema);
      ASSERT_THAT(ValidateAgainstSchema(spec, schema, doc), IsEmpty()) << doc.dump();
      for (const auto& f : fields) {
        for (const auto& m : ResolvePath(f.path, doc)) {
          const Json& v = m.value.get();
          EXPECT_TRUE(HasType(v, f.datatype) || (v.is_null() && f.nullable))
              << schema.dump() << " " << f.path.str() << " " << v.dump();
        }
      }
    }
  }
}

TEST(ExtractPropertyTest, FieldPathsRoundTripAndAreUnique) {
  SchemaGen gen{std::mt19937_64(99)};
  for (int round = 0; round < 150; ++round) {
    ApiSpec spec = ApiSpec::FromText(WrapResponse(gen.Schema().dump()));
    auto fields = ExtractFields(spec, "op").fields;
    std::set<std::string> seen;
    for (const auto& f : fields) {
      EXPECT_EQ(JsonPath::Parse(f.path.str()), f.path);
      EXPECT_TRUE(seen.insert(f.path.str()).second) << f.path.str();
      if (f.datatype == Datatype::kArray) EXPECT_TRUE(f.element_datatype.has_value());
    }
  }
}

}  // namespace
}  // namespace restoracle
