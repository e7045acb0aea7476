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

#ifndef RESTORACLE_ORACLE_H_
#define RESTORACLE_ORACLE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "restoracle/json_path.h"
#include "restoracle/spec_model.h"

namespace restoracle {

// The unary oracle catalog. The first 17 entries follow the table row order
// (string, boolean, number, array, array of numbers); the remaining ones lift
// the string/boolean/number oracles to every element of an array.
enum class OracleType {
  kStringIsUrl,
  kStringIsNumeric,
  kStringSpecificValues,
  kStringIsEmail,
  kStringIsDate,
  kStringFixedLength,
  kStringIsTime,
  kBooleanAlwaysTrue,
  kBooleanAlwaysFalse,
  kNumberMinValue,
  kNumberMaxValue,
  kNumberSpecificValues,
  kArrayMinSize,
  kArrayMaxSize,
  kArraySpecificSizes,
  kArrayNumberAscOrder,
  kArrayNumberDescOrder,
  kArrayStringIsUrl,
  kArrayStringIsNumeric,
  kArrayStringSpecificValues,
  kArrayStringIsEmail,
  kArrayStringIsDate,
  kArrayStringFixedLength,
  kArrayStringIsTime,
  kArrayBooleanAlwaysTrue,
  kArrayBooleanAlwaysFalse,
  kArrayNumberMinValue,
  kArrayNumberMaxValue,
  kArrayNumberSpecificValues,
};

inline constexpr int kBaseOracleTypeCount = 17;
inline constexpr int kOracleTypeCount = 29;

const std::vector<OracleType>& AllOracleTypes();
// JSON property name, e.g. "string_is_url" or "array_string_is_url".
std::string_view OracleKey(OracleType type);
std::optional<OracleType> ParseOracleKey(std::string_view key);

bool IsLifted(OracleType type);
// Lifted types map to their element oracle; others map to themselves.
OracleType BaseType(OracleType type);
// Element-lifted variant of a string/boolean/number oracle.
std::optional<OracleType> LiftedType(OracleType base);
// Datatype of the observed JSON value an oracle is checked against.
Datatype ObservedDatatype(OracleType type);

// Oracle types applicable to a field, in question order: the datatype's
// row for primitives; element oracles, sizes, then ordering for arrays.
std::vector<OracleType> ApplicableOracles(const ResponseField& field);
std::vector<OracleType> ApplicableOracles(Datatype datatype,
                                          std::optional<Datatype> element);

enum class ValueKind { kFlag, kCount, kBound, kStringSet, kNumberSet, kSizeSet };
ValueKind KindOf(OracleType type);

struct FlagValue {
  bool value = false;
  bool operator==(const FlagValue&) const = default;
};
// Non-negative integer or absent (fixed_length, min_size, max_size).
struct CountValue {
  std::optional<std::uint64_t> value;
  bool operator==(const CountValue&) const = default;
};
// Number or absent (min_value, max_value).
struct BoundValue {
  std::optional<double> value;
  bool operator==(const BoundValue&) const = default;
};
struct StringSetValue {
  std::vector<std::string> values;
  bool operator==(const StringSetValue&) const = default;
};
struct NumberSetValue {
  std::vector<double> values;
  bool operator==(const NumberSetValue&) const = default;
};
struct SizeSetValue {
  std::vector<std::uint64_t> values;
  bool operator==(const SizeSetValue&) const = default;
};

using OracleValue = std::variant<FlagValue, CountValue, BoundValue,
                                 StringSetValue, NumberSetValue, SizeSetValue>;

// False for the no-oracle encodings: false flags, empty sets, absent numbers.
bool IsAsserted(const OracleValue& value);
OracleValue NoOracle(OracleType type);
bool KindMatches(OracleType type, const OracleValue& value);
// Scoring equality: set equality ignoring order and duplicates, numeric
// equality for bounds, integer equality for lengths.
bool ValuesMatch(const OracleValue& a, const OracleValue& b);

Json ValueToJson(const OracleValue& value);
// Strict decoding of an oracle value in its canonical JSON shape. `null`,
// `false` and `[]` decode to the no-oracle encoding. Throws OracleFormatError.
OracleValue ValueFromJson(OracleType type, const Json& json);
// Integral doubles within 2^53 render as JSON integers.
Json NumberToJson(double value);
std::string ValueToString(const OracleValue& value);

enum class Provenance { kLlm, kHeuristic, kHumanEdited, kGroundTruth };
std::string_view ProvenanceName(Provenance provenance);
std::optional<Provenance> ParseProvenance(std::string_view name);

// Asserted oracles of one operation keyed by field path, then oracle type.
struct OracleSet {
  std::string operation_id;
  std::map<JsonPath, std::map<OracleType, OracleValue>> entries;
  std::map<JsonPath, Provenance> provenance;

  // Stores the value when asserted, removes the cell otherwise.
  void Set(const JsonPath& path, OracleType type, OracleValue value);
  const OracleValue* Find(const JsonPath& path, OracleType type) const;
  std::size_t AssertedCount() const;
  bool empty() const { return entries.empty(); }

  // {"operationId", "fields": {"<path>": {"<oracle_key>": value}},
  //  "provenance": {"<path>": "llm"}}
  Json ToJson() const;
  // Accepts hand-edited files: no-oracle encodings are dropped. Throws
  // OracleFormatError on unknown keys, bad paths or mistyped values.
  static OracleSet FromJson(const Json& json);

  bool operator==(const OracleSet&) const = default;
};

}  // namespace restoracle

#endif  // RESTORACLE_ORACLE_H_
