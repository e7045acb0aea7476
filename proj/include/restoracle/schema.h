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

#ifndef RESTORACLE_SCHEMA_H_
#define RESTORACLE_SCHEMA_H_

#include <optional>
#include <string>
#include <vector>

#include "restoracle/json_path.h"
#include "restoracle/spec_model.h"

namespace restoracle {

// Chases `$ref`, merges `allOf` and picks the first non-null branch of
// `oneOf`/`anyOf`. References already listed in `active_refs` denote a cycle.
struct EffectiveSchema {
  Json schema = Json::object();
  // References consumed while resolving this node.
  std::vector<std::string> refs;
  std::vector<SpecWarning> warnings;
  bool cyclic = false;
  std::string cycle;  // "A -> B -> A" when cyclic
};

EffectiveSchema ResolveSchema(const ApiSpec& spec, const Json& schema,
                              const std::vector<std::string>& active_refs = {});

// Declared type of an effective schema after folding OAS 3.1 type arrays and
// inference from properties/items/enum. Empty for schemas that constrain
// nothing.
struct SchemaType {
  std::optional<Datatype> type;
  bool nullable = false;
};
SchemaType ClassifySchema(const Json& effective);

// Validates `value` against an operation schema. Returns human-readable
// errors, empty when valid. Checks type, nullability, enum, properties,
// required, items, string length and pattern, numeric bounds and multipleOf,
// array size and uniqueness.
std::vector<std::string> ValidateAgainstSchema(const ApiSpec& spec,
                                               const Json& schema,
                                               const Json& value);

// Number of Unicode code points in a UTF-8 string.
std::size_t CodePointLength(std::string_view utf8);

}  // namespace restoracle

#endif  // RESTORACLE_SCHEMA_H_
