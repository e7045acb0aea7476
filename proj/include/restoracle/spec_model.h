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

#ifndef RESTORACLE_SPEC_MODEL_H_
#define RESTORACLE_SPEC_MODEL_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "restoracle/json_path.h"

namespace restoracle {

enum class Datatype { kString, kBoolean, kNumber, kInteger, kObject, kArray };

std::string_view DatatypeName(Datatype type);
std::optional<Datatype> ParseDatatype(std::string_view name);
// Integer and number share one oracle family.
Datatype OracleDatatype(Datatype type);

// Non-fatal finding attached to a load or an extraction. `code` is one of
// CyclicSchema, PolymorphicSchema, AllOfConflict, SkippedMediaType,
// NoJsonResponse, UntypedArrayItems, DuplicateOperationId.
struct SpecWarning {
  std::string code;
  std::string operation_id;
  std::string location;
  std::string message;

  Json ToJson() const;
};

struct ResponseField {
  JsonPath path;
  std::string name;
  Datatype datatype = Datatype::kString;
  std::optional<Datatype> element_datatype;
  std::optional<std::string> description;
  std::optional<Json> example;
  std::optional<std::string> format;
  std::optional<std::vector<Json>> enum_values;
  bool nullable = false;
  // Remaining validation keywords (minimum, maxLength, minItems, ...). For
  // arrays of primitives an "items" object carries the element's type,
  // format, enum and bounds.
  Json constraints = Json::object();

  Json ToJson() const;
  static ResponseField FromJson(const Json& json);

  bool operator==(const ResponseField&) const = default;
};

struct OperationRef {
  std::string operation_id;
  std::string http_method;  // upper case
  std::string path_template;
  std::string summary;
  std::string description;
  // Status key of the selected 2XX/default response; empty when none.
  std::string success_status;
  // Selected `application/json` schema, unresolved; null when the operation
  // has no JSON success body.
  Json success_schema;
};

class ApiSpec {
 public:
  // Both throw ParseError, RefError or UnsupportedVersion.
  static ApiSpec Load(const std::filesystem::path& path);
  static ApiSpec FromText(std::string_view text,
                          std::string_view source_name = "<memory>");

  const std::string& title() const { return title_; }
  const std::string& openapi_version() const { return openapi_version_; }
  const std::vector<OperationRef>& operations() const { return operations_; }
  const std::vector<SpecWarning>& warnings() const { return warnings_; }
  const Json& document() const { return document_; }

  // Throws UnknownOperation.
  const OperationRef& FindOperation(std::string_view operation_id) const;

  // Resolves a local `#/...` reference. Throws RefError.
  const Json& ResolveRef(std::string_view ref) const;

 private:
  ApiSpec() = default;

  Json document_;
  std::string title_;
  std::string openapi_version_;
  std::vector<OperationRef> operations_;
  std::vector<SpecWarning> warnings_;
};

struct ExtractOptions {
  // Throw CyclicSchema instead of attaching a warning.
  bool strict_cycles = false;
};

struct Extraction {
  std::vector<ResponseField> fields;
  std::vector<SpecWarning> warnings;
};

// Depth-first flattening of an operation's success schema. Throws
// UnknownOperation.
Extraction ExtractFields(const ApiSpec& spec, std::string_view operation_id,
                         const ExtractOptions& options = {});

// Parses YAML or JSON text into an ordered JSON document. Plain YAML scalars
// are typed with the YAML 1.2 core schema; quoted scalars stay strings.
// Throws ParseError.
Json ParseDocument(std::string_view text, std::string_view source_name);

// Reads a whole file; throws ParseError when it cannot be opened.
std::string ReadFile(const std::filesystem::path& path);

}  // namespace restoracle

#endif  // RESTORACLE_SPEC_MODEL_H_
