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

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>

#include "restoracle/errors.h"
#include "restoracle/schema.h"

namespace restoracle {
namespace {

constexpr std::array<std::string_view, 8> kHttpMethods = {
    "get", "put", "post", "delete", "options", "head", "patch", "trace"};

constexpr std::array<std::string_view, 11> kConstraintKeywords = {
    "minimum",   "maximum",   "exclusiveMinimum", "exclusiveMaximum",
    "multipleOf", "minLength", "maxLength",        "pattern",
    "minItems",  "maxItems",  "uniqueItems"};

std::string ToUpper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string PercentDecode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
        std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
      out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

void CheckRefs(const ApiSpec& spec, const Json& node) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (it.key() == "$ref" && it->is_string()) {
        spec.ResolveRef(it->get<std::string>());
      } else {
        CheckRefs(spec, it.value());
      }
    }
  } else if (node.is_array()) {
    for (const auto& child : node) CheckRefs(spec, child);
  }
}

bool IsJsonMediaType(std::string media) {
  auto semicolon = media.find(';');
  if (semicolon != std::string::npos) media.resize(semicolon);
  while (!media.empty() && std::isspace(static_cast<unsigned char>(media.back()))) media.pop_back();
  std::transform(media.begin(), media.end(), media.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return media == "application/json";
}

// Candidate success responses in preference order: "200", other 2XX codes
// ascending, the "2XX" range, then "default".
std::vector<std::string> SuccessCandidates(const Json& responses) {
  std::vector<std::string> numeric;
  bool has_200 = false;
  bool has_range = false;
  bool has_default = false;
  for (auto it = responses.begin(); it != responses.end(); ++it) {
    const std::string& key = it.key();
    if (key == "200") {
      has_200 = true;
    } else if (key.size() == 3 && key[0] == '2' && std::isdigit(static_cast<unsigned char>(key[1])) &&
               std::isdigit(static_cast<unsigned char>(key[2]))) {
      numeric.push_back(key);
    } else if (key == "2XX" || key == "2xx") {
      has_range = true;
    } else if (key == "default") {
      has_default = true;
    }
  }
  std::sort(numeric.begin(), numeric.end());
  std::vector<std::string> out;
  if (has_200) out.push_back("200");
  out.insert(out.end(), numeric.begin(), numeric.end());
  if (has_range) out.push_back(responses.contains("2XX") ? "2XX" : "2xx");
  if (has_default) out.push_back("default");
  return out;
}

void SelectSuccess(const ApiSpec& spec, const Json& operation, OperationRef& op,
                   std::vector<SpecWarning>& warnings) {
  if (!operation.contains("responses") || !operation["responses"].is_object()) return;
  const Json& responses = operation["responses"];
  for (const auto& status : SuccessCandidates(responses)) {
    Json response = responses[status];
    if (response.contains("$ref") && response["$ref"].is_string()) {
      response = spec.ResolveRef(response["$ref"].get<std::string>());
    }
    if (!response.contains("content") || !response["content"].is_object()) continue;
    const Json* schema = nullptr;
    for (auto it = response["content"].begin(); it != response["content"].end(); ++it) {
      if (IsJsonMediaType(it.key())) {
        if (!schema && it->contains("schema")) schema = &(*it)["schema"];
      } else {
        warnings.push_back({"SkippedMediaType", op.operation_id, status,
                            "media type '" + it.key() + "' ignored"});
      }
    }
    if (schema) {
      op.success_status = status;
      op.success_schema = *schema;
      return;
    }
  }
  warnings.push_back({"NoJsonResponse", op.operation_id, "",
                      "no 2XX/default application/json response schema"});
}

class Flattener {
 public:
  Flattener(const ApiSpec& spec, std::string operation_id, const ExtractOptions& options,
            Extraction& out)
      : spec_(spec), operation_id_(std::move(operation_id)), options_(options), out_(out) {}

  void Flatten(const Json& schema, const JsonPath& path, std::vector<std::string> active) {
    EffectiveSchema effective = ResolveSchema(spec_, schema, active);
    Absorb(effective, path);
    if (effective.cyclic) return;
    active.insert(active.end(), effective.refs.begin(), effective.refs.end());
    FlattenEffective(effective.schema, path, active);
  }

 private:
  void Absorb(const EffectiveSchema& effective, const JsonPath& path) {
    for (auto warning : effective.warnings) {
      warning.operation_id = operation_id_;
      warning.location = path.str();
      out_.warnings.push_back(std::move(warning));
    }
    if (effective.cyclic) {
      std::string message = "recursive schema cut at " + path.str() + ": " + effective.cycle;
      if (options_.strict_cycles) throw CyclicSchema(message);
      out_.warnings.push_back({"CyclicSchema", operation_id_, path.str(), message});
    }
  }

  void FlattenEffective(const Json& s, const JsonPath& path, const std::vector<std::string>& active) {
    SchemaType type = ClassifySchema(s);
    if (!type.type) return;
    switch (*type.type) {
      case Datatype::kObject:
        if (s.contains("properties") && s["properties"].is_object()) {
          for (auto it = s["properties"].begin(); it != s["properties"].end(); ++it) {
            Flatten(it.value(), path.Child(it.key()), active);
          }
        }
        return;
      case Datatype::kArray: {
        ResponseField field = Describe(s, path, type);
        if (!s.contains("items")) {
          field.element_datatype = Datatype::kObject;
          out_.warnings.push_back({"UntypedArrayItems", operation_id_, path.str(),
                                   "array without items schema"});
          out_.fields.push_back(std::move(field));
          return;
        }
        EffectiveSchema items = ResolveSchema(spec_, s["items"], active);
        Absorb(items, path.Elements());
        SchemaType item_type = ClassifySchema(items.schema);
        if (items.cyclic || !item_type.type) {
          field.element_datatype = Datatype::kObject;
          out_.fields.push_back(std::move(field));
          return;
        }
        field.element_datatype = *item_type.type;
        if (*item_type.type != Datatype::kObject && *item_type.type != Datatype::kArray) {
          field.constraints["items"] = ItemsSummary(items.schema, item_type);
        }
        out_.fields.push_back(std::move(field));
        if (*item_type.type == Datatype::kObject || *item_type.type == Datatype::kArray) {
          std::vector<std::string> nested = active;
          nested.insert(nested.end(), items.refs.begin(), items.refs.end());
          FlattenEffective(items.schema, path.Elements(), nested);
        }
        return;
      }
      default:
        out_.fields.push_back(Describe(s, path, type));
        return;
    }
  }

  static ResponseField Describe(const Json& s, const JsonPath& path, const SchemaType& type) {
    ResponseField field;
    field.path = path;
    field.name = path.LastName();
    field.datatype = *type.type;
    field.nullable = type.nullable;
    if (s.contains("description") && s["description"].is_string()) {
      field.description = s["description"].get<std::string>();
    }
    if (s.contains("example")) {
      field.example = s["example"];
    } else if (s.contains("examples") && s["examples"].is_array() && !s["examples"].empty()) {
      field.example = s["examples"][0];
    }
    if (s.contains("format") && s["format"].is_string()) {
      field.format = s["format"].get<std::string>();
    }
    if (s.contains("enum") && s["enum"].is_array()) {
      std::vector<Json> values;
      for (const auto& v : s["enum"]) {
        if (!v.is_null()) values.push_back(v);
      }
      field.enum_values = std::move(values);
    }
    for (auto keyword : kConstraintKeywords) {
      std::string key(keyword);
      if (s.contains(key)) field.constraints[key] = s[key];
    }
    return field;
  }

  static Json ItemsSummary(const Json& s, const SchemaType& type) {
    Json items = Json::object();
    items["type"] = std::string(DatatypeName(*type.type));
    if (s.contains("format")) items["format"] = s["format"];
    if (s.contains("enum")) items["enum"] = s["enum"];
    if (type.nullable) items["nullable"] = true;
    for (auto keyword : kConstraintKeywords) {
      std::string key(keyword);
      if (s.contains(key)) items[key] = s[key];
    }
    return items;
  }

  const ApiSpec& spec_;
  std::string operation_id_;
  const ExtractOptions& options_;
  Extraction& out_;
};

}  // namespace

std::string_view DatatypeName(Datatype type) {
  switch (type) {
    case Datatype::kString: return "string";
    case Datatype::kBoolean: return "boolean";
    case Datatype::kNumber: return "number";
    case Datatype::kInteger: return "integer";
    case Datatype::kObject: return "object";
    case Datatype::kArray: return "array";
  }
  return "string";
}

std::optional<Datatype> ParseDatatype(std::string_view name) {
  if (name == "string") return Datatype::kString;
  if (name == "boolean") return Datatype::kBoolean;
  if (name == "number") return Datatype::kNumber;
  if (name == "integer") return Datatype::kInteger;
  if (name == "object") return Datatype::kObject;
  if (name == "array") return Datatype::kArray;
  return std::nullopt;
}

Datatype OracleDatatype(Datatype type) {
  return type == Datatype::kInteger ? Datatype::kNumber : type;
}

Json SpecWarning::ToJson() const {
  Json out = Json::object();
  out["code"] = code;
  out["operationId"] = operation_id;
  out["location"] = location;
  out["message"] = message;
  return out;
}

Json ResponseField::ToJson() const {
  Json out = Json::object();
  out["path"] = path.str();
  out["name"] = name;
  out["datatype"] = std::string(DatatypeName(datatype));
  if (element_datatype) out["elementDatatype"] = std::string(DatatypeName(*element_datatype));
  if (description) out["description"] = *description;
  if (example) out["example"] = *example;
  if (format) out["format"] = *format;
  if (enum_values) out["enum"] = *enum_values;
  out["nullable"] = nullable;
  if (!constraints.empty()) out["constraints"] = constraints;
  return out;
}

ResponseField ResponseField::FromJson(const Json& json) {
  ResponseField field;
  try {
    field.path = JsonPath::Parse(json.at("path").get<std::string>());
    field.name = json.value("name", field.path.LastName());
    auto type = ParseDatatype(json.at("datatype").get<std::string>());
    if (!type) throw ParseError("unknown datatype in field record");
    field.datatype = *type;
    if (json.contains("elementDatatype")) {
      field.element_datatype = ParseDatatype(json["elementDatatype"].get<std::string>());
    }
    if (json.contains("description")) field.description = json["description"].get<std::string>();
    if (json.contains("example")) field.example = json["example"];
    if (json.contains("format")) field.format = json["format"].get<std::string>();
    if (json.contains("enum")) field.enum_values = json["enum"].get<std::vector<Json>>();
    field.nullable = json.value("nullable", false);
    if (json.contains("constraints")) field.constraints = json["constraints"];
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad field record: ") + e.what());
  }
  return field;
}

ApiSpec ApiSpec::Load(const std::filesystem::path& path) {
  return FromText(ReadFile(path), path.string());
}

ApiSpec ApiSpec::FromText(std::string_view text, std::string_view source_name) {
  ApiSpec spec;
  spec.document_ = ParseDocument(text, source_name);
  const Json& doc = spec.document_;
  if (!doc.is_object()) throw ParseError(std::string(source_name) + ": not a mapping");
  if (doc.contains("swagger")) {
    throw UnsupportedVersion(std::string(source_name) + ": Swagger/OpenAPI 2.0 is not supported");
  }
  if (!doc.contains("openapi")) {
    throw UnsupportedVersion(std::string(source_name) + ": missing 'openapi' version");
  }
  const Json& version = doc["openapi"];
  spec.openapi_version_ = version.is_string() ? version.get<std::string>() : version.dump();
  if (!spec.openapi_version_.starts_with("3.")) {
    throw UnsupportedVersion(std::string(source_name) + ": OpenAPI " + spec.openapi_version_ +
                             " is not 3.x");
  }
  spec.title_ = "API";
  if (doc.contains("info") && doc["info"].is_object() && doc["info"].contains("title") &&
      doc["info"]["title"].is_string()) {
    spec.title_ = doc["info"]["title"].get<std::string>();
  }
  CheckRefs(spec, doc);

  if (!doc.contains("paths") || !doc["paths"].is_object()) return spec;
  for (auto path_it = doc["paths"].begin(); path_it != doc["paths"].end(); ++path_it) {
    const std::string& path = path_it.key();
    if (!path.starts_with("/")) {
      throw ParseError(std::string(source_name) + ": path '" + path + "' does not start with '/'");
    }
    Json item = path_it.value();
    if (item.contains("$ref") && item["$ref"].is_string()) {
      item = spec.ResolveRef(item["$ref"].get<std::string>());
    }
    if (!item.is_object()) continue;
    for (auto op_it = item.begin(); op_it != item.end(); ++op_it) {
      if (std::find(kHttpMethods.begin(), kHttpMethods.end(), op_it.key()) == kHttpMethods.end()) {
        continue;
      }
      const Json& operation = op_it.value();
      OperationRef op;
      op.http_method = ToUpper(op_it.key());
      op.path_template = path;
      if (operation.contains("operationId") && operation["operationId"].is_string() &&
          !operation["operationId"].get<std::string>().empty()) {
        op.operation_id = operation["operationId"].get<std::string>();
      } else {
        op.operation_id = op.http_method + " " + path;
      }
      for (const auto& other : spec.operations_) {
        if (other.operation_id == op.operation_id) {
          spec.warnings_.push_back({"DuplicateOperationId", op.operation_id, path,
                                    "operationId used more than once; first wins on lookup"});
        }
      }
      op.summary = operation.value("summary", Json("")).is_string()
                       ? operation.value("summary", std::string())
                       : std::string();
      op.description = operation.value("description", Json("")).is_string()
                           ? operation.value("description", std::string())
                           : std::string();
      SelectSuccess(spec, operation, op, spec.warnings_);
      spec.operations_.push_back(std::move(op));
    }
  }
  return spec;
}

const OperationRef& ApiSpec::FindOperation(std::string_view operation_id) const {
  for (const auto& op : operations_) {
    if (op.operation_id == operation_id) return op;
  }
  throw UnknownOperation("unknown operation '" + std::string(operation_id) + "'");
}

const Json& ApiSpec::ResolveRef(std::string_view ref) const {
  if (!ref.starts_with("#")) {
    throw RefError("external reference '" + std::string(ref) + "' is not supported");
  }
  std::string pointer = PercentDecode(ref.substr(1));
  try {
    const Json& target = document_.at(Json::json_pointer(pointer));
    return target;
  } catch (const Json::exception&) {
    throw RefError("unresolvable reference '" + std::string(ref) + "'");
  }
}

Extraction ExtractFields(const ApiSpec& spec, std::string_view operation_id,
                         const ExtractOptions& options) {
  const OperationRef& op = spec.FindOperation(operation_id);
  Extraction out;
  if (op.success_schema.is_null()) return out;
  Flattener flattener(spec, op.operation_id, options, out);
  flattener.Flatten(op.success_schema, JsonPath(), {});
  return out;
}

}  // namespace restoracle
