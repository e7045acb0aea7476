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

#include "restoracle/prompt.h"

#include <sstream>

#include "restoracle/errors.h"

namespace restoracle {
namespace {

#include "prompt_templates.inc"

std::string Fill(std::string_view text, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      std::size_t close = text.find('}', i);
      if (close != std::string_view::npos) {
        auto it = values.find(std::string(text.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += text[i++];
  }
  return out;
}

std::string Dump(const Json& value) {
  return value.dump(-1, ' ', false, Json::error_handler_t::replace);
}

std::string RequireString(const Json& json, const char* key) {
  if (!json.contains(key) || !json[key].is_string()) {
    throw ConfigError(std::string("prompt templates: missing string '") + key + "'");
  }
  return json[key].get<std::string>();
}

}  // namespace

const PromptTemplates& PromptTemplates::Default() {
  static const PromptTemplates templates = FromJson(Json::parse(kDefaultTemplates));
  return templates;
}

PromptTemplates PromptTemplates::FromJson(const Json& json) {
  if (!json.is_object()) throw ConfigError("prompt templates: expected a JSON object");
  PromptTemplates t;
  t.version = RequireString(json, "version");
  t.system = RequireString(json, "system");
  t.context = RequireString(json, "context");
  t.properties = RequireString(json, "properties");
  t.task = RequireString(json, "task");
  t.question = RequireString(json, "question");
  t.response_format = RequireString(json, "responseFormat");
  if (!json.contains("questions") || !json["questions"].is_object()) {
    throw ConfigError("prompt templates: missing 'questions'");
  }
  for (auto it = json["questions"].begin(); it != json["questions"].end(); ++it) {
    auto type = ParseOracleKey(it.key());
    if (!type) throw ConfigError("prompt templates: unknown oracle '" + it.key() + "'");
    t.questions[*type] = {RequireString(*it, "question"), RequireString(*it, "answerType"),
                          RequireString(*it, "noOracle")};
  }
  for (OracleType type : AllOracleTypes()) {
    if (!t.questions.contains(type)) {
      throw ConfigError("prompt templates: no question for '" + std::string(OracleKey(type)) + "'");
    }
  }
  return t;
}

PromptTemplates PromptTemplates::Load(const std::filesystem::path& path) {
  try {
    return FromJson(Json::parse(ReadFile(path)));
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Json OracleQuestion::ToJson() const {
  return Json{{"index", index},
              {"question", question},
              {"jsonProperty", json_property},
              {"answerType", answer_type},
              {"noOracleEncoding", no_oracle_encoding}};
}

OracleQuestion OracleQuestion::FromJson(const Json& json) {
  OracleQuestion q;
  q.index = json.at("index").get<int>();
  q.question = json.at("question").get<std::string>();
  q.json_property = json.at("jsonProperty").get<std::string>();
  q.answer_type = json.at("answerType").get<std::string>();
  q.no_oracle_encoding = json.at("noOracleEncoding").get<std::string>();
  return q;
}

std::vector<OracleType> PromptBundle::ExpectedTypes() const {
  std::vector<OracleType> out;
  for (const auto& key : expected_keys) {
    if (auto type = ParseOracleKey(key)) out.push_back(*type);
  }
  return out;
}

Json PromptBundle::ToJson() const {
  Json out = Json::object();
  out["fieldPath"] = field_path.str();
  out["apiName"] = api_name;
  out["operationId"] = operation_id;
  out["datatype"] = std::string(DatatypeName(datatype));
  if (element_datatype) out["elementDatatype"] = std::string(DatatypeName(*element_datatype));
  out["templateVersion"] = template_version;
  out["systemPrompt"] = system_prompt;
  out["userPrompt"] = user_prompt;
  out["expectedKeys"] = expected_keys;
  out["questions"] = Json::array();
  for (const auto& q : questions) out["questions"].push_back(q.ToJson());
  out["field"] = field.ToJson();
  return out;
}

PromptBundle PromptBundle::FromJson(const Json& json) {
  try {
    PromptBundle b;
    b.field_path = JsonPath::Parse(json.at("fieldPath").get<std::string>());
    b.api_name = json.at("apiName").get<std::string>();
    b.operation_id = json.at("operationId").get<std::string>();
    auto datatype = ParseDatatype(json.at("datatype").get<std::string>());
    if (!datatype) throw ParseError("bad datatype in prompt bundle");
    b.datatype = *datatype;
    if (json.contains("elementDatatype")) {
      b.element_datatype = ParseDatatype(json["elementDatatype"].get<std::string>());
    }
    b.template_version = json.at("templateVersion").get<std::string>();
    b.system_prompt = json.at("systemPrompt").get<std::string>();
    b.user_prompt = json.at("userPrompt").get<std::string>();
    b.expected_keys = json.at("expectedKeys").get<std::vector<std::string>>();
    for (const auto& q : json.at("questions")) b.questions.push_back(OracleQuestion::FromJson(q));
    b.field = ResponseField::FromJson(json.at("field"));
    return b;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("prompt bundle: ") + e.what());
  }
}

std::string PromptTypeName(Datatype datatype, std::optional<Datatype> element) {
  std::string name(DatatypeName(OracleDatatype(datatype)));
  if (datatype == Datatype::kArray && element) {
    name += " of " + std::string(DatatypeName(OracleDatatype(*element)));
  }
  return name;
}

std::string RenderProperties(const ResponseField& field) {
  std::string out;
  auto line = [&](std::string_view key, const Json& value) {
    out += "\"" + std::string(key) + "\": " + Dump(value) + "\n";
  };
  line("name", field.name);
  line("type", std::string(DatatypeName(field.datatype)));
  if (field.description) line("description", *field.description);
  if (field.example) line("example", *field.example);
  if (field.format) line("format", *field.format);
  if (field.enum_values) line("enum", Json(*field.enum_values));
  if (field.nullable) line("nullable", true);
  for (auto it = field.constraints.begin(); it != field.constraints.end(); ++it) {
    line(it.key(), it.value());
  }
  if (!out.empty()) out.pop_back();
  return out;
}

PromptBundle BuildPrompt(std::string_view api_name, std::string_view operation_id,
                         const ResponseField& field, const PromptTemplates& templates) {
  if (field.datatype == Datatype::kObject) {
    throw UnsupportedDatatype("field '" + field.path.str() +
                              "' is an object; flatten it before prompting");
  }
  PromptBundle b;
  b.field_path = field.path;
  b.api_name = std::string(api_name);
  b.operation_id = std::string(operation_id);
  b.datatype = field.datatype;
  b.element_datatype = field.element_datatype;
  b.template_version = templates.version;
  b.system_prompt = templates.system;
  b.field = field;

  std::string context = Fill(templates.context,
                             {{"operation_id", b.operation_id},
                              {"api_name", b.api_name},
                              {"field_name", field.name},
                              {"datatype", PromptTypeName(field.datatype, field.element_datatype)}});
  std::string properties = templates.properties + "\n" + RenderProperties(field);

  std::string oracles = templates.task + "\n";
  std::string key_list;
  int index = 0;
  for (OracleType type : ApplicableOracles(field)) {
    const auto& t = templates.questions.at(type);
    OracleQuestion q{++index, t.question, std::string(OracleKey(type)), t.answer_type,
                     t.no_oracle};
    oracles += "\n" + Fill(templates.question, {{"index", std::to_string(q.index)},
                                                {"question", q.question},
                                                {"property", q.json_property},
                                                {"answer_type", q.answer_type},
                                                {"no_oracle", q.no_oracle_encoding}}) +
               "\n";
    key_list += (key_list.empty() ? "" : ", ") + q.json_property;
    b.expected_keys.push_back(q.json_property);
    b.questions.push_back(std::move(q));
  }
  oracles += "\n" + Fill(templates.response_format, {{"properties", key_list}});
  b.user_prompt = context + "\n\n" + properties + "\n\n" + oracles;
  return b;
}

std::vector<PromptBundle> BuildOperationPrompts(const ApiSpec& spec, std::string_view operation_id,
                                                const PromptTemplates& templates,
                                                const ExtractOptions& options) {
  const OperationRef& op = spec.FindOperation(operation_id);
  std::vector<PromptBundle> bundles;
  for (const auto& field : ExtractFields(spec, op.operation_id, options).fields) {
    if (field.datatype == Datatype::kObject) continue;
    bundles.push_back(BuildPrompt(spec.title(), op.operation_id, field, templates));
  }
  return bundles;
}

std::string BundlesToJsonl(const std::vector<PromptBundle>& bundles) {
  std::string out;
  for (const auto& b : bundles) out += Dump(b.ToJson()) + "\n";
  return out;
}

std::vector<PromptBundle> BundlesFromJsonl(std::string_view text) {
  std::vector<PromptBundle> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(PromptBundle::FromJson(Json::parse(line)));
    } catch (const Json::parse_error& e) {
      throw ParseError("prompt bundles line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace restoracle
