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

#ifndef RESTORACLE_PROMPT_H_
#define RESTORACLE_PROMPT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "restoracle/json_path.h"
#include "restoracle/oracle.h"
#include "restoracle/spec_model.h"

namespace restoracle {

// Prompt wording, loaded from a versioned template file. Placeholders are
// written as {name}.
struct PromptTemplates {
  struct Question {
    std::string question;
    std::string answer_type;
    std::string no_oracle;
  };

  std::string version;
  std::string system;
  std::string context;      // {operation_id} {api_name} {field_name} {datatype}
  std::string properties;   // header line of the properties section
  std::string task;
  std::string question;     // {index} {question} {property} {answer_type} {no_oracle}
  std::string response_format;  // {properties}
  std::map<OracleType, Question> questions;

  // Templates compiled from data/prompt_templates.json.
  static const PromptTemplates& Default();
  // Throws ConfigError when a section or one of the oracle questions is
  // missing.
  static PromptTemplates FromJson(const Json& json);
  static PromptTemplates Load(const std::filesystem::path& path);
};

struct OracleQuestion {
  int index = 0;
  std::string question;
  std::string json_property;
  std::string answer_type;
  std::string no_oracle_encoding;

  Json ToJson() const;
  static OracleQuestion FromJson(const Json& json);
  bool operator==(const OracleQuestion&) const = default;
};

struct PromptBundle {
  JsonPath field_path;
  std::string api_name;
  std::string operation_id;
  Datatype datatype = Datatype::kString;
  std::optional<Datatype> element_datatype;
  std::string template_version;
  std::string system_prompt;
  // Context, properties and oracles sections separated by blank lines.
  std::string user_prompt;
  std::vector<std::string> expected_keys;
  std::vector<OracleQuestion> questions;
  // Field metadata the prompt was built from; the offline backend reads it.
  ResponseField field;

  std::vector<OracleType> ExpectedTypes() const;

  Json ToJson() const;
  static PromptBundle FromJson(const Json& json);
  bool operator==(const PromptBundle&) const = default;
};

// Type name used in the context section: integer folds into number, arrays
// name their element type ("array of string").
std::string PromptTypeName(Datatype datatype, std::optional<Datatype> element);

// `"key": value` lines of the properties section. Strings are JSON-quoted;
// structured values render as compact JSON on one line.
std::string RenderProperties(const ResponseField& field);

// Throws UnsupportedDatatype for object fields.
PromptBundle BuildPrompt(std::string_view api_name, std::string_view operation_id,
                         const ResponseField& field,
                         const PromptTemplates& templates = PromptTemplates::Default());

// One bundle per oracle-bearing field in extraction order. Throws
// UnknownOperation.
std::vector<PromptBundle> BuildOperationPrompts(
    const ApiSpec& spec, std::string_view operation_id,
    const PromptTemplates& templates = PromptTemplates::Default(),
    const ExtractOptions& options = {});

std::string BundlesToJsonl(const std::vector<PromptBundle>& bundles);
std::vector<PromptBundle> BundlesFromJsonl(std::string_view text);

}  // namespace restoracle

#endif  // RESTORACLE_PROMPT_H_
