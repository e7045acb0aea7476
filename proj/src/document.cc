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

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "restoracle/errors.h"
#include "restoracle/spec_model.h"
#include "yaml-cpp/yaml.h"

namespace restoracle {
namespace {

// YAML 1.2 core schema resolution for plain scalars.
Json ResolvePlainScalar(const std::string& text) {
  static const std::regex kNull("^(?:null|Null|NULL|~|)$");
  static const std::regex kTrue("^(?:true|True|TRUE)$");
  static const std::regex kFalse("^(?:false|False|FALSE)$");
  static const std::regex kInt("^[-+]?[0-9]+$");
  static const std::regex kOct("^0o[0-7]+$");
  static const std::regex kHex("^0x[0-9a-fA-F]+$");
  static const std::regex kFloat(
      "^[-+]?(?:\\.[0-9]+|[0-9]+(?:\\.[0-9]*)?)(?:[eE][-+]?[0-9]+)?$");
  if (std::regex_match(text, kNull)) return nullptr;
  if (std::regex_match(text, kTrue)) return true;
  if (std::regex_match(text, kFalse)) return false;
  try {
    if (std::regex_match(text, kInt)) {
      if (text[0] == '-') return std::stoll(text);
      return std::stoull(text[0] == '+' ? text.substr(1) : text);
    }
    if (std::regex_match(text, kOct)) return std::stoull(text.substr(2), nullptr, 8);
    if (std::regex_match(text, kHex)) return std::stoull(text.substr(2), nullptr, 16);
    if (std::regex_match(text, kFloat)) {
      double value = std::stod(text);
      if (std::isfinite(value)) return value;
    }
  } catch (const std::out_of_range&) {
    // Out-of-range literals stay strings.
  }
  return text;
}

Json ConvertNode(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar:
      // Tag "!" marks quoted (non-plain) scalars.
      if (node.Tag() == "!") return node.Scalar();
      return ResolvePlainScalar(node.Scalar());
    case YAML::NodeType::Sequence: {
      Json array = Json::array();
      for (const auto& child : node) array.push_back(ConvertNode(child));
      return array;
    }
    case YAML::NodeType::Map: {
      Json object = Json::object();
      for (const auto& entry : node) {
        object[entry.first.as<std::string>()] = ConvertNode(entry.second);
      }
      return object;
    }
  }
  return nullptr;
}

}  // namespace

Json ParseDocument(std::string_view text, std::string_view source_name) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos &&
      (text[first] == '{' || text[first] == '[')) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string(source_name) + ": " + e.what());
    }
  }
  try {
    return ConvertNode(YAML::Load(std::string(text)));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string(source_name) + ": " + e.what());
  }
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace restoracle
