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

#include "restoracle/heuristic.h"

#include <algorithm>
#include <cctype>
#include <regex>

namespace restoracle {
namespace {

constexpr const char* kNumber = R"([-+]?[0-9]+(?:\.[0-9]+)?)";

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  const char* space = " \t\r\n";
  std::size_t begin = s.find_first_not_of(space);
  if (begin == std::string_view::npos) return "";
  std::size_t end = s.find_last_not_of(space);
  return std::string(s.substr(begin, end - begin + 1));
}

bool Contains(std::string_view haystack, std::string_view needle) {
  return haystack.find(needle) != std::string_view::npos;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::optional<double> ToNumber(std::string_view s) {
  static const std::regex number(std::string("^") + kNumber + "$");
  std::string text(s);
  if (!std::regex_match(text, number)) return std::nullopt;
  return std::stod(text);
}

std::vector<std::string> SplitItems(std::string_view list) {
  std::vector<std::string> pieces;
  std::string current;
  std::string text(list);
  std::size_t i = 0;
  auto flush = [&] {
    pieces.push_back(Trim(current));
    current.clear();
  };
  while (i < text.size()) {
    if (text.compare(i, 2, ", ") == 0) {
      flush();
      i += 2;
    } else if (text.compare(i, 5, " and ") == 0) {
      flush();
      i += 5;
    } else if (text.compare(i, 4, " or ") == 0) {
      flush();
      i += 4;
    } else {
      current += text[i++];
    }
  }
  flush();
  std::vector<std::string> out;
  for (std::string piece : pieces) {
    for (const char* lead : {"and ", "or "}) {
      if (piece.rfind(lead, 0) == 0) piece = Trim(piece.substr(std::string_view(lead).size()));
    }
    if (piece.size() >= 2 && (piece.front() == '"' || piece.front() == '\'' || piece.front() == '`') &&
        piece.back() == piece.front()) {
      piece = piece.substr(1, piece.size() - 2);
    }
    out.push_back(piece);
  }
  return out;
}

// Cues read from one value profile: a scalar field or the elements of an
// array of primitives.
struct Profile {
  Datatype datatype;
  std::string name;         // lower case
  std::string description;  // lower case
  std::string raw_description;
  std::optional<std::string> format;
  std::optional<Json> enum_values;
  Json constraints = Json::object();
};

std::optional<double> NumberConstraint(const Json& constraints, const char* key) {
  if (constraints.contains(key) && constraints[key].is_number()) {
    return constraints[key].get<double>();
  }
  return std::nullopt;
}

std::optional<std::uint64_t> CountConstraint(const Json& constraints, const char* key) {
  if (constraints.contains(key) && constraints[key].is_number_integer() &&
      constraints[key].get<std::int64_t>() >= 0) {
    return constraints[key].get<std::uint64_t>();
  }
  return std::nullopt;
}

bool IsDigitPattern(const Json& constraints) {
  if (!constraints.contains("pattern") || !constraints["pattern"].is_string()) return false;
  static const std::regex digits(R"(^\^(?:\[0-9\]|\\d)(?:\+|\{[0-9]+(?:,[0-9]*)?\})\$$)");
  return std::regex_match(constraints["pattern"].get<std::string>(), digits);
}

void InferString(const Profile& p, std::map<OracleType, OracleValue>& out) {
  std::string format = p.format ? Lower(*p.format) : "";
  if (format == "uri" || format == "url" || Contains(p.name, "url") || Contains(p.name, "href")) {
    out[OracleType::kStringIsUrl] = FlagValue{true};
  }
  if (format == "email" || format == "idn-email" || Contains(p.name, "email")) {
    out[OracleType::kStringIsEmail] = FlagValue{true};
  }
  if (format == "date" || EndsWith(p.name, "_date")) out[OracleType::kStringIsDate] = FlagValue{true};
  if (format == "time") out[OracleType::kStringIsTime] = FlagValue{true};
  if (Contains(p.description, "numeric string") || Contains(p.description, "decimal string") ||
      Contains(p.description, "string of digits") || IsDigitPattern(p.constraints)) {
    out[OracleType::kStringIsNumeric] = FlagValue{true};
  }

  StringSetValue values;
  if (p.enum_values) {
    for (const auto& v : *p.enum_values) {
      if (v.is_string()) values.values.push_back(v.get<std::string>());
    }
  }
  if (values.values.empty()) {
    std::vector<std::string> listed = ParseOneOf(p.raw_description);
    if (listed.size() >= 2) values.values = listed;
  }
  if (!values.values.empty()) out[OracleType::kStringSpecificValues] = values;

  auto min_length = CountConstraint(p.constraints, "minLength");
  auto max_length = CountConstraint(p.constraints, "maxLength");
  if (min_length && max_length && *min_length == *max_length) {
    out[OracleType::kStringFixedLength] = CountValue{*min_length};
  } else if (auto length = ParseFixedLength(p.raw_description)) {
    out[OracleType::kStringFixedLength] = CountValue{*length};
  }
}

void InferNumber(const Profile& p, std::map<OracleType, OracleValue>& out) {
  std::optional<double> min = NumberConstraint(p.constraints, "minimum");
  std::optional<double> max = NumberConstraint(p.constraints, "maximum");
  if (!min || !max) {
    if (auto range = ParseRange(p.raw_description)) {
      if (!min) min = range->first;
      if (!max) max = range->second;
    }
  }
  if (p.name == "latitude" || p.name == "lat") {
    if (!min) min = -90.0;
    if (!max) max = 90.0;
  }
  if (p.name == "longitude" || p.name == "lng" || p.name == "lon") {
    if (!min) min = -180.0;
    if (!max) max = 180.0;
  }
  if (min) out[OracleType::kNumberMinValue] = BoundValue{*min};
  if (max) out[OracleType::kNumberMaxValue] = BoundValue{*max};

  NumberSetValue values;
  if (p.enum_values) {
    for (const auto& v : *p.enum_values) {
      if (v.is_number()) values.values.push_back(v.get<double>());
    }
  }
  if (values.values.empty()) {
    std::vector<std::string> listed = ParseOneOf(p.raw_description);
    std::vector<double> numbers;
    for (const auto& item : listed) {
      if (auto n = ToNumber(item)) numbers.push_back(*n);
    }
    if (listed.size() >= 2 && numbers.size() == listed.size()) values.values = numbers;
  }
  if (!values.values.empty()) out[OracleType::kNumberSpecificValues] = values;
}

void InferBoolean(const Profile& p, std::map<OracleType, OracleValue>& out) {
  bool only_true = false;
  bool only_false = false;
  if (p.enum_values && p.enum_values->size() == 1 && (*p.enum_values)[0].is_boolean()) {
    (*p.enum_values)[0].get<bool>() ? only_true = true : only_false = true;
  }
  if (Contains(p.description, "always true")) only_true = true;
  if (Contains(p.description, "always false")) only_false = true;
  if (only_true && !only_false) out[OracleType::kBooleanAlwaysTrue] = FlagValue{true};
  if (only_false && !only_true) out[OracleType::kBooleanAlwaysFalse] = FlagValue{true};
}

std::map<OracleType, OracleValue> InferBase(const Profile& p) {
  std::map<OracleType, OracleValue> out;
  switch (OracleDatatype(p.datatype)) {
    case Datatype::kString: InferString(p, out); break;
    case Datatype::kNumber: InferNumber(p, out); break;
    case Datatype::kBoolean: InferBoolean(p, out); break;
    default: break;
  }
  return out;
}

void InferArray(const ResponseField& field, const Profile& array,
                std::map<OracleType, OracleValue>& out) {
  auto min_items = CountConstraint(field.constraints, "minItems");
  auto max_items = CountConstraint(field.constraints, "maxItems");
  if (min_items && *min_items > 0) out[OracleType::kArrayMinSize] = CountValue{*min_items};
  if (max_items) out[OracleType::kArrayMaxSize] = CountValue{*max_items};
  if (!field.element_datatype || OracleDatatype(*field.element_datatype) == Datatype::kObject ||
      *field.element_datatype == Datatype::kArray) {
    return;
  }
  Profile element = array;
  element.datatype = *field.element_datatype;
  element.format.reset();
  element.enum_values.reset();
  element.constraints = Json::object();
  if (field.constraints.contains("items") && field.constraints["items"].is_object()) {
    const Json& items = field.constraints["items"];
    if (items.contains("format") && items["format"].is_string()) {
      element.format = items["format"].get<std::string>();
    }
    if (items.contains("enum") && items["enum"].is_array()) element.enum_values = items["enum"];
    element.constraints = items;
  }
  for (const auto& [type, value] : InferBase(element)) out[*LiftedType(type)] = value;
  if (OracleDatatype(*field.element_datatype) == Datatype::kNumber) {
    const std::string& d = array.description;
    if (Contains(d, "ascending") || Contains(d, "oldest first") || Contains(d, "increasing order")) {
      out[OracleType::kArrayNumberAscOrder] = FlagValue{true};
    } else if (Contains(d, "descending") || Contains(d, "newest first") ||
               Contains(d, "decreasing order")) {
      out[OracleType::kArrayNumberDescOrder] = FlagValue{true};
    }
  }
}

std::string RenderValue(const OracleValue& value) {
  Json json = ValueToJson(value);
  if (!json.is_array()) return json.dump();
  if (json.empty()) return "[]";
  std::string out = "[ ";
  for (std::size_t i = 0; i < json.size(); ++i) {
    out += (i ? ", " : "") + json[i].dump(-1, ' ', false, Json::error_handler_t::replace);
  }
  return out + " ]";
}

}  // namespace

const std::vector<HeuristicRule>& HeuristicRules() {
  static const std::vector<HeuristicRule> rules = {
      {"url", "format uri/url, or name contains \"url\" or \"href\"", "string_is_url"},
      {"email", "format email/idn-email, or name contains \"email\"", "string_is_email"},
      {"date", "format date, or name ends with \"_date\"", "string_is_date"},
      {"time", "format time", "string_is_time"},
      {"numeric", "description says \"numeric string\", \"decimal string\" or \"string of digits\", "
                  "or pattern is a digits-only regex", "string_is_numeric"},
      {"enum", "OAS enum (string or number members)", "*_specific_values"},
      {"one-of", "description \"one of <v1>, <v2> (and|or|,) <vN>\" with at least two items",
       "*_specific_values"},
      {"length", "minLength equal to maxLength", "string_fixed_length"},
      {"iso-alpha", "description \"ISO 3166-1 alpha-2\" (2) or \"alpha-3\" (3)",
       "string_fixed_length"},
      {"n-characters", "description \"<N> characters\" not preceded by a bound word",
       "string_fixed_length"},
      {"bounds", "OAS minimum/maximum", "number_min_value, number_max_value"},
      {"range", "description \"ranges from <a> ... <b>\", \"from <a> to <b>\" or "
                "\"between <a> and <b>\"", "number_min_value, number_max_value"},
      {"geo", "name latitude/lat (-90..90) or longitude/lng/lon (-180..180)",
       "number_min_value, number_max_value"},
      {"flag", "description \"always true\"/\"always false\", or single-member boolean enum",
       "boolean_always_true, boolean_always_false"},
      {"items", "minItems (when > 0) / maxItems", "array_min_size, array_max_size"},
      {"order", "description \"ascending\"/\"oldest first\" or \"descending\"/\"newest first\"",
       "array_number_asc_order, array_number_desc_order"},
      {"lifting", "the rules above applied to an array's items schema plus the array's name "
                  "and description", "array_<element oracle>"},
  };
  return rules;
}

std::vector<std::string> ParseOneOf(std::string_view description) {
  std::string lower = Lower(description);
  std::size_t at = lower.find("one of ");
  if (at == std::string::npos) return {};
  std::string_view rest = description.substr(at + 7);
  std::size_t colon = rest.find(':');
  std::size_t end = rest.size();
  for (std::size_t i = 0; i < rest.size(); ++i) {
    char c = rest[i];
    if (c == ';' || c == '\n' || c == ')' ||
        (c == '.' && (i + 1 == rest.size() || std::isspace(static_cast<unsigned char>(rest[i + 1]))))) {
      end = i;
      break;
    }
  }
  if (colon != std::string_view::npos && colon < end) rest = rest.substr(colon + 1), end -= colon + 1;
  std::vector<std::string> items = SplitItems(rest.substr(0, end));
  std::vector<std::string> out;
  for (const auto& item : items) {
    if (item.empty()) return {};
    if (std::count(item.begin(), item.end(), ' ') > 2) return {};
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  return out;
}

std::optional<std::pair<double, double>> ParseRange(std::string_view description) {
  static const std::string n = std::string("(") + kNumber + ")";
  static const std::vector<std::regex> patterns = {
      std::regex("ranges?\\s+from\\s+" + n + "\\s*(?:\\.\\.\\.|\xE2\x80\xA6|-|to)\\s*" + n,
                 std::regex::icase),
      std::regex("\\bfrom\\s+" + n + "\\s+to\\s+" + n, std::regex::icase),
      std::regex("\\bbetween\\s+" + n + "\\s+and\\s+" + n, std::regex::icase),
  };
  std::string text(description);
  for (const auto& pattern : patterns) {
    std::smatch m;
    if (std::regex_search(text, m, pattern)) {
      double a = std::stod(m[1].str());
      double b = std::stod(m[2].str());
      if (a <= b) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

std::optional<std::uint64_t> ParseFixedLength(std::string_view description) {
  std::string lower = Lower(description);
  if (Contains(lower, "alpha-2")) return 2;
  if (Contains(lower, "alpha-3")) return 3;
  static const std::regex characters(R"(\b([0-9]+)[ -]characters?\b)");
  static const std::regex bounded(
      R"((?:up to|at most|at least|maximum(?: of)?|minimum(?: of)?|max|min|less than|fewer than|more than|no more than)\s*$)");
  std::smatch m;
  if (!std::regex_search(lower, m, characters)) return std::nullopt;
  if (std::regex_search(m.prefix().str(), bounded)) return std::nullopt;
  return std::stoull(m[1].str());
}

std::map<OracleType, OracleValue> InferHeuristicOracles(const ResponseField& field) {
  Profile p;
  p.datatype = field.datatype;
  p.name = Lower(field.name);
  p.raw_description = field.description.value_or("");
  p.description = Lower(p.raw_description);
  p.format = field.format;
  if (field.enum_values) p.enum_values = Json(*field.enum_values);
  p.constraints = field.constraints;

  std::map<OracleType, OracleValue> out;
  if (field.datatype == Datatype::kArray) {
    InferArray(field, p, out);
  } else {
    out = InferBase(p);
  }
  std::vector<OracleType> allowed = ApplicableOracles(field);
  std::erase_if(out, [&](const auto& entry) {
    return std::find(allowed.begin(), allowed.end(), entry.first) == allowed.end() ||
           !IsAsserted(entry.second);
  });
  return out;
}

std::string RenderAnswer(const std::vector<OracleType>& keys,
                         const std::map<OracleType, OracleValue>& answers) {
  std::string out = "{\n";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto it = answers.find(keys[i]);
    OracleValue value = it != answers.end() ? it->second : NoOracle(keys[i]);
    out += "   \"" + std::string(OracleKey(keys[i])) + "\": " + RenderValue(value);
    out += i + 1 < keys.size() ? ",\n" : "\n";
  }
  return out + "}";
}

std::string HeuristicCompletion(const PromptBundle& bundle) {
  return RenderAnswer(bundle.ExpectedTypes(), InferHeuristicOracles(bundle.field));
}

}  // namespace restoracle
