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

#include "restoracle/schema.h"

#include <algorithm>
#include <cmath>
#include <regex>
#include <string>

#include "restoracle/errors.h"

namespace restoracle {
namespace {

bool Contains(const std::vector<std::string>& list, const std::string& s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

std::string JoinCycle(const std::vector<std::string>& chain,
                      const std::string& closing) {
  std::string out;
  auto start = std::find(chain.begin(), chain.end(), closing);
  for (auto it = start; it != chain.end(); ++it) out += *it + " -> ";
  return out + closing;
}

bool IsNullSchema(const Json& schema) {
  return schema.is_object() && schema.contains("type") &&
         schema["type"] == "null";
}

class Resolver {
 public:
  Resolver(const ApiSpec& spec, const std::vector<std::string>& active,
           EffectiveSchema& out)
      : spec_(spec), active_(active), out_(out) {}

  Json Resolve(const Json& schema) {
    if (!schema.is_object()) return Json::object();
    std::size_t depth = stack_.size();
    Json result = ResolveInner(schema);
    stack_.resize(depth);
    return result;
  }

 private:
  Json ResolveInner(const Json& schema) {
    Json current = schema;
    while (current.contains("$ref") && current["$ref"].is_string()) {
      std::string ref = current["$ref"].get<std::string>();
      std::vector<std::string> chain = active_;
      chain.insert(chain.end(), stack_.begin(), stack_.end());
      if (Contains(chain, ref)) {
        out_.cyclic = true;
        out_.cycle = JoinCycle(chain, ref);
        return Json::object();
      }
      stack_.push_back(ref);
      if (!Contains(out_.refs, ref)) out_.refs.push_back(ref);
      Json target = spec_.ResolveRef(ref);
      if (!target.is_object()) return Json::object();
      // Sibling keywords next to $ref (allowed in 3.1) override the target.
      for (auto it = current.begin(); it != current.end(); ++it) {
        if (it.key() != "$ref") target[it.key()] = it.value();
      }
      current = std::move(target);
    }
    if (current.contains("allOf") && current["allOf"].is_array()) {
      Json merged = Json::object();
      for (const auto& branch : current["allOf"]) {
        Merge(merged, Resolve(branch));
        if (out_.cyclic) return Json::object();
      }
      Json own = current;
      own.erase("allOf");
      Merge(merged, own);
      current = std::move(merged);
    }
    for (const char* keyword : {"oneOf", "anyOf"}) {
      if (!current.contains(keyword) || !current[keyword].is_array()) continue;
      const Json& branches = current[keyword];
      Json chosen = Json::object();
      bool has_null = false;
      bool picked = false;
      for (const auto& branch : branches) {
        if (IsNullSchema(branch)) {
          has_null = true;
        } else if (!picked) {
          chosen = branch;
          picked = true;
        }
      }
      std::size_t real_branches = branches.size() - (has_null ? 1 : 0);
      if (real_branches > 1) {
        out_.warnings.push_back(
            {"PolymorphicSchema", "", "",
             std::string(keyword) + " with " + std::to_string(real_branches) +
                 " branches; using the first"});
      }
      Json own = current;
      own.erase(keyword);
      Json resolved = Resolve(chosen);
      if (out_.cyclic) return Json::object();
      Merge(resolved, own);
      if (has_null) resolved["nullable"] = true;
      current = std::move(resolved);
    }
    return current;
  }

  void Merge(Json& into, const Json& from) {
    for (auto it = from.begin(); it != from.end(); ++it) {
      const std::string& key = it.key();
      if (key == "properties" && it->is_object()) {
        Json& props = into["properties"];
        if (!props.is_object()) props = Json::object();
        for (auto p = it->begin(); p != it->end(); ++p) {
          if (props.contains(p.key()) && props[p.key()] != p.value()) {
            out_.warnings.push_back({"AllOfConflict", "", "",
                                     "property '" + p.key() +
                                         "' redefined in allOf; last wins"});
          }
          props[p.key()] = p.value();
        }
      } else if (key == "required" && it->is_array()) {
        Json& required = into["required"];
        if (!required.is_array()) required = Json::array();
        for (const auto& name : *it) {
          if (std::find(required.begin(), required.end(), name) ==
              required.end()) {
            required.push_back(name);
          }
        }
      } else {
        into[key] = it.value();
      }
    }
  }

  const ApiSpec& spec_;
  const std::vector<std::string>& active_;
  EffectiveSchema& out_;
  std::vector<std::string> stack_;
};

void ValidateNode(const ApiSpec& spec, const Json& schema, const Json& value,
                  const std::string& where, std::vector<std::string> active,
                  std::vector<std::string>& errors) {
  EffectiveSchema effective = ResolveSchema(spec, schema, active);
  if (effective.cyclic) return;
  active.insert(active.end(), effective.refs.begin(), effective.refs.end());
  const Json& s = effective.schema;
  SchemaType type = ClassifySchema(s);
  auto fail = [&](const std::string& what) {
    errors.push_back(where + ": " + what);
  };

  if (value.is_null()) {
    if (!type.nullable && type.type) fail("null not allowed");
    return;
  }
  if (s.contains("enum") && s["enum"].is_array()) {
    const Json& values = s["enum"];
    if (std::find(values.begin(), values.end(), value) == values.end()) {
      fail("value not in enum");
    }
  }
  if (!type.type) return;
  switch (*type.type) {
    case Datatype::kBoolean:
      if (!value.is_boolean()) fail("expected boolean");
      break;
    case Datatype::kInteger:
    case Datatype::kNumber: {
      if (!value.is_number()) {
        fail("expected number");
        break;
      }
      double v = value.get<double>();
      if (*type.type == Datatype::kInteger && value.is_number_float() &&
          v != std::floor(v)) {
        fail("expected integer");
      }
      auto bound = [&](const char* key) -> std::optional<double> {
        if (s.contains(key) && s[key].is_number()) return s[key].get<double>();
        return std::nullopt;
      };
      bool excl_min = s.value("exclusiveMinimum", Json(false)) == true;
      bool excl_max = s.value("exclusiveMaximum", Json(false)) == true;
      if (auto min = bound("minimum")) {
        if (excl_min ? v <= *min : v < *min) fail("below minimum");
      }
      if (auto max = bound("maximum")) {
        if (excl_max ? v >= *max : v > *max) fail("above maximum");
      }
      // OAS 3.1 numeric exclusive bounds.
      if (auto min = bound("exclusiveMinimum"); min && v <= *min) {
        fail("below exclusiveMinimum");
      }
      if (auto max = bound("exclusiveMaximum"); max && v >= *max) {
        fail("above exclusiveMaximum");
      }
      if (auto step = bound("multipleOf"); step && *step > 0) {
        double q = v / *step;
        if (std::fabs(q - std::round(q)) > 1e-9) fail("not a multipleOf");
      }
      break;
    }
    case Datatype::kString: {
      if (!value.is_string()) {
        fail("expected string");
        break;
      }
      const std::string& str = value.get_ref<const std::string&>();
      std::size_t length = CodePointLength(str);
      if (s.contains("minLength") && s["minLength"].is_number() &&
          length < s["minLength"].get<std::size_t>()) {
        fail("shorter than minLength");
      }
      if (s.contains("maxLength") && s["maxLength"].is_number() &&
          length > s["maxLength"].get<std::size_t>()) {
        fail("longer than maxLength");
      }
      if (s.contains("pattern") && s["pattern"].is_string()) {
        try {
          std::regex pattern(s["pattern"].get<std::string>(),
                             std::regex::ECMAScript);
          if (!std::regex_search(str, pattern)) fail("pattern mismatch");
        } catch (const std::regex_error&) {
          // Unsupported pattern syntax is not checked.
        }
      }
      break;
    }
    case Datatype::kArray: {
      if (!value.is_array()) {
        fail("expected array");
        break;
      }
      if (s.contains("minItems") && s["minItems"].is_number() &&
          value.size() < s["minItems"].get<std::size_t>()) {
        fail("fewer than minItems");
      }
      if (s.contains("maxItems") && s["maxItems"].is_number() &&
          value.size() > s["maxItems"].get<std::size_t>()) {
        fail("more than maxItems");
      }
      if (s.value("uniqueItems", Json(false)) == true) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          for (std::size_t j = i + 1; j < value.size(); ++j) {
            if (value[i] == value[j]) fail("duplicate items");
          }
        }
      }
      if (s.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          ValidateNode(spec, s["items"], value[i],
                       where + "[" + std::to_string(i) + "]", active, errors);
        }
      }
      break;
    }
    case Datatype::kObject: {
      if (!value.is_object()) {
        fail("expected object");
        break;
      }
      if (s.contains("required") && s["required"].is_array()) {
        for (const auto& name : s["required"]) {
          if (name.is_string() && !value.contains(name.get<std::string>())) {
            fail("missing required property '" + name.get<std::string>() +
                 "'");
          }
        }
      }
      if (s.contains("properties") && s["properties"].is_object()) {
        for (auto it = s["properties"].begin(); it != s["properties"].end();
             ++it) {
          auto found = value.find(it.key());
          if (found == value.end()) continue;
          ValidateNode(spec, it.value(), *found,
                       where == "$" ? it.key() : where + "." + it.key(),
                       active, errors);
        }
      }
      if (s.value("additionalProperties", Json(true)) == false) {
        for (auto it = value.begin(); it != value.end(); ++it) {
          if (!s.contains("properties") ||
              !s["properties"].contains(it.key())) {
            fail("unexpected property '" + it.key() + "'");
          }
        }
      }
      break;
    }
  }
}

}  // namespace

EffectiveSchema ResolveSchema(const ApiSpec& spec, const Json& schema,
                              const std::vector<std::string>& active_refs) {
  EffectiveSchema out;
  Resolver resolver(spec, active_refs, out);
  out.schema = resolver.Resolve(schema);
  return out;
}

SchemaType ClassifySchema(const Json& s) {
  SchemaType result;
  if (!s.is_object()) return result;
  result.nullable = s.value("nullable", Json(false)) == true;
  if (s.contains("type")) {
    const Json& type = s["type"];
    if (type.is_string()) {
      result.type = ParseDatatype(type.get<std::string>());
    } else if (type.is_array()) {
      for (const auto& t : type) {
        if (!t.is_string()) continue;
        if (t == "null") {
          result.nullable = true;
        } else if (!result.type) {
          result.type = ParseDatatype(t.get<std::string>());
        }
      }
    }
    if (result.type) return result;
  }
  if (s.contains("properties")) {
    result.type = Datatype::kObject;
  } else if (s.contains("items")) {
    result.type = Datatype::kArray;
  } else if (s.contains("enum") && s["enum"].is_array()) {
    for (const auto& v : s["enum"]) {
      if (v.is_string()) result.type = Datatype::kString;
      else if (v.is_boolean()) result.type = Datatype::kBoolean;
      else if (v.is_number_integer()) result.type = Datatype::kInteger;
      else if (v.is_number()) result.type = Datatype::kNumber;
      else if (v.is_null()) result.nullable = true;
      if (result.type) break;
    }
  }
  return result;
}

std::vector<std::string> ValidateAgainstSchema(const ApiSpec& spec,
                                               const Json& schema,
                                               const Json& value) {
  std::vector<std::string> errors;
  if (schema.is_null()) return errors;
  ValidateNode(spec, schema, value, "$", {}, errors);
  return errors;
}

std::size_t CodePointLength(std::string_view utf8) {
  std::size_t count = 0;
  for (unsigned char c : utf8) {
    if ((c & 0xC0) != 0x80) ++count;
  }
  return count;
}

}  // namespace restoracle
