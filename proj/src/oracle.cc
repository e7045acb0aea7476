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

#include "restoracle/oracle.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "restoracle/errors.h"

namespace restoracle {
namespace {

struct OracleInfo {
  OracleType type;
  std::string_view key;
  ValueKind kind;
  Datatype observed;
};

constexpr std::array<OracleInfo, kOracleTypeCount> kCatalog = {{
    {OracleType::kStringIsUrl, "string_is_url", ValueKind::kFlag, Datatype::kString},
    {OracleType::kStringIsNumeric, "string_is_numeric", ValueKind::kFlag, Datatype::kString},
    {OracleType::kStringSpecificValues, "string_specific_values", ValueKind::kStringSet, Datatype::kString},
    {OracleType::kStringIsEmail, "string_is_email", ValueKind::kFlag, Datatype::kString},
    {OracleType::kStringIsDate, "string_is_date", ValueKind::kFlag, Datatype::kString},
    {OracleType::kStringFixedLength, "string_fixed_length", ValueKind::kCount, Datatype::kString},
    {OracleType::kStringIsTime, "string_is_time", ValueKind::kFlag, Datatype::kString},
    {OracleType::kBooleanAlwaysTrue, "boolean_always_true", ValueKind::kFlag, Datatype::kBoolean},
    {OracleType::kBooleanAlwaysFalse, "boolean_always_false", ValueKind::kFlag, Datatype::kBoolean},
    {OracleType::kNumberMinValue, "number_min_value", ValueKind::kBound, Datatype::kNumber},
    {OracleType::kNumberMaxValue, "number_max_value", ValueKind::kBound, Datatype::kNumber},
    {OracleType::kNumberSpecificValues, "number_specific_values", ValueKind::kNumberSet, Datatype::kNumber},
    {OracleType::kArrayMinSize, "array_min_size", ValueKind::kCount, Datatype::kArray},
    {OracleType::kArrayMaxSize, "array_max_size", ValueKind::kCount, Datatype::kArray},
    {OracleType::kArraySpecificSizes, "array_specific_sizes", ValueKind::kSizeSet, Datatype::kArray},
    {OracleType::kArrayNumberAscOrder, "array_number_asc_order", ValueKind::kFlag, Datatype::kArray},
    {OracleType::kArrayNumberDescOrder, "array_number_desc_order", ValueKind::kFlag, Datatype::kArray},
    {OracleType::kArrayStringIsUrl, "array_string_is_url", ValueKind::kFlag, Datatype::kArray},
    {OracleType::kArrayStringIsNumeric, "array_string_is_numeric", ValueKind::kFlag, Datatype::kArray},
    {OracleType::kArrayStringSpecificValues, "array_string_specific_values", ValueKind::kStringSet, Datatype::kArray},
    {OracleType::kArrayStringIsEmail, "array_string_is_email", ValueKind::kFlag, Datatype::kArray},
    {OracleType::kArrayStringIsDate, "array_string_is_date", ValueKind::kFlag, Datatype::kArray},
    {OracleType::kArrayStringFixedLength, "array_string_fixed_length", ValueKind::kCount, Datatype::kArray},
    {OracleType::kArrayStringIsTime, "array_string_is_time", ValueKind::kFlag, Datatype::kArray},
    {OracleType::kArrayBooleanAlwaysTrue, "array_boolean_always_true", ValueKind::kFlag, Datatype::kArray},
    {OracleType::kArrayBooleanAlwaysFalse, "array_boolean_always_false", ValueKind::kFlag, Datatype::kArray},
    {OracleType::kArrayNumberMinValue, "array_number_min_value", ValueKind::kBound, Datatype::kArray},
    {OracleType::kArrayNumberMaxValue, "array_number_max_value", ValueKind::kBound, Datatype::kArray},
    {OracleType::kArrayNumberSpecificValues, "array_number_specific_values", ValueKind::kNumberSet, Datatype::kArray},
}};

const OracleInfo& Info(OracleType type) { return kCatalog[static_cast<std::size_t>(type)]; }

constexpr int kFirstLifted = static_cast<int>(OracleType::kArrayStringIsUrl);

std::vector<OracleType> Range(OracleType first, OracleType last) {
  std::vector<OracleType> out;
  for (int i = static_cast<int>(first); i <= static_cast<int>(last); ++i) {
    out.push_back(static_cast<OracleType>(i));
  }
  return out;
}

std::string FormatNumber(double value) { return NumberToJson(value).dump(); }

}  // namespace

const std::vector<OracleType>& AllOracleTypes() {
  static const std::vector<OracleType> kAll =
      Range(OracleType::kStringIsUrl, OracleType::kArrayNumberSpecificValues);
  return kAll;
}

std::string_view OracleKey(OracleType type) { return Info(type).key; }

std::optional<OracleType> ParseOracleKey(std::string_view key) {
  for (const auto& info : kCatalog) {
    if (info.key == key) return info.type;
  }
  return std::nullopt;
}

bool IsLifted(OracleType type) { return static_cast<int>(type) >= kFirstLifted; }

OracleType BaseType(OracleType type) {
  if (!IsLifted(type)) return type;
  return static_cast<OracleType>(static_cast<int>(type) - kFirstLifted);
}

std::optional<OracleType> LiftedType(OracleType base) {
  int index = static_cast<int>(base);
  if (index > static_cast<int>(OracleType::kNumberSpecificValues)) return std::nullopt;
  return static_cast<OracleType>(index + kFirstLifted);
}

Datatype ObservedDatatype(OracleType type) { return Info(type).observed; }

ValueKind KindOf(OracleType type) { return Info(type).kind; }

std::vector<OracleType> ApplicableOracles(Datatype datatype, std::optional<Datatype> element) {
  switch (OracleDatatype(datatype)) {
    case Datatype::kString:
      return Range(OracleType::kStringIsUrl, OracleType::kStringIsTime);
    case Datatype::kBoolean:
      return Range(OracleType::kBooleanAlwaysTrue, OracleType::kBooleanAlwaysFalse);
    case Datatype::kNumber:
      return Range(OracleType::kNumberMinValue, OracleType::kNumberSpecificValues);
    case Datatype::kArray: {
      std::vector<OracleType> out;
      Datatype elem = OracleDatatype(element.value_or(Datatype::kObject));
      if (elem == Datatype::kString || elem == Datatype::kBoolean || elem == Datatype::kNumber) {
        for (OracleType base : ApplicableOracles(elem, std::nullopt)) {
          out.push_back(*LiftedType(base));
        }
      }
      out.push_back(OracleType::kArrayMinSize);
      out.push_back(OracleType::kArrayMaxSize);
      out.push_back(OracleType::kArraySpecificSizes);
      if (elem == Datatype::kNumber) {
        out.push_back(OracleType::kArrayNumberAscOrder);
        out.push_back(OracleType::kArrayNumberDescOrder);
      }
      return out;
    }
    default:
      return {};
  }
}

std::vector<OracleType> ApplicableOracles(const ResponseField& field) {
  return ApplicableOracles(field.datatype, field.element_datatype);
}

bool IsAsserted(const OracleValue& value) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FlagValue>) {
          return v.value;
        } else if constexpr (std::is_same_v<T, CountValue> || std::is_same_v<T, BoundValue>) {
          return v.value.has_value();
        } else {
          return !v.values.empty();
        }
      },
      value);
}

OracleValue NoOracle(OracleType type) {
  switch (KindOf(type)) {
    case ValueKind::kFlag: return FlagValue{};
    case ValueKind::kCount: return CountValue{};
    case ValueKind::kBound: return BoundValue{};
    case ValueKind::kStringSet: return StringSetValue{};
    case ValueKind::kNumberSet: return NumberSetValue{};
    case ValueKind::kSizeSet: return SizeSetValue{};
  }
  return FlagValue{};
}

bool KindMatches(OracleType type, const OracleValue& value) {
  return NoOracle(type).index() == value.index();
}

bool ValuesMatch(const OracleValue& a, const OracleValue& b) {
  if (a.index() != b.index()) return false;
  auto as_set = [](const auto& values) {
    using Elem = typename std::decay_t<decltype(values)>::value_type;
    return std::set<Elem>(values.begin(), values.end());
  };
  return std::visit(
      [&](const auto& va) -> bool {
        using T = std::decay_t<decltype(va)>;
        const auto& vb = std::get<T>(b);
        if constexpr (std::is_same_v<T, FlagValue> || std::is_same_v<T, CountValue> ||
                      std::is_same_v<T, BoundValue>) {
          return va == vb;
        } else {
          return as_set(va.values) == as_set(vb.values);
        }
      },
      a);
}

Json NumberToJson(double value) {
  if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) <= 9007199254740992.0) {
    return static_cast<std::int64_t>(value);
  }
  return value;
}

Json ValueToJson(const OracleValue& value) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FlagValue>) {
          return v.value;
        } else if constexpr (std::is_same_v<T, CountValue>) {
          return v.value ? Json(*v.value) : Json(nullptr);
        } else if constexpr (std::is_same_v<T, BoundValue>) {
          return v.value ? NumberToJson(*v.value) : Json(nullptr);
        } else if constexpr (std::is_same_v<T, NumberSetValue>) {
          Json out = Json::array();
          for (double d : v.values) out.push_back(NumberToJson(d));
          return out;
        } else {
          return Json(v.values);
        }
      },
      value);
}

OracleValue ValueFromJson(OracleType type, const Json& json) {
  auto fail = [&](const std::string& expected) -> OracleFormatError {
    return OracleFormatError(std::string(OracleKey(type)) + ": expected " + expected + ", got " +
                             json.dump());
  };
  if (json.is_null()) return NoOracle(type);
  switch (KindOf(type)) {
    case ValueKind::kFlag:
      if (!json.is_boolean()) throw fail("boolean");
      return FlagValue{json.get<bool>()};
    case ValueKind::kCount: {
      if (json.is_boolean() && !json.get<bool>()) return CountValue{};
      if (json.is_number_unsigned()) return CountValue{json.get<std::uint64_t>()};
      if (json.is_number_integer() && json.get<std::int64_t>() >= 0) {
        return CountValue{static_cast<std::uint64_t>(json.get<std::int64_t>())};
      }
      throw fail("non-negative integer or null");
    }
    case ValueKind::kBound:
      if (json.is_boolean() && !json.get<bool>()) return BoundValue{};
      if (!json.is_number()) throw fail("number or null");
      return BoundValue{json.get<double>()};
    case ValueKind::kStringSet: {
      if (!json.is_array()) throw fail("array of string");
      StringSetValue out;
      for (const auto& v : json) {
        if (!v.is_string()) throw fail("array of string");
        if (std::find(out.values.begin(), out.values.end(), v.get<std::string>()) == out.values.end()) {
          out.values.push_back(v.get<std::string>());
        }
      }
      return out;
    }
    case ValueKind::kNumberSet: {
      if (!json.is_array()) throw fail("array of number");
      NumberSetValue out;
      for (const auto& v : json) {
        if (!v.is_number()) throw fail("array of number");
        double d = v.get<double>();
        if (std::find(out.values.begin(), out.values.end(), d) == out.values.end()) {
          out.values.push_back(d);
        }
      }
      return out;
    }
    case ValueKind::kSizeSet: {
      if (!json.is_array()) throw fail("array of non-negative integer");
      SizeSetValue out;
      for (const auto& v : json) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
          throw fail("array of non-negative integer");
        }
        auto n = v.get<std::uint64_t>();
        if (std::find(out.values.begin(), out.values.end(), n) == out.values.end()) {
          out.values.push_back(n);
        }
      }
      return out;
    }
  }
  throw fail("a known value shape");
}

std::string ValueToString(const OracleValue& value) {
  if (const auto* bound = std::get_if<BoundValue>(&value); bound && bound->value) {
    return FormatNumber(*bound->value);
  }
  return ValueToJson(value).dump();
}

std::string_view ProvenanceName(Provenance provenance) {
  switch (provenance) {
    case Provenance::kLlm: return "llm";
    case Provenance::kHeuristic: return "heuristic";
    case Provenance::kHumanEdited: return "human-edited";
    case Provenance::kGroundTruth: return "ground-truth";
  }
  return "llm";
}

std::optional<Provenance> ParseProvenance(std::string_view name) {
  for (auto p : {Provenance::kLlm, Provenance::kHeuristic, Provenance::kHumanEdited,
                 Provenance::kGroundTruth}) {
    if (ProvenanceName(p) == name) return p;
  }
  return std::nullopt;
}

void OracleSet::Set(const JsonPath& path, OracleType type, OracleValue value) {
  if (!IsAsserted(value)) {
    auto it = entries.find(path);
    if (it == entries.end()) return;
    it->second.erase(type);
    if (it->second.empty()) {
      entries.erase(it);
      provenance.erase(path);
    }
    return;
  }
  entries[path][type] = std::move(value);
}

const OracleValue* OracleSet::Find(const JsonPath& path, OracleType type) const {
  auto it = entries.find(path);
  if (it == entries.end()) return nullptr;
  auto cell = it->second.find(type);
  return cell == it->second.end() ? nullptr : &cell->second;
}

std::size_t OracleSet::AssertedCount() const {
  std::size_t count = 0;
  for (const auto& [path, cells] : entries) count += cells.size();
  return count;
}

Json OracleSet::ToJson() const {
  Json out = Json::object();
  out["operationId"] = operation_id;
  Json fields = Json::object();
  for (const auto& [path, cells] : entries) {
    Json record = Json::object();
    for (const auto& [type, value] : cells) record[std::string(OracleKey(type))] = ValueToJson(value);
    fields[path.str()] = std::move(record);
  }
  out["fields"] = std::move(fields);
  if (!provenance.empty()) {
    Json prov = Json::object();
    for (const auto& [path, p] : provenance) {
      if (entries.contains(path)) prov[path.str()] = std::string(ProvenanceName(p));
    }
    out["provenance"] = std::move(prov);
  }
  return out;
}

OracleSet OracleSet::FromJson(const Json& json) {
  if (!json.is_object()) throw OracleFormatError("oracle set must be a JSON object");
  OracleSet set;
  if (json.contains("operationId") && json["operationId"].is_string()) {
    set.operation_id = json["operationId"].get<std::string>();
  } else {
    throw OracleFormatError("oracle set lacks a string 'operationId'");
  }
  if (!json.contains("fields")) return set;
  if (!json["fields"].is_object()) throw OracleFormatError("'fields' must be an object");
  for (auto it = json["fields"].begin(); it != json["fields"].end(); ++it) {
    JsonPath path;
    try {
      path = JsonPath::Parse(it.key());
    } catch (const ParseError& e) {
      throw OracleFormatError(e.what());
    }
    if (!it->is_object()) throw OracleFormatError("field '" + it.key() + "' must map oracle keys");
    for (auto cell = it->begin(); cell != it->end(); ++cell) {
      auto type = ParseOracleKey(cell.key());
      if (!type) {
        throw OracleFormatError("unknown oracle key '" + cell.key() + "' at " + it.key());
      }
      set.Set(path, *type, ValueFromJson(*type, cell.value()));
    }
  }
  if (json.contains("provenance") && json["provenance"].is_object()) {
    for (auto it = json["provenance"].begin(); it != json["provenance"].end(); ++it) {
      auto p = it->is_string() ? ParseProvenance(it->get<std::string>()) : std::nullopt;
      if (!p) throw OracleFormatError("bad provenance for '" + it.key() + "'");
      JsonPath path = JsonPath::Parse(it.key());
      if (set.entries.contains(path)) set.provenance[path] = *p;
    }
  }
  return set;
}

}  // namespace restoracle
