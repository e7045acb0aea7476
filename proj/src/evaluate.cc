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

#include "restoracle/evaluate.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "restoracle/schema.h"

namespace restoracle {
namespace {

bool IsJsonType(const Json& observed, Datatype type) {
  switch (type) {
    case Datatype::kString: return observed.is_string();
    case Datatype::kBoolean: return observed.is_boolean();
    case Datatype::kNumber:
    case Datatype::kInteger: return observed.is_number();
    case Datatype::kArray: return observed.is_array();
    case Datatype::kObject: return observed.is_object();
  }
  return false;
}

Verdict FromBool(bool ok) { return ok ? Verdict::kPass : Verdict::kFail; }

Verdict CheckScalar(OracleType type, const OracleValue& value, const Json& observed,
                    const EvalOptions& options) {
  switch (type) {
    case OracleType::kStringIsUrl:
      return FromBool(IsUrl(observed.get_ref<const std::string&>()));
    case OracleType::kStringIsNumeric:
      return FromBool(IsNumeric(observed.get_ref<const std::string&>()));
    case OracleType::kStringIsEmail:
      return FromBool(IsEmail(observed.get_ref<const std::string&>()));
    case OracleType::kStringIsDate:
      return FromBool(options.date_formats.IsDate(observed.get_ref<const std::string&>()));
    case OracleType::kStringIsTime:
      return FromBool(IsTime(observed.get_ref<const std::string&>()));
    case OracleType::kStringSpecificValues: {
      const auto& set = std::get<StringSetValue>(value).values;
      return FromBool(std::find(set.begin(), set.end(), observed.get_ref<const std::string&>()) !=
                      set.end());
    }
    case OracleType::kStringFixedLength:
      return FromBool(CodePointLength(observed.get_ref<const std::string&>()) ==
                      *std::get<CountValue>(value).value);
    case OracleType::kBooleanAlwaysTrue:
      return FromBool(observed.get<bool>());
    case OracleType::kBooleanAlwaysFalse:
      return FromBool(!observed.get<bool>());
    case OracleType::kNumberMinValue:
      return FromBool(observed.get<double>() >= *std::get<BoundValue>(value).value - options.epsilon);
    case OracleType::kNumberMaxValue:
      return FromBool(observed.get<double>() <= *std::get<BoundValue>(value).value + options.epsilon);
    case OracleType::kNumberSpecificValues: {
      double v = observed.get<double>();
      const auto& set = std::get<NumberSetValue>(value).values;
      return FromBool(std::any_of(set.begin(), set.end(), [&](double s) {
        return options.epsilon == 0.0 ? v == s : std::fabs(v - s) <= options.epsilon;
      }));
    }
    default:
      return Verdict::kNotApplicable;
  }
}

Verdict CheckArray(OracleType type, const OracleValue& value, const Json& array) {
  std::size_t size = array.size();
  switch (type) {
    case OracleType::kArrayMinSize:
      return FromBool(size >= *std::get<CountValue>(value).value);
    case OracleType::kArrayMaxSize:
      return FromBool(size <= *std::get<CountValue>(value).value);
    case OracleType::kArraySpecificSizes: {
      const auto& sizes = std::get<SizeSetValue>(value).values;
      return FromBool(std::find(sizes.begin(), sizes.end(), size) != sizes.end());
    }
    case OracleType::kArrayNumberAscOrder:
    case OracleType::kArrayNumberDescOrder: {
      for (const auto& e : array) {
        if (!e.is_number()) return Verdict::kNotApplicable;
      }
      bool ascending = type == OracleType::kArrayNumberAscOrder;
      for (std::size_t k = 1; k < size; ++k) {
        double prev = array[k - 1].get<double>();
        double next = array[k].get<double>();
        if (ascending ? prev > next : prev < next) return Verdict::kFail;
      }
      return Verdict::kPass;
    }
    default:
      return Verdict::kNotApplicable;
  }
}

std::vector<std::size_t> FailingElements(OracleType type, const OracleValue& value,
                                         const Json& array, const EvalOptions& options) {
  std::vector<std::size_t> failing;
  OracleType base = BaseType(type);
  for (std::size_t i = 0; i < array.size(); ++i) {
    if (CheckValue(base, value, array[i], options) == Verdict::kFail) failing.push_back(i);
  }
  return failing;
}

std::string Describe(OracleType type, const OracleValue& value) {
  return std::string(OracleKey(type)) + " = " + ValueToString(value);
}

}  // namespace

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kNotApplicable: return "not-applicable";
  }
  return "not-applicable";
}

Verdict CheckValue(OracleType type, const OracleValue& value, const Json& observed,
                   const EvalOptions& options) {
  if (!KindMatches(type, value) || !IsAsserted(value)) return Verdict::kNotApplicable;
  if (observed.is_null() || !IsJsonType(observed, ObservedDatatype(type))) {
    return Verdict::kNotApplicable;
  }
  if (IsLifted(type)) {
    return FailingElements(type, value, observed, options).empty() ? Verdict::kPass
                                                                   : Verdict::kFail;
  }
  if (ObservedDatatype(type) == Datatype::kArray) return CheckArray(type, value, observed);
  return CheckScalar(type, value, observed, options);
}

Json Violation::ToJson() const {
  Json out = Json::object();
  out["path"] = path.str();
  out["location"] = location;
  out["oracle"] = std::string(OracleKey(type));
  out["expected"] = ValueToJson(expected);
  out["observed"] = observed;
  out["message"] = message;
  return out;
}

std::vector<Violation> Evaluate(const OracleSet& oracles, const Json& response,
                                const EvalOptions& options) {
  std::vector<Violation> violations;
  for (const auto& [path, cells] : oracles.entries) {
    std::vector<PathMatch> matches = ResolvePath(path, response);
    if (matches.empty()) continue;
    for (const auto& [type, value] : cells) {
      for (const auto& match : matches) {
        const Json& observed = match.value.get();
        if (CheckValue(type, value, observed, options) != Verdict::kFail) continue;
        std::string location = match.location.str();
        std::string message = location + " violates " + Describe(type, value);
        if (IsLifted(type)) {
          std::string indices;
          for (std::size_t i : FailingElements(type, value, observed, options)) {
            indices += (indices.empty() ? "" : ", ") + std::to_string(i);
          }
          message += " at element(s) " + indices;
        } else {
          message += " (observed " + observed.dump() + ")";
        }
        violations.push_back({path, std::move(location), type, value, observed, std::move(message)});
      }
    }
  }
  return violations;
}

Json SchemaMismatch::ToJson() const {
  Json out = Json::object();
  out["path"] = path.str();
  out["oracle"] = std::string(OracleKey(type));
  out["reason"] = reason;
  return out;
}

std::vector<SchemaMismatch> ValidateSet(const OracleSet& oracles,
                                        const std::vector<ResponseField>& fields) {
  std::vector<SchemaMismatch> mismatches;
  for (const auto& [path, cells] : oracles.entries) {
    auto field = std::find_if(fields.begin(), fields.end(),
                              [&](const ResponseField& f) { return f.path == path; });
    for (const auto& [type, value] : cells) {
      if (field == fields.end()) {
        mismatches.push_back({path, type, "unknown field path"});
        continue;
      }
      std::vector<OracleType> allowed = ApplicableOracles(*field);
      if (std::find(allowed.begin(), allowed.end(), type) == allowed.end()) {
        std::string datatype(DatatypeName(field->datatype));
        if (field->element_datatype) {
          datatype += " of " + std::string(DatatypeName(*field->element_datatype));
        }
        mismatches.push_back({path, type, std::string(OracleKey(type)) +
                                              " does not apply to a field of type " + datatype});
      } else if (!KindMatches(type, value)) {
        mismatches.push_back({path, type, "value has the wrong shape"});
      }
    }
  }
  return mismatches;
}

}  // namespace restoracle
