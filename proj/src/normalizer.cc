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

#include "restoracle/normalizer.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "restoracle/errors.h"
#include "restoracle/heuristic.h"

namespace restoracle {
namespace {

constexpr std::string_view kRepairNames[] = {
    "stripped-fences", "extracted-json-substring", "merged-objects",
    "coerced-type",    "defaulted-missing-key",    "repaired-syntax",
};

std::string_view Trim(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Drops every line that opens or closes a code fence.
std::string StripFences(std::string_view text, bool* stripped) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (Trim(line).substr(0, 3) == "```") {
      *stripped = true;
    } else {
      out.append(line);
      if (end < text.size()) out.push_back('\n');
    }
    pos = end + 1;
  }
  return out;
}

// End (exclusive) of the balanced object opening at `start`, string-aware
// for both quote styles.
std::optional<std::size_t> MatchObject(std::string_view text, std::size_t start) {
  int depth = 0;
  char quote = 0;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (quote != 0) {
      if (c == '\\') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::nullopt;
}

struct Span {
  std::size_t begin;
  std::size_t end;
};

std::vector<Span> FindObjects(std::string_view text) {
  std::vector<Span> spans;
  std::size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string_view::npos) {
    if (auto end = MatchObject(text, pos)) {
      spans.push_back({pos, *end});
      pos = *end;
    } else {
      ++pos;
    }
  }
  return spans;
}

bool IsIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool IsIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::size_t SkipSpace(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

// Rewrites Python and JavaScript object literals into JSON: single quotes,
// True/False/None, comments, trailing commas and bare keys.
std::string RepairSyntax(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != '"') j += s[j] == '\\' ? 2 : 1;
      out.append(s.substr(i, std::min(j, s.size() - 1) - i + 1));
      i = j;
    } else if (c == '\'') {
      out.push_back('"');
      std::size_t j = i + 1;
      for (; j < s.size() && s[j] != '\''; ++j) {
        if (s[j] == '\\' && j + 1 < s.size()) {
          if (s[j + 1] == '\'') {
            out.push_back('\'');
          } else {
            out.append(s.substr(j, 2));
          }
          ++j;
        } else if (s[j] == '"') {
          out.append("\\\"");
        } else {
          out.push_back(s[j]);
        }
      }
      out.push_back('"');
      i = j;
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') ++i;
      --i;
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '*') {
      std::size_t end = s.find("*/", i + 2);
      i = end == std::string_view::npos ? s.size() : end + 1;
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      --i;
    } else if (c == ',') {
      std::size_t next = SkipSpace(s, i + 1);
      if (next < s.size() && (s[next] == '}' || s[next] == ']')) continue;
      out.push_back(c);
    } else if (IsIdentStart(c)) {
      std::size_t j = i;
      while (j < s.size() && IsIdentChar(s[j])) ++j;
      std::string word(s.substr(i, j - i));
      std::size_t next = SkipSpace(s, j);
      if (word == "True") {
        out.append("true");
      } else if (word == "False") {
        out.append("false");
      } else if (word == "None") {
        out.append("null");
      } else if (word != "true" && word != "false" && word != "null" && next < s.size() &&
                 s[next] == ':') {
        out.append("\"" + word + "\"");
      } else {
        out.append(word);
      }
      i = j - 1;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::optional<Json> ParseObject(std::string_view span, bool* repaired) {
  Json json = Json::parse(span, nullptr, false);
  if (json.is_discarded()) {
    json = Json::parse(RepairSyntax(span), nullptr, false);
    if (json.is_discarded()) return std::nullopt;
    *repaired = true;
  }
  if (!json.is_object()) return std::nullopt;
  return json;
}

std::string NormalizeKey(std::string_view key) {
  std::string out = Lower(Trim(key));
  for (char& c : out) {
    if (c == ' ' || c == '-') c = '_';
  }
  return out;
}

bool HasOracleKey(const Json& object) {
  for (const auto& [key, value] : object.items()) {
    if (ParseOracleKey(NormalizeKey(key))) return true;
  }
  return false;
}

// Objects carrying oracle keys, looking through wrapper objects such as
// {"answer": {...}}.
void CollectAnswerObjects(const Json& object, std::vector<Json>& out, bool* unwrapped) {
  if (HasOracleKey(object)) {
    out.push_back(object);
    return;
  }
  std::size_t before = out.size();
  for (const auto& [key, value] : object.items()) {
    if (value.is_object()) CollectAnswerObjects(value, out, unwrapped);
  }
  if (out.size() > before) {
    *unwrapped = true;
  } else {
    out.push_back(object);
  }
}

std::optional<double> ParseNumber(std::string_view s) {
  s = Trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

bool IsNoneWord(std::string_view s) {
  std::string w = Lower(Trim(s));
  return w.empty() || w == "null" || w == "none" || w == "n/a";
}

bool IsNonNegativeInteger(double v) {
  return v >= 0 && v <= 9007199254740992.0 && std::floor(v) == v;
}

class Coercer {
 public:
  Coercer(std::string key, std::vector<std::string>* notes) : key_(std::move(key)), notes_(notes) {}

  bool coerced() const { return coerced_; }

  std::optional<OracleValue> Run(OracleType type, const Json& v) {
    switch (KindOf(type)) {
      case ValueKind::kFlag: return Flag(v);
      case ValueKind::kCount: return Count(v);
      case ValueKind::kBound: return Bound(v);
      case ValueKind::kStringSet: return StringSet(v);
      case ValueKind::kNumberSet: return NumberSet(v);
      case ValueKind::kSizeSet: return SizeSet(v);
    }
    return std::nullopt;
  }

 private:
  std::nullopt_t Drop(const Json& v, const std::string& why) {
    notes_->push_back("dropped " + key_ + " = " + v.dump() + ": " + why);
    return std::nullopt;
  }

  void Coerced(const Json& from) {
    coerced_ = true;
    notes_->push_back("coerced " + key_ + " from " + from.dump());
  }

  bool IsEmptyEncoding(const Json& v) {
    return v.is_null() || (v.is_boolean() && !v.get<bool>()) || (v.is_array() && v.empty());
  }

  std::optional<OracleValue> Flag(const Json& v) {
    if (v.is_boolean()) return FlagValue{v.get<bool>()};
    if (v.is_null()) return FlagValue{false};
    if (v.is_string()) {
      std::string w = Lower(Trim(v.get<std::string>()));
      if (w == "true") {
        Coerced(v);
        return FlagValue{true};
      }
      if (w == "false" || IsNoneWord(w)) {
        Coerced(v);
        return FlagValue{false};
      }
      return Drop(v, "not a boolean");
    }
    if (v.is_number() && (v.get<double>() == 0 || v.get<double>() == 1)) {
      Coerced(v);
      return FlagValue{v.get<double>() == 1};
    }
    if (v.is_array() && v.empty()) {
      Coerced(v);
      return FlagValue{false};
    }
    return Drop(v, "not a boolean");
  }

  // Number from a JSON number, numeric string or singleton array.
  std::optional<double> Numeric(const Json& v, bool* absent) {
    *absent = false;
    if (v.is_number()) return v.get<double>();
    if (IsEmptyEncoding(v)) {
      if (!v.is_null()) Coerced(v);
      *absent = true;
      return std::nullopt;
    }
    if (v.is_string()) {
      if (IsNoneWord(v.get<std::string>())) {
        Coerced(v);
        *absent = true;
        return std::nullopt;
      }
      if (auto n = ParseNumber(v.get<std::string>())) {
        Coerced(v);
        return n;
      }
      return std::nullopt;
    }
    if (v.is_array() && v.size() == 1 && (v[0].is_number() || v[0].is_string())) {
      bool inner_absent = false;
      auto n = Numeric(v[0], &inner_absent);
      if (n) Coerced(v);
      return n;
    }
    return std::nullopt;
  }

  std::optional<OracleValue> Count(const Json& v) {
    bool absent = false;
    auto n = Numeric(v, &absent);
    if (absent) return CountValue{};
    if (!n) return Drop(v, "not a number");
    if (*n < 0) return Drop(v, "negative length");
    if (!IsNonNegativeInteger(*n)) return Drop(v, "not an integer");
    return CountValue{static_cast<std::uint64_t>(*n)};
  }

  std::optional<OracleValue> Bound(const Json& v) {
    bool absent = false;
    auto n = Numeric(v, &absent);
    if (absent) return BoundValue{};
    if (!n) return Drop(v, "not a number");
    return BoundValue{*n};
  }

  // Elements of a set answer; scalars become singletons.
  std::optional<std::vector<Json>> Elements(const Json& v) {
    if (v.is_null() || (v.is_boolean() && !v.get<bool>())) return std::vector<Json>{};
    if (v.is_array()) return std::vector<Json>(v.begin(), v.end());
    if (v.is_string() || v.is_number()) {
      Coerced(v);
      return std::vector<Json>{v};
    }
    return std::nullopt;
  }

  template <typename T>
  void Dedupe(std::vector<T>& values) {
    std::vector<T> unique;
    for (const auto& x : values) {
      if (std::find(unique.begin(), unique.end(), x) == unique.end()) unique.push_back(x);
    }
    if (unique.size() != values.size()) {
      notes_->push_back("removed duplicate values from " + key_);
      values = std::move(unique);
    }
  }

  std::optional<OracleValue> StringSet(const Json& v) {
    auto elements = Elements(v);
    if (!elements) return Drop(v, "not a list of strings");
    StringSetValue out;
    for (const Json& e : *elements) {
      if (e.is_string()) {
        out.values.push_back(e.get<std::string>());
      } else if (e.is_number() || e.is_boolean()) {
        Coerced(e);
        out.values.push_back(e.dump());
      } else {
        Drop(e, "not a string");
      }
    }
    Dedupe(out.values);
    return out;
  }

  std::optional<OracleValue> NumberSet(const Json& v) {
    auto elements = Elements(v);
    if (!elements) return Drop(v, "not a list of numbers");
    NumberSetValue out;
    for (const Json& e : *elements) {
      if (e.is_number()) {
        out.values.push_back(e.get<double>());
      } else if (auto n = e.is_string() ? ParseNumber(e.get<std::string>()) : std::nullopt) {
        Coerced(e);
        out.values.push_back(*n);
      } else {
        Drop(e, "not a number");
      }
    }
    Dedupe(out.values);
    return out;
  }

  std::optional<OracleValue> SizeSet(const Json& v) {
    auto elements = Elements(v);
    if (!elements) return Drop(v, "not a list of sizes");
    SizeSetValue out;
    for (const Json& e : *elements) {
      std::optional<double> n;
      if (e.is_number()) {
        n = e.get<double>();
      } else if (e.is_string()) {
        n = ParseNumber(e.get<std::string>());
        if (n) Coerced(e);
      }
      if (n && IsNonNegativeInteger(*n)) {
        out.values.push_back(static_cast<std::uint64_t>(*n));
      } else {
        Drop(e, "not a non-negative integer");
      }
    }
    Dedupe(out.values);
    return out;
  }

  std::string key_;
  std::vector<std::string>* notes_;
  bool coerced_ = false;
};

void AddRepair(std::vector<Repair>& repairs, Repair repair) {
  if (std::find(repairs.begin(), repairs.end(), repair) == repairs.end()) repairs.push_back(repair);
}

FieldOracleRecord AllAbsent(const PromptBundle& bundle) {
  FieldOracleRecord record;
  record.field_path = bundle.field_path;
  record.expected_keys = bundle.ExpectedTypes();
  for (OracleType type : record.expected_keys) record.answers.emplace(type, NoOracle(type));
  return record;
}

}  // namespace

std::string_view RepairName(Repair repair) { return kRepairNames[static_cast<int>(repair)]; }

std::optional<Repair> ParseRepair(std::string_view name) {
  for (int i = 0; i < static_cast<int>(std::size(kRepairNames)); ++i) {
    if (kRepairNames[i] == name) return static_cast<Repair>(i);
  }
  return std::nullopt;
}

std::string FieldOracleRecord::RenderAnswers() const { return RenderAnswer(expected_keys, answers); }

Json FieldOracleRecord::ToJson() const {
  Json out = Json::object();
  out["fieldPath"] = field_path.str();
  Json keys = Json::array();
  Json values = Json::object();
  for (OracleType type : expected_keys) {
    keys.push_back(std::string(OracleKey(type)));
    auto it = answers.find(type);
    values[std::string(OracleKey(type))] = ValueToJson(it == answers.end() ? NoOracle(type) : it->second);
  }
  out["expectedKeys"] = keys;
  out["answers"] = values;
  Json repair_names = Json::array();
  for (Repair r : repairs) repair_names.push_back(std::string(RepairName(r)));
  out["repairs"] = repair_names;
  out["rejectedKeys"] = rejected_keys;
  out["notes"] = notes;
  out["unrecoverable"] = unrecoverable;
  return out;
}

FieldOracleRecord FieldOracleRecord::FromJson(const Json& json) {
  try {
    FieldOracleRecord r;
    r.field_path = JsonPath::Parse(json.at("fieldPath").get<std::string>());
    for (const auto& key : json.at("expectedKeys")) {
      auto type = ParseOracleKey(key.get<std::string>());
      if (!type) throw OracleFormatError("unknown oracle key '" + key.get<std::string>() + "'");
      r.expected_keys.push_back(*type);
    }
    for (const auto& [key, value] : json.at("answers").items()) {
      auto type = ParseOracleKey(key);
      if (!type) throw OracleFormatError("unknown oracle key '" + key + "'");
      r.answers[*type] = ValueFromJson(*type, value);
    }
    for (const auto& name : json.value("repairs", Json::array())) {
      auto repair = ParseRepair(name.get<std::string>());
      if (!repair) throw OracleFormatError("unknown repair '" + name.get<std::string>() + "'");
      r.repairs.push_back(*repair);
    }
    r.rejected_keys = json.value("rejectedKeys", std::vector<std::string>{});
    r.notes = json.value("notes", std::vector<std::string>{});
    r.unrecoverable = json.value("unrecoverable", false);
    return r;
  } catch (const Json::exception& e) {
    throw OracleFormatError(std::string("field record: ") + e.what());
  }
}

FieldOracleRecord Normalize(std::string_view text, const PromptBundle& bundle) {
  FieldOracleRecord record;
  record.field_path = bundle.field_path;
  record.expected_keys = bundle.ExpectedTypes();

  bool fenced = false;
  std::string body = StripFences(text, &fenced);
  if (fenced) AddRepair(record.repairs, Repair::kStrippedFences);

  std::vector<Span> spans = FindObjects(body);
  std::vector<Json> objects;
  bool repaired = false;
  bool unwrapped = false;
  std::size_t parsed_spans = 0;
  std::size_t first = std::string::npos;
  std::size_t last = 0;
  for (const Span& span : spans) {
    auto parsed = ParseObject(std::string_view(body).substr(span.begin, span.end - span.begin), &repaired);
    if (!parsed) continue;
    ++parsed_spans;
    first = std::min(first, span.begin);
    last = std::max(last, span.end);
    CollectAnswerObjects(*parsed, objects, &unwrapped);
  }
  if (objects.empty()) {
    throw Unrecoverable("no JSON object in completion for " + bundle.field_path.str());
  }
  std::string_view outside_before = Trim(std::string_view(body).substr(0, first));
  std::string_view outside_after = Trim(std::string_view(body).substr(last));
  if (!outside_before.empty() || !outside_after.empty() || unwrapped || spans.size() > parsed_spans) {
    AddRepair(record.repairs, Repair::kExtractedJsonSubstring);
  }
  if (repaired) AddRepair(record.repairs, Repair::kRepairedSyntax);
  if (objects.size() > 1) AddRepair(record.repairs, Repair::kMergedObjects);

  // Later keys win; the original spelling is kept for rejected keys.
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::string, Json> merged;
  for (const Json& object : objects) {
    for (const auto& [raw_key, value] : object.items()) {
      std::string key = NormalizeKey(raw_key);
      auto it = merged.find(key);
      if (it == merged.end()) {
        order.emplace_back(key, raw_key);
      } else if (it->second != value) {
        record.notes.push_back("conflicting answers for " + key + ": " + it->second.dump() +
                               " replaced by " + value.dump());
      }
      merged[key] = value;
      if (key != raw_key) record.notes.push_back("renamed key '" + raw_key + "' to " + key);
    }
  }

  std::set<OracleType> expected(record.expected_keys.begin(), record.expected_keys.end());
  for (const auto& [key, raw_key] : order) {
    auto type = ParseOracleKey(key);
    if (!type || expected.count(*type) == 0) {
      record.rejected_keys.push_back(raw_key);
      continue;
    }
    Coercer coercer(key, &record.notes);
    std::optional<OracleValue> value = coercer.Run(*type, merged[key]);
    if (coercer.coerced()) AddRepair(record.repairs, Repair::kCoercedType);
    if (value) record.answers[*type] = std::move(*value);
  }

  for (OracleType type : record.expected_keys) {
    if (record.answers.count(type) != 0) continue;
    record.answers.emplace(type, NoOracle(type));
    AddRepair(record.repairs, Repair::kDefaultedMissingKey);
    record.notes.push_back("defaulted " + std::string(OracleKey(type)) + " to no oracle");
  }
  for (const auto& [type, value] : record.answers) {
    const auto* count = std::get_if<CountValue>(&value);
    if (count != nullptr && count->value == 0u) {
      record.notes.push_back(std::string(OracleKey(type)) + " = 0 asserts an empty value");
    }
  }
  return record;
}

FieldOracleRecord Normalize(const RawCompletion& completion, const PromptBundle& bundle) {
  if (!(completion.field_path == bundle.field_path)) {
    throw OperationMismatch("completion for " + completion.field_path.str() +
                            " does not belong to bundle " + bundle.field_path.str());
  }
  return Normalize(completion.text, bundle);
}

FieldOracleRecord NormalizeOrAbsent(const RawCompletion& completion, const PromptBundle& bundle) {
  if (!completion.ok()) {
    FieldOracleRecord record = AllAbsent(bundle);
    record.unrecoverable = true;
    record.notes.push_back("completion failed: " + completion.error_kind.value_or("") + ": " +
                           completion.error_message);
    return record;
  }
  try {
    return Normalize(completion, bundle);
  } catch (const Unrecoverable& e) {
    FieldOracleRecord record = AllAbsent(bundle);
    record.unrecoverable = true;
    record.notes.push_back(e.what());
    return record;
  }
}

AssembleResult Assemble(const std::vector<FieldOracleRecord>& records,
                        const std::string& operation_id,
                        const std::vector<ResponseField>& fields, Provenance provenance) {
  AssembleResult result;
  result.oracles.operation_id = operation_id;
  for (const auto& record : records) {
    for (const auto& [type, value] : record.answers) {
      if (!IsAsserted(value)) continue;
      result.oracles.Set(record.field_path, type, value);
      result.oracles.provenance[record.field_path] = provenance;
    }
  }
  result.stripped = ValidateSet(result.oracles, fields);
  for (const auto& mismatch : result.stripped) {
    auto it = result.oracles.entries.find(mismatch.path);
    if (it == result.oracles.entries.end()) continue;
    it->second.erase(mismatch.type);
    if (it->second.empty()) {
      result.oracles.entries.erase(it);
      result.oracles.provenance.erase(mismatch.path);
    }
  }
  return result;
}

Json WarningsReport(const std::string& operation_id,
                    const std::vector<FieldOracleRecord>& records,
                    const std::vector<SchemaMismatch>& stripped) {
  Json fields = Json::array();
  for (const auto& record : records) {
    if (record.repairs.empty() && record.rejected_keys.empty() && record.notes.empty() &&
        !record.unrecoverable) {
      continue;
    }
    Json repairs = Json::array();
    for (Repair r : record.repairs) repairs.push_back(std::string(RepairName(r)));
    fields.push_back(Json{{"fieldPath", record.field_path.str()},
                          {"repairs", repairs},
                          {"rejectedKeys", record.rejected_keys},
                          {"notes", record.notes},
                          {"unrecoverable", record.unrecoverable}});
  }
  Json stripped_json = Json::array();
  for (const auto& m : stripped) stripped_json.push_back(m.ToJson());
  return Json{{"operationId", operation_id}, {"fields", fields}, {"stripped", stripped_json}};
}

}  // namespace restoracle
