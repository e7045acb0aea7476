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

#include "restoracle/metrics.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "restoracle/errors.h"

namespace restoracle {
namespace {

struct TableGroup {
  const char* name;
  std::vector<OracleType> rows;
};

const std::vector<TableGroup>& TableLayout() {
  static const std::vector<TableGroup> layout = {
      {"String",
       {OracleType::kStringIsUrl, OracleType::kStringFixedLength, OracleType::kStringSpecificValues,
        OracleType::kStringIsNumeric, OracleType::kStringIsTime, OracleType::kStringIsDate,
        OracleType::kStringIsEmail}},
      {"Number", {OracleType::kNumberMinValue, OracleType::kNumberMaxValue, OracleType::kNumberSpecificValues}},
      {"Bool", {OracleType::kBooleanAlwaysFalse, OracleType::kBooleanAlwaysTrue}},
      {"Array",
       {OracleType::kArrayMinSize, OracleType::kArrayMaxSize, OracleType::kArraySpecificSizes,
        OracleType::kArrayNumberAscOrder, OracleType::kArrayNumberDescOrder}},
  };
  return layout;
}

// "string_is_url" -> "is_url", "array_min_size" -> "min_size".
std::string RowName(OracleType type) {
  std::string key(OracleKey(type));
  return key.substr(key.find('_') + 1);
}

Json Ratio(const std::optional<double>& value) { return value ? Json(*value) : Json(nullptr); }

std::string Percent(const std::optional<double>& value) {
  if (!value) return "-";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f", *value * 100.0);
  std::string out = buffer;
  if (out.size() > 2 && out.compare(out.size() - 2, 2, ".0") == 0) out.resize(out.size() - 2);
  return out;
}

void CheckSameOperation(const std::string& a, const std::string& b) {
  if (a != b) throw OperationMismatch("oracle set for '" + a + "' scored against ground truth for '" + b + "'");
}

bool Correct(const OracleSet& set, const JsonPath& path, OracleType type, const OracleValue& truth) {
  const OracleValue* predicted = set.Find(path, type);
  return predicted != nullptr && ValuesMatch(*predicted, truth);
}

template <typename T>
const T* FindById(const std::vector<T>& items, const std::string& id) {
  for (const auto& item : items) {
    if (item.operation_id == id) return &item;
  }
  return nullptr;
}

}  // namespace

void GroundTruth::Label(const JsonPath& path, OracleType type, std::optional<OracleValue> value) {
  if (value && !IsAsserted(*value)) value.reset();
  labels[path][type] = std::move(value);
}

std::size_t GroundTruth::AssertedCount() const {
  std::size_t n = 0;
  for (const auto& [path, cells] : labels) {
    for (const auto& [type, value] : cells) n += value.has_value();
  }
  return n;
}

OracleSet GroundTruth::Asserted() const {
  OracleSet set;
  set.operation_id = operation_id;
  for (const auto& [path, cells] : labels) {
    for (const auto& [type, value] : cells) {
      if (value) {
        set.Set(path, type, *value);
        set.provenance[path] = Provenance::kGroundTruth;
      }
    }
  }
  return set;
}

std::vector<std::string> GroundTruth::Check(const std::vector<ResponseField>& fields) const {
  std::vector<std::string> problems;
  std::map<JsonPath, const ResponseField*> by_path;
  for (const auto& f : fields) by_path[f.path] = &f;
  for (const auto& [path, cells] : labels) {
    auto it = by_path.find(path);
    if (it == by_path.end()) {
      problems.push_back("unknown field " + path.str());
      continue;
    }
    auto applicable = ApplicableOracles(*it->second);
    for (const auto& [type, value] : cells) {
      if (std::find(applicable.begin(), applicable.end(), type) == applicable.end()) {
        problems.push_back(std::string(OracleKey(type)) + " does not apply to " + path.str());
      }
    }
  }
  for (const auto& f : fields) {
    auto it = labels.find(f.path);
    for (OracleType type : ApplicableOracles(f)) {
      if (it == labels.end() || !it->second.contains(type)) {
        problems.push_back("unlabeled " + std::string(OracleKey(type)) + " at " + f.path.str());
      }
    }
  }
  return problems;
}

Json GroundTruth::ToJson() const {
  Json fields = Json::object();
  for (const auto& [path, cells] : labels) {
    Json row = Json::object();
    for (const auto& [type, value] : cells) {
      row[std::string(OracleKey(type))] = ValueToJson(value ? *value : NoOracle(type));
    }
    fields[path.str()] = row;
  }
  return Json{{"operationId", operation_id}, {"fields", fields}};
}

GroundTruth GroundTruth::FromJson(const Json& json) {
  if (!json.is_object()) throw OracleFormatError("ground truth must be a JSON object");
  if (!json.contains("operationId") || !json["operationId"].is_string()) {
    throw OracleFormatError("ground truth lacks a string 'operationId'");
  }
  GroundTruth truth;
  truth.operation_id = json["operationId"].get<std::string>();
  if (!json.contains("fields")) return truth;
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
      if (!type) throw OracleFormatError("unknown oracle key '" + cell.key() + "' at " + it.key());
      truth.Label(path, *type, ValueFromJson(*type, cell.value()));
    }
  }
  return truth;
}

std::optional<double> Confusion::Precision() const {
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::optional<double> Confusion::Recall() const {
  if (tp + fn == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

std::optional<double> Confusion::F1() const {
  auto p = Precision();
  auto r = Recall();
  if (!p || !r || *p + *r == 0) return std::nullopt;
  return 2 * *p * *r / (*p + *r);
}

Confusion& Confusion::operator+=(const Confusion& other) {
  tp += other.tp;
  tn += other.tn;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

Json Confusion::ToJson() const {
  return Json{{"precision", Ratio(Precision())},
              {"recall", Ratio(Recall())},
              {"f1", Ratio(F1())},
              {"tp", tp},
              {"tn", tn},
              {"fp", fp},
              {"fn", fn}};
}

ScoreReport& ScoreReport::operator+=(const ScoreReport& other) {
  for (const auto& [type, c] : other.per_type) per_type[type] += c;
  overall += other.overall;
  cells += other.cells;
  mismatches += other.mismatches;
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
  return *this;
}

Json ScoreReport::ToJson() const {
  Json types = Json::object();
  for (const auto& [type, c] : per_type) types[std::string(OracleKey(type))] = c.ToJson();
  return Json{{"perType", types},
              {"overall", overall.ToJson()},
              {"cells", cells},
              {"mismatches", mismatches},
              {"warnings", warnings}};
}

std::string ScoreReport::RenderTable() const {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Type", "Oracle", "P", "R", "F1", "TP", "TN", "FP", "FN"});
  auto row = [](std::string group, std::string name, const Confusion& c) {
    return std::vector<std::string>{std::move(group),       std::move(name),        Percent(c.Precision()),
                                    Percent(c.Recall()),    Percent(c.F1()),        std::to_string(c.tp),
                                    std::to_string(c.tn),   std::to_string(c.fp),   std::to_string(c.fn)};
  };
  for (const auto& group : TableLayout()) {
    bool first = true;
    for (OracleType type : group.rows) {
      auto it = per_type.find(type);
      if (it == per_type.end()) continue;
      const Confusion& c = it->second;
      if (c.tp + c.fn == 0 && c.fp == 0) continue;
      rows.push_back(row(first ? group.name : "", RowName(type), c));
      first = false;
    }
  }
  rows.push_back(row("", "TOTAL", overall));
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i > 0) line += "  ";
      std::string pad(width[i] - r[i].size(), ' ');
      line += i < 2 ? r[i] + pad : pad + r[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

ScoreReport Score(const OracleSet& predicted, const GroundTruth& truth) {
  CheckSameOperation(predicted.operation_id, truth.operation_id);
  ScoreReport report;
  auto add = [&](OracleType type, bool predicted_asserted, const OracleValue* predicted_value,
                 const std::optional<OracleValue>& expected) {
    Confusion cell;
    if (predicted_asserted && expected) {
      if (ValuesMatch(*predicted_value, *expected)) {
        cell.tp = 1;
      } else {
        cell.fp = 1;
        cell.fn = 1;
        ++report.mismatches;
      }
    } else if (predicted_asserted) {
      cell.fp = 1;
    } else if (expected) {
      cell.fn = 1;
    } else {
      cell.tn = 1;
    }
    ++report.cells;
    report.per_type[BaseType(type)] += cell;
    report.overall += cell;
  };
  for (const auto& [path, cells] : truth.labels) {
    for (const auto& [type, expected] : cells) {
      const OracleValue* value = predicted.Find(path, type);
      add(type, value != nullptr, value, expected);
    }
  }
  for (const auto& [path, cells] : predicted.entries) {
    auto labeled = truth.labels.find(path);
    for (const auto& [type, value] : cells) {
      if (labeled != truth.labels.end() && labeled->second.contains(type)) continue;
      report.warnings.push_back((labeled == truth.labels.end() ? "unknown path " : "unlabeled oracle ") +
                                path.str() + " " + std::string(OracleKey(type)) + " counted as FP");
      add(type, true, &value, std::nullopt);
    }
  }
  return report;
}

ScoreReport ScoreAll(const std::vector<OracleSet>& predicted, const std::vector<GroundTruth>& truths) {
  ScoreReport total;
  std::set<std::string> seen;
  for (const auto& truth : truths) {
    seen.insert(truth.operation_id);
    const OracleSet* set = FindById(predicted, truth.operation_id);
    OracleSet empty;
    empty.operation_id = truth.operation_id;
    total += Score(set ? *set : empty, truth);
  }
  for (const auto& set : predicted) {
    if (!seen.contains(set.operation_id)) {
      throw OperationMismatch("no ground truth for operation '" + set.operation_id + "'");
    }
  }
  return total;
}

OverlapCounts& OverlapCounts::operator+=(const OverlapCounts& other) {
  only_a += other.only_a;
  only_b += other.only_b;
  both += other.both;
  total += other.total;
  return *this;
}

Json OverlapCounts::ToJson() const {
  auto share = [this](std::uint64_t n) {
    return Detected() == 0 ? Json(nullptr) : Json(static_cast<double>(n) / static_cast<double>(Detected()));
  };
  return Json{{"onlyA", only_a},        {"onlyB", only_b},         {"both", both},
              {"total", total},         {"detected", Detected()},  {"onlyAShare", share(only_a)},
              {"onlyBShare", share(only_b)}, {"bothShare", share(both)}};
}

OverlapReport& OverlapReport::operator+=(const OverlapReport& other) {
  for (const auto& [type, c] : other.by_type) by_type[type] += c;
  for (const auto& [op, c] : other.by_operation) by_operation[op] += c;
  overall += other.overall;
  return *this;
}

Json OverlapReport::ToJson() const {
  Json types = Json::object();
  for (const auto& [type, c] : by_type) types[std::string(OracleKey(type))] = c.ToJson();
  Json ops = Json::object();
  for (const auto& [op, c] : by_operation) ops[op] = c.ToJson();
  return Json{{"byType", types}, {"byOperation", ops}, {"overall", overall.ToJson()}};
}

OverlapReport Overlap(const OracleSet& a, const OracleSet& b, const GroundTruth& truth) {
  CheckSameOperation(a.operation_id, truth.operation_id);
  CheckSameOperation(b.operation_id, truth.operation_id);
  OverlapReport report;
  OverlapCounts& op = report.by_operation[truth.operation_id];
  for (const auto& [path, cells] : truth.labels) {
    for (const auto& [type, expected] : cells) {
      if (!expected) continue;
      OverlapCounts cell;
      cell.total = 1;
      bool in_a = Correct(a, path, type, *expected);
      bool in_b = Correct(b, path, type, *expected);
      if (in_a && in_b) {
        cell.both = 1;
      } else if (in_a) {
        cell.only_a = 1;
      } else if (in_b) {
        cell.only_b = 1;
      }
      report.by_type[BaseType(type)] += cell;
      op += cell;
      report.overall += cell;
    }
  }
  return report;
}

OverlapReport OverlapAll(const std::vector<OracleSet>& a, const std::vector<OracleSet>& b,
                         const std::vector<GroundTruth>& truths) {
  OverlapReport total;
  for (const auto& truth : truths) {
    OracleSet empty;
    empty.operation_id = truth.operation_id;
    const OracleSet* sa = FindById(a, truth.operation_id);
    const OracleSet* sb = FindById(b, truth.operation_id);
    total += Overlap(sa ? *sa : empty, sb ? *sb : empty, truth);
  }
  return total;
}

}  // namespace restoracle
