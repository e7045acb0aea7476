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

#ifndef RESTORACLE_METRICS_H_
#define RESTORACLE_METRICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "restoracle/oracle.h"
#include "restoracle/spec_model.h"

namespace restoracle {

// Labeled oracles of one operation. A label holds the expected value, or
// nullopt for an explicit absence.
struct GroundTruth {
  std::string operation_id;
  std::map<JsonPath, std::map<OracleType, std::optional<OracleValue>>> labels;

  void Label(const JsonPath& path, OracleType type, std::optional<OracleValue> value);
  std::size_t AssertedCount() const;
  // The asserted labels as an oracle set.
  OracleSet Asserted() const;

  // Problems against the operation's fields: unknown paths, types that do
  // not apply to a field and unlabeled (field, oracle type) pairs.
  std::vector<std::string> Check(const std::vector<ResponseField>& fields) const;

  // Same shape as an oracle set file: {"operationId", "fields": {"<path>":
  // {"<oracle_key>": value}}} where null, false and [] mark an absence.
  Json ToJson() const;
  // Throws OracleFormatError.
  static GroundTruth FromJson(const Json& json);

  bool operator==(const GroundTruth&) const = default;
};

struct Confusion {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  // nullopt when the denominator is zero.
  std::optional<double> Precision() const;
  std::optional<double> Recall() const;
  // nullopt when precision or recall is undefined or both are zero.
  std::optional<double> F1() const;

  Confusion& operator+=(const Confusion& other);
  Json ToJson() const;
  bool operator==(const Confusion&) const = default;
};

// Per base oracle type (element-lifted types count as their base) and
// overall. A cell whose values disagree counts as one FP and one FN.
struct ScoreReport {
  std::map<OracleType, Confusion> per_type;
  Confusion overall;
  std::uint64_t cells = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::string> warnings;

  ScoreReport& operator+=(const ScoreReport& other);
  Json ToJson() const;
  // Aligned columns grouped by datatype; undefined ratios print "-" and
  // types with no truth oracle and no FP are omitted.
  std::string RenderTable() const;
};

// Throws OperationMismatch. Predicted oracles on unlabeled paths count as
// FP with a warning.
ScoreReport Score(const OracleSet& predicted, const GroundTruth& truth);
// Sums the reports of several operations. Pairs are matched by operation id;
// a truth without a prediction scores as an empty set.
ScoreReport ScoreAll(const std::vector<OracleSet>& predicted, const std::vector<GroundTruth>& truths);

struct OverlapCounts {
  std::uint64_t only_a = 0;
  std::uint64_t only_b = 0;
  std::uint64_t both = 0;
  // Asserted truth oracles.
  std::uint64_t total = 0;

  std::uint64_t Detected() const { return only_a + only_b + both; }
  OverlapCounts& operator+=(const OverlapCounts& other);
  Json ToJson() const;
  bool operator==(const OverlapCounts&) const = default;
};

// Truth oracles recalled by `a`, `b` or both.
struct OverlapReport {
  std::map<OracleType, OverlapCounts> by_type;
  std::map<std::string, OverlapCounts> by_operation;
  OverlapCounts overall;

  OverlapReport& operator+=(const OverlapReport& other);
  Json ToJson() const;
};

// Throws OperationMismatch.
OverlapReport Overlap(const OracleSet& a, const OracleSet& b, const GroundTruth& truth);
OverlapReport OverlapAll(const std::vector<OracleSet>& a, const std::vector<OracleSet>& b,
                         const std::vector<GroundTruth>& truths);

}  // namespace restoracle

#endif  // RESTORACLE_METRICS_H_
