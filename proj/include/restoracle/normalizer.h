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

#ifndef RESTORACLE_NORMALIZER_H_
#define RESTORACLE_NORMALIZER_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "restoracle/evaluate.h"
#include "restoracle/gateway.h"
#include "restoracle/oracle.h"
#include "restoracle/prompt.h"

namespace restoracle {

enum class Repair {
  kStrippedFences,
  kExtractedJsonSubstring,
  kMergedObjects,
  kCoercedType,
  kDefaultedMissingKey,
  kRepairedSyntax,
};
std::string_view RepairName(Repair repair);
std::optional<Repair> ParseRepair(std::string_view name);

// Validated answers for one field. Every expected key has an answer; keys
// the model was not asked about land in `rejected_keys`.
struct FieldOracleRecord {
  JsonPath field_path;
  std::vector<OracleType> expected_keys;
  std::map<OracleType, OracleValue> answers;
  std::vector<Repair> repairs;
  std::vector<std::string> rejected_keys;
  std::vector<std::string> notes;
  bool unrecoverable = false;

  // Answers in the reference completion layout.
  std::string RenderAnswers() const;
  Json ToJson() const;
  static FieldOracleRecord FromJson(const Json& json);
  bool operator==(const FieldOracleRecord&) const = default;
};

// Parses completion text against the bundle's expected keys. Throws
// Unrecoverable when the text contains no JSON object.
FieldOracleRecord Normalize(std::string_view text, const PromptBundle& bundle);
FieldOracleRecord Normalize(const RawCompletion& completion, const PromptBundle& bundle);

// Like Normalize, but failed completions and unrecoverable text become an
// all-absent record flagged `unrecoverable`.
FieldOracleRecord NormalizeOrAbsent(const RawCompletion& completion, const PromptBundle& bundle);

struct AssembleResult {
  OracleSet oracles;
  std::vector<SchemaMismatch> stripped;
};

// Builds the operation's OracleSet from asserted answers and strips entries
// that do not fit the extracted fields.
AssembleResult Assemble(const std::vector<FieldOracleRecord>& records,
                        const std::string& operation_id,
                        const std::vector<ResponseField>& fields, Provenance provenance);

// {"operationId", "fields": [{"fieldPath", "repairs", "rejectedKeys",
//  "notes", "unrecoverable"}], "stripped": [...]}. Fields without findings
// are omitted.
Json WarningsReport(const std::string& operation_id,
                    const std::vector<FieldOracleRecord>& records,
                    const std::vector<SchemaMismatch>& stripped);

}  // namespace restoracle

#endif  // RESTORACLE_NORMALIZER_H_
