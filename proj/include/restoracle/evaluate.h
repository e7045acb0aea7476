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

#ifndef RESTORACLE_EVALUATE_H_
#define RESTORACLE_EVALUATE_H_

#include <string>
#include <string_view>
#include <vector>

#include "restoracle/json_path.h"
#include "restoracle/oracle.h"
#include "restoracle/predicates.h"
#include "restoracle/spec_model.h"

namespace restoracle {

enum class Verdict { kPass, kFail, kNotApplicable };
std::string_view VerdictName(Verdict verdict);

struct EvalOptions {
  // Absolute tolerance for numeric bounds and numeric set membership.
  double epsilon = 0.0;
  DateFormatRegistry date_formats;
};

// Verdict of one asserted oracle on one observed value. Null observations,
// values of the wrong JSON type and no-oracle encodings are not applicable.
// Bounds and lengths are inclusive; ordering is non-strict.
Verdict CheckValue(OracleType type, const OracleValue& value, const Json& observed,
                   const EvalOptions& options = {});

struct Violation {
  JsonPath path;
  std::string location;
  OracleType type;
  OracleValue expected;
  Json observed;
  std::string message;

  Json ToJson() const;
};

// Checks every asserted oracle at every location its path resolves to.
// Output is ordered by (path, oracle type, location order).
std::vector<Violation> Evaluate(const OracleSet& oracles, const Json& response,
                                const EvalOptions& options = {});

struct SchemaMismatch {
  JsonPath path;
  OracleType type;
  std::string reason;

  Json ToJson() const;
};

// Entries whose path is not an extracted field or whose oracle type does not
// fit the field's datatype.
std::vector<SchemaMismatch> ValidateSet(const OracleSet& oracles,
                                        const std::vector<ResponseField>& fields);

}  // namespace restoracle

#endif  // RESTORACLE_EVALUATE_H_
