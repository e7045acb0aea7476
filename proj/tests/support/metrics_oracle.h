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

#ifndef RESTORACLE_TESTS_SUPPORT_METRICS_ORACLE_H_
#define RESTORACLE_TESTS_SUPPORT_METRICS_ORACLE_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "restoracle/metrics.h"
#include "test_util.h"

namespace restoracle::testing {

struct Tally {
  std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
};

// Canonical form of a JSON-encoded oracle value: sets sorted and deduped,
// no-oracle encodings as null.
Json CanonicalValue(const Json& v);

// Brute force over every (field, oracle key) cell using the serialized sets.
// Rows are keyed by base oracle key with lifted keys folded in.
std::map<std::string, Tally> BruteForceScore(const Json& predicted, const Json& truth,
                                             const std::vector<ResponseField>& fields, Tally& overall);

ResponseField MakeField(const std::string& path, Datatype type, std::optional<Datatype> element = std::nullopt);

// One field of each scalar type and one array of each element type.
const std::vector<ResponseField>& MicroFields();

OracleValue SmallValue(OracleType type, Gen& gen);

// A random ground truth over MicroFields() and a prediction that copies,
// replaces or omits each label; half the time it also asserts an oracle on
// the unknown field "ghost".
std::pair<OracleSet, GroundTruth> RandomScorePair(Gen& gen);

}  // namespace restoracle::testing

#endif  // RESTORACLE_TESTS_SUPPORT_METRICS_ORACLE_H_
