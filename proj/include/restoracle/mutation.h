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

#ifndef RESTORACLE_MUTATION_H_
#define RESTORACLE_MUTATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "restoracle/evaluate.h"
#include "restoracle/oracle.h"
#include "restoracle/spec_model.h"

namespace restoracle {

enum class MutationOperator {
  kBoolFlip,
  kNumAddDelta,
  kNumNegate,
  kNumReplaceRandom,
  kStrMutateChar,
  kStrReplaceRandom,
  kStrEmpty,
  kStrCaseToggle,
  kArrRemoveElement,
  kArrDuplicateElement,
  kArrSwapAdjacent,
  kArrShuffle,
};
inline constexpr int kMutationOperatorCount = 12;

const std::vector<MutationOperator>& AllMutationOperators();
std::string_view OperatorName(MutationOperator op);
std::optional<MutationOperator> ParseOperator(std::string_view name);

// SplitMix64 step; derives independent sub-seeds from one campaign seed.
std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t SubSeed(std::uint64_t seed, std::uint64_t repetition, std::uint64_t response);

// A value that a mutation operator may rewrite, with the schema facts that
// keep the mutant valid.
struct MutableLocation {
  Location location;
  Datatype datatype = Datatype::kString;
  std::optional<std::vector<Json>> enum_values;
  // minimum, maximum, exclusiveMinimum, exclusiveMaximum, multipleOf,
  // minLength, maxLength, pattern, minItems, maxItems, uniqueItems.
  Json constraints = Json::object();
};

// Every location of `response` addressed by `fields` whose value has the
// field's type; elements of primitive arrays are locations of their own.
std::vector<MutableLocation> MutableLocations(const Json& response,
                                              const std::vector<ResponseField>& fields);

bool IsApplicable(MutationOperator op, const MutableLocation& location, const Json& value);

struct MutantRecord {
  std::string response_id;
  std::uint64_t seed = 0;
  MutationOperator op = MutationOperator::kBoolFlip;
  Location location;
  Json before;
  Json after;
  // Set by campaigns.
  std::optional<bool> detected;

  // The response with `after` written at `location`.
  Json Apply(const Json& response) const;

  Json ToJson() const;
  static MutantRecord FromJson(const Json& json);
  bool operator==(const MutantRecord&) const = default;
};

// Picks one applicable (location, operator) pair uniformly with the seeded
// generator and applies it. Throws NoMutableLocation.
MutantRecord Mutate(const Json& response, const std::vector<ResponseField>& fields,
                    std::uint64_t seed, std::string response_id = "");

struct OperatorTally {
  std::uint64_t total = 0;
  std::uint64_t detected = 0;
};

struct FdrReport {
  std::string operation_id;
  std::uint64_t responses = 0;
  std::uint64_t repetitions = 0;
  std::uint64_t total_mutants = 0;
  std::uint64_t detected = 0;
  std::map<MutationOperator, OperatorTally> per_operator;

  double FdrPercent() const;
  Json ToJson() const;
};

struct CampaignOptions {
  std::uint64_t repetitions = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  EvalOptions eval;
};

struct CampaignResult {
  FdrReport report;
  // Ordered by (repetition, response).
  std::vector<MutantRecord> mutants;
};

// One mutant per (repetition, response), each seeded with
// SubSeed(seed, repetition, response index); a mutant is detected when
// Evaluate reports a violation. Throws NotGreen when a baseline response
// already violates an oracle and NoMutableLocation when a response offers
// nothing to mutate.
CampaignResult RunCampaign(const OracleSet& oracles,
                           const std::vector<std::pair<std::string, Json>>& responses,
                           const std::vector<ResponseField>& fields,
                           const CampaignOptions& options);

// Detected count re-derived from stored records: each record is applied to
// its response and the result re-evaluated.
std::uint64_t RecountDetected(const OracleSet& oracles,
                              const std::vector<std::pair<std::string, Json>>& responses,
                              const std::vector<MutantRecord>& mutants,
                              const EvalOptions& options = {});

}  // namespace restoracle

#endif  // RESTORACLE_MUTATION_H_
