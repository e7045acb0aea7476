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

#ifndef RESTORACLE_HEURISTIC_H_
#define RESTORACLE_HEURISTIC_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "restoracle/oracle.h"
#include "restoracle/prompt.h"
#include "restoracle/spec_model.h"

namespace restoracle {

// Offline oracle inference from OAS metadata: the deterministic backend used
// when no model is configured. Each rule reads one cue and asserts one
// oracle; a field without cues gets no oracle at all.
struct HeuristicRule {
  std::string_view id;
  std::string_view cue;
  std::string_view oracle;
};
const std::vector<HeuristicRule>& HeuristicRules();

// Values listed after "one of" in a description: "one of a, b, c and d".
// Items are separated by ", ", " and ", " or "; surrounding quotes are
// dropped. Empty when the phrase is absent or an item spans more than three
// words.
std::vector<std::string> ParseOneOf(std::string_view description);

// Inclusive numeric range stated in a description: "ranges from 1 ... 5",
// "from 1 to 5", "between 1 and 5".
std::optional<std::pair<double, double>> ParseRange(std::string_view description);

// Fixed length stated in a description: "ISO 3166-1 alpha-2" gives 2,
// "alpha-3" gives 3, "<N> characters" gives N unless bounded ("up to 10
// characters").
std::optional<std::uint64_t> ParseFixedLength(std::string_view description);

// Asserted oracles for `field`, restricted to its applicable types.
std::map<OracleType, OracleValue> InferHeuristicOracles(const ResponseField& field);

// Answer object in the reference layout: three-space indent, one key per
// line in `keys` order, inline arrays as `[ "a", "b" ]`, no trailing
// newline. Missing answers render as the no-oracle encoding.
std::string RenderAnswer(const std::vector<OracleType>& keys,
                         const std::map<OracleType, OracleValue>& answers);

// The heuristic backend's completion text for a bundle.
std::string HeuristicCompletion(const PromptBundle& bundle);

}  // namespace restoracle

#endif  // RESTORACLE_HEURISTIC_H_
