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

#ifndef RESTORACLE_EMITTER_H_
#define RESTORACLE_EMITTER_H_

#include <string>
#include <vector>

#include "restoracle/evaluate.h"
#include "restoracle/oracle.h"
#include "restoracle/spec_model.h"

namespace restoracle {

inline constexpr const char* kPostmanSchemaUrl =
    "https://schema.getpostman.com/json/collection/v2.1.0/collection.json";

struct EmitOptions {
  // Epsilon and date layouts are compiled into the scripts so that they
  // reach the same verdicts as Evaluate with these options.
  EvalOptions eval;
  // Defaults to the API title.
  std::string collection_name;
};

// Script lines checking one asserted oracle at every location `path`
// resolves to. Each location gets its own pm.test named
// "<location> <oracle_key>"; locations whose value is missing, null or of
// another JSON type get none. Expects `_body` and the helpers from
// ScriptPreamble to be in scope. Throws UnsupportedOracle for no-oracle
// encodings or values of the wrong kind.
std::vector<std::string> EmitAssertion(const JsonPath& path, OracleType type,
                                       const OracleValue& value, const EmitOptions& options = {});

// Parses the response body and defines the helpers the given oracles use.
std::vector<std::string> ScriptPreamble(const OracleSet& oracles, const EmitOptions& options = {});

// Complete test script for one operation; empty when the set is empty.
std::vector<std::string> EmitTestScript(const OracleSet& oracles, const EmitOptions& options = {});

// Postman v2.1 collection with one request per operation of the spec, in
// spec order. Operations without a set get an empty test script. Throws
// ValidationFailed when a set names an unknown operation or does not fit the
// operation's fields.
Json EmitCollection(const ApiSpec& spec, const std::vector<OracleSet>& sets,
                    const EmitOptions& options = {});

}  // namespace restoracle

#endif  // RESTORACLE_EMITTER_H_
