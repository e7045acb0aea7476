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

#ifndef RESTORACLE_ERRORS_H_
#define RESTORACLE_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace restoracle {

// Base class for every error raised by the library. `kind()` is the stable
// machine-readable name used in reports and batch results.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define RESTORACLE_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

// Spec loading.
RESTORACLE_DEFINE_ERROR(ParseError);
RESTORACLE_DEFINE_ERROR(RefError);
RESTORACLE_DEFINE_ERROR(UnsupportedVersion);
RESTORACLE_DEFINE_ERROR(UnknownOperation);
RESTORACLE_DEFINE_ERROR(CyclicSchema);

// Prompting and normalization.
RESTORACLE_DEFINE_ERROR(UnsupportedDatatype);
RESTORACLE_DEFINE_ERROR(Unrecoverable);

// Backend dispatch.
RESTORACLE_DEFINE_ERROR(AuthError);
RESTORACLE_DEFINE_ERROR(RateLimited);
RESTORACLE_DEFINE_ERROR(TransportError);
RESTORACLE_DEFINE_ERROR(BackendError);
RESTORACLE_DEFINE_ERROR(ConfigError);

// Oracles, emission, mutation, scoring.
RESTORACLE_DEFINE_ERROR(OracleFormatError);
RESTORACLE_DEFINE_ERROR(UnsupportedOracle);
RESTORACLE_DEFINE_ERROR(ValidationFailed);
RESTORACLE_DEFINE_ERROR(NoMutableLocation);
RESTORACLE_DEFINE_ERROR(NotGreen);
RESTORACLE_DEFINE_ERROR(OperationMismatch);

#undef RESTORACLE_DEFINE_ERROR

}  // namespace restoracle

#endif  // RESTORACLE_ERRORS_H_
