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

#ifndef RESTORACLE_GATEWAY_H_
#define RESTORACLE_GATEWAY_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "restoracle/json_path.h"
#include "restoracle/prompt.h"

namespace restoracle {

struct BackoffPolicy {
  std::chrono::milliseconds base{1000};
  double factor = 2.0;
  double jitter = 0.2;  // +/- fraction of the computed delay
  std::chrono::milliseconds cap{30000};

  // Delay before retry number `retry` (0-based), with `unit` in [-1, 1]
  // scaling the jitter.
  std::chrono::milliseconds Delay(int retry, double unit) const;
};

struct BackendConfig {
  enum class Kind { kOpenAiCompatible, kHeuristic };
  enum class JsonMode { kAuto, kOn, kOff };

  Kind kind = Kind::kHeuristic;
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string model;
  double temperature = 0.0;
  int max_output_tokens = 1024;
  std::chrono::milliseconds timeout{60000};
  int max_retries = 5;
  int max_in_flight = 4;
  std::string api_key_env_var = "OPENAI_API_KEY";
  // kAuto requests response_format json_object and drops it when the
  // endpoint rejects the parameter.
  JsonMode json_mode = JsonMode::kAuto;
  BackoffPolicy backoff;
  std::uint64_t jitter_seed = 0;
  // JSON-Lines file every completion is appended to; empty disables it.
  std::filesystem::path audit_log;

  // Keys: kind ("openai-compatible" | "heuristic"), baseUrl, model,
  // temperature, maxOutputTokens, timeoutMs, maxRetries, maxInFlight,
  // apiKeyEnvVar, jsonMode ("auto" | "on" | "off"), backoff {baseMs, factor,
  // jitter, capMs}, jitterSeed, auditLog. Throws ConfigError.
  static BackendConfig FromJson(const Json& json);
  Json ToJson() const;
  void Validate() const;
};

struct TokenUsage {
  std::uint64_t input_tokens = 0;
  std::uint64_t output_tokens = 0;
  bool reported = false;

  bool operator==(const TokenUsage&) const = default;
};

struct RawCompletion {
  JsonPath field_path;
  // Verbatim model output.
  std::string text;
  TokenUsage usage;
  // Always zero for the heuristic backend.
  std::chrono::milliseconds latency{0};
  int attempts = 0;
  // Set on batch items that failed: error kind name and message.
  std::optional<std::string> error_kind;
  std::string error_message;

  bool ok() const { return !error_kind.has_value(); }
  Json ToJson() const;
  static RawCompletion FromJson(const Json& json);
};

// Blocking single completion. Throws AuthError, RateLimited, TransportError
// or BackendError.
RawCompletion Complete(const PromptBundle& bundle, const BackendConfig& config);

// At most `max_in_flight` requests outstanding; output order equals input
// order; failures are recorded on their item and never abort siblings.
std::vector<RawCompletion> CompleteBatch(const std::vector<PromptBundle>& bundles,
                                         const BackendConfig& config);

TokenUsage TotalUsage(const std::vector<RawCompletion>& completions);

// Thread-safe JSON-Lines audit sink.
class AuditLog {
 public:
  explicit AuditLog(std::filesystem::path path);
  void Append(const PromptBundle& bundle, const BackendConfig& config,
              const RawCompletion& completion);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mutex_;
};

}  // namespace restoracle

#endif  // RESTORACLE_GATEWAY_H_
