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

#include "restoracle/gateway.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <thread>

#include "httplib.h"
#include "restoracle/errors.h"
#include "restoracle/heuristic.h"

namespace restoracle {
namespace {

using Clock = std::chrono::steady_clock;
using std::chrono::milliseconds;

std::string KindName(BackendConfig::Kind kind) {
  return kind == BackendConfig::Kind::kHeuristic ? "heuristic" : "openai-compatible";
}

std::string JsonModeName(BackendConfig::JsonMode mode) {
  switch (mode) {
    case BackendConfig::JsonMode::kAuto: return "auto";
    case BackendConfig::JsonMode::kOn: return "on";
    case BackendConfig::JsonMode::kOff: return "off";
  }
  return "auto";
}

std::string UtcNow() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

AuditLog* SharedAuditLog(const std::filesystem::path& path) {
  static std::mutex mutex;
  static std::map<std::filesystem::path, std::unique_ptr<AuditLog>> logs;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = logs[std::filesystem::absolute(path)];
  if (!slot) slot = std::make_unique<AuditLog>(path);
  return slot.get();
}

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path without trailing slash
};

Endpoint ParseBaseUrl(const std::string& base_url) {
  std::size_t scheme = base_url.find("://");
  if (scheme == std::string::npos) throw ConfigError("baseUrl must be absolute: '" + base_url + "'");
  std::string s = base_url.substr(0, scheme);
  if (s != "http" && s != "https") throw ConfigError("baseUrl scheme must be http or https");
  std::size_t path = base_url.find('/', scheme + 3);
  Endpoint e;
  e.origin = base_url.substr(0, path);
  e.prefix = path == std::string::npos ? "" : base_url.substr(path);
  while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
  return e;
}

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Truncate(const std::string& body) {
  return body.size() > 500 ? body.substr(0, 500) + "..." : body;
}

class OpenAiClient {
 public:
  OpenAiClient(const BackendConfig& config, std::atomic<bool>* json_rejected)
      : config_(config), json_rejected_(json_rejected) {}

  RawCompletion Run(const PromptBundle& bundle) {
    const char* key = std::getenv(config_.api_key_env_var.c_str());
    if (key == nullptr || *key == '\0') {
      throw AuthError("environment variable " + config_.api_key_env_var + " is not set");
    }
    Endpoint endpoint = ParseBaseUrl(config_.base_url);
    httplib::Client client(endpoint.origin);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    client.set_write_timeout(config_.timeout);
    client.set_bearer_token_auth(key);
    const std::string path = endpoint.prefix + "/chat/completions";

    std::mt19937_64 rng(config_.jitter_seed ^ Fnv1a(bundle.field_path.str()));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    RawCompletion out;
    out.field_path = bundle.field_path;
    auto start = Clock::now();
    int retries = 0;
    while (true) {
      ++out.attempts;
      bool want_json = config_.json_mode == BackendConfig::JsonMode::kOn ||
                       (config_.json_mode == BackendConfig::JsonMode::kAuto && !json_rejected_->load());
      httplib::Result result =
          client.Post(path, RequestBody(bundle, want_json).dump(), "application/json");
      std::string failure;
      std::optional<milliseconds> retry_after;
      bool rate_limited = false;
      if (!result) {
        failure = "transport error: " + httplib::to_string(result.error());
      } else {
        int status = result->status;
        if (status >= 200 && status < 300) {
          Parse(result->body, out);
          out.latency = std::chrono::duration_cast<milliseconds>(Clock::now() - start);
          return out;
        }
        if (status == 401 || status == 403) {
          throw AuthError("HTTP " + std::to_string(status) + ": " + Truncate(result->body));
        }
        if (status == 400 && want_json && config_.json_mode == BackendConfig::JsonMode::kAuto &&
            result->body.find("response_format") != std::string::npos) {
          json_rejected_->store(true);
          continue;
        }
        if (status == 429 || status >= 500) {
          rate_limited = status == 429;
          failure = "HTTP " + std::to_string(status) + ": " + Truncate(result->body);
          if (result->has_header("Retry-After")) {
            try {
              retry_after = milliseconds(
                  static_cast<long long>(std::stod(result->get_header_value("Retry-After")) * 1000));
            } catch (const std::exception&) {
            }
          }
        } else {
          throw BackendError("HTTP " + std::to_string(status) + ": " + Truncate(result->body));
        }
      }
      if (retries >= config_.max_retries) {
        std::string message = failure + " (after " + std::to_string(out.attempts) + " attempts)";
        if (rate_limited) throw RateLimited(message);
        if (!result) throw TransportError(message);
        throw BackendError(message);
      }
      milliseconds delay = config_.backoff.Delay(retries, unit(rng));
      if (retry_after) delay = std::min(std::max(delay, *retry_after), config_.backoff.cap);
      ++retries;
      std::this_thread::sleep_for(delay);
    }
  }

 private:
  Json RequestBody(const PromptBundle& bundle, bool want_json) const {
    Json body = Json::object();
    body["model"] = config_.model;
    body["messages"] = Json::array({Json{{"role", "system"}, {"content", bundle.system_prompt}},
                                     Json{{"role", "user"}, {"content", bundle.user_prompt}}});
    body["temperature"] = config_.temperature;
    body["max_tokens"] = config_.max_output_tokens;
    if (want_json) body["response_format"] = Json{{"type", "json_object"}};
    return body;
  }

  static void Parse(const std::string& body, RawCompletion& out) {
    Json json;
    try {
      json = Json::parse(body);
    } catch (const Json::parse_error&) {
      throw BackendError("response is not JSON: " + Truncate(body));
    }
    const Json* content = nullptr;
    if (json.contains("choices") && json["choices"].is_array() && !json["choices"].empty()) {
      const Json& choice = json["choices"][0];
      if (choice.contains("message") && choice["message"].contains("content") &&
          choice["message"]["content"].is_string()) {
        content = &choice["message"]["content"];
      }
    }
    if (content == nullptr) throw BackendError("response has no choices[0].message.content");
    out.text = content->get<std::string>();
    if (json.contains("usage") && json["usage"].is_object()) {
      const Json& usage = json["usage"];
      out.usage.input_tokens = usage.value("prompt_tokens", std::uint64_t{0});
      out.usage.output_tokens = usage.value("completion_tokens", std::uint64_t{0});
      out.usage.reported = true;
    }
  }

  const BackendConfig& config_;
  std::atomic<bool>* json_rejected_;
};

RawCompletion CompleteWith(const PromptBundle& bundle, const BackendConfig& config,
                           std::atomic<bool>* json_rejected) {
  RawCompletion out;
  if (config.kind == BackendConfig::Kind::kHeuristic) {
    out.field_path = bundle.field_path;
    out.text = HeuristicCompletion(bundle);
    out.attempts = 1;
  } else {
    out = OpenAiClient(config, json_rejected).Run(bundle);
  }
  return out;
}

void Audit(const PromptBundle& bundle, const BackendConfig& config, const RawCompletion& c) {
  if (!config.audit_log.empty()) SharedAuditLog(config.audit_log)->Append(bundle, config, c);
}

}  // namespace

milliseconds BackoffPolicy::Delay(int retry, double unit) const {
  double raw = static_cast<double>(base.count()) * std::pow(factor, retry);
  raw = std::min(raw, static_cast<double>(cap.count()));
  raw *= 1.0 + jitter * std::clamp(unit, -1.0, 1.0);
  return milliseconds(static_cast<long long>(std::llround(std::max(0.0, raw))));
}

BackendConfig BackendConfig::FromJson(const Json& json) {
  if (!json.is_object()) throw ConfigError("backend config must be a JSON object");
  BackendConfig c;
  try {
    std::string kind = json.value("kind", "heuristic");
    if (kind == "heuristic") {
      c.kind = Kind::kHeuristic;
    } else if (kind == "openai-compatible") {
      c.kind = Kind::kOpenAiCompatible;
    } else {
      throw ConfigError("unknown backend kind '" + kind + "'");
    }
    c.base_url = json.value("baseUrl", c.base_url);
    c.model = json.value("model", c.model);
    c.temperature = json.value("temperature", c.temperature);
    c.max_output_tokens = json.value("maxOutputTokens", c.max_output_tokens);
    c.timeout = milliseconds(json.value("timeoutMs", static_cast<long long>(c.timeout.count())));
    c.max_retries = json.value("maxRetries", c.max_retries);
    c.max_in_flight = json.value("maxInFlight", c.max_in_flight);
    c.api_key_env_var = json.value("apiKeyEnvVar", c.api_key_env_var);
    std::string mode = json.value("jsonMode", std::string("auto"));
    if (mode == "auto") {
      c.json_mode = JsonMode::kAuto;
    } else if (mode == "on") {
      c.json_mode = JsonMode::kOn;
    } else if (mode == "off") {
      c.json_mode = JsonMode::kOff;
    } else {
      throw ConfigError("jsonMode must be auto, on or off");
    }
    if (json.contains("backoff")) {
      const Json& b = json["backoff"];
      c.backoff.base = milliseconds(b.value("baseMs", static_cast<long long>(c.backoff.base.count())));
      c.backoff.factor = b.value("factor", c.backoff.factor);
      c.backoff.jitter = b.value("jitter", c.backoff.jitter);
      c.backoff.cap = milliseconds(b.value("capMs", static_cast<long long>(c.backoff.cap.count())));
    }
    c.jitter_seed = json.value("jitterSeed", c.jitter_seed);
    c.audit_log = json.value("auditLog", std::string());
  } catch (const Json::type_error& e) {
    throw ConfigError(std::string("backend config: ") + e.what());
  }
  c.Validate();
  return c;
}

Json BackendConfig::ToJson() const {
  Json out = Json::object();
  out["kind"] = KindName(kind);
  out["baseUrl"] = base_url;
  out["model"] = model;
  out["temperature"] = temperature;
  out["maxOutputTokens"] = max_output_tokens;
  out["timeoutMs"] = timeout.count();
  out["maxRetries"] = max_retries;
  out["maxInFlight"] = max_in_flight;
  out["apiKeyEnvVar"] = api_key_env_var;
  out["jsonMode"] = JsonModeName(json_mode);
  out["backoff"] = Json{{"baseMs", backoff.base.count()},
                        {"factor", backoff.factor},
                        {"jitter", backoff.jitter},
                        {"capMs", backoff.cap.count()}};
  out["jitterSeed"] = jitter_seed;
  out["auditLog"] = audit_log.string();
  return out;
}

void BackendConfig::Validate() const {
  if (max_in_flight < 1) throw ConfigError("maxInFlight must be at least 1");
  if (max_retries < 0) throw ConfigError("maxRetries must not be negative");
  if (max_output_tokens < 1) throw ConfigError("maxOutputTokens must be positive");
  if (timeout.count() <= 0) throw ConfigError("timeoutMs must be positive");
  if (backoff.factor < 1.0 || backoff.jitter < 0.0 || backoff.jitter >= 1.0) {
    throw ConfigError("backoff factor must be >= 1 and jitter in [0, 1)");
  }
  if (kind == Kind::kOpenAiCompatible) {
    if (model.empty()) throw ConfigError("openai-compatible backend needs a model");
    ParseBaseUrl(base_url);
  }
}

Json RawCompletion::ToJson() const {
  Json out = Json::object();
  out["fieldPath"] = field_path.str();
  out["text"] = text;
  out["usage"] = Json{{"inputTokens", usage.input_tokens},
                      {"outputTokens", usage.output_tokens},
                      {"reported", usage.reported}};
  out["latencyMs"] = latency.count();
  out["attempts"] = attempts;
  if (error_kind) out["error"] = Json{{"kind", *error_kind}, {"message", error_message}};
  return out;
}

RawCompletion RawCompletion::FromJson(const Json& json) {
  try {
    RawCompletion c;
    c.field_path = JsonPath::Parse(json.at("fieldPath").get<std::string>());
    c.text = json.at("text").get<std::string>();
    if (json.contains("usage")) {
      c.usage.input_tokens = json["usage"].value("inputTokens", std::uint64_t{0});
      c.usage.output_tokens = json["usage"].value("outputTokens", std::uint64_t{0});
      c.usage.reported = json["usage"].value("reported", false);
    }
    c.latency = milliseconds(json.value("latencyMs", 0LL));
    c.attempts = json.value("attempts", 0);
    if (json.contains("error")) {
      c.error_kind = json["error"].at("kind").get<std::string>();
      c.error_message = json["error"].value("message", "");
    }
    return c;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("completion record: ") + e.what());
  }
}

RawCompletion Complete(const PromptBundle& bundle, const BackendConfig& config) {
  config.Validate();
  std::atomic<bool> json_rejected{false};
  RawCompletion out;
  try {
    out = CompleteWith(bundle, config, &json_rejected);
  } catch (const Error& e) {
    RawCompletion failed;
    failed.field_path = bundle.field_path;
    failed.error_kind = e.kind();
    failed.error_message = e.what();
    Audit(bundle, config, failed);
    throw;
  }
  Audit(bundle, config, out);
  return out;
}

std::vector<RawCompletion> CompleteBatch(const std::vector<PromptBundle>& bundles,
                                         const BackendConfig& config) {
  config.Validate();
  std::vector<RawCompletion> results(bundles.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> json_rejected{false};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= bundles.size()) return;
      RawCompletion& out = results[i];
      try {
        out = CompleteWith(bundles[i], config, &json_rejected);
      } catch (const Error& e) {
        out = RawCompletion{};
        out.field_path = bundles[i].field_path;
        out.error_kind = e.kind();
        out.error_message = e.what();
      } catch (const std::exception& e) {
        out = RawCompletion{};
        out.field_path = bundles[i].field_path;
        out.error_kind = "TransportError";
        out.error_message = e.what();
      }
      Audit(bundles[i], config, out);
    }
  };
  std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(config.max_in_flight),
                                              bundles.size());
  if (config.kind == BackendConfig::Kind::kHeuristic) threads = std::min<std::size_t>(threads, 1);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  return results;
}

TokenUsage TotalUsage(const std::vector<RawCompletion>& completions) {
  TokenUsage total;
  for (const auto& c : completions) {
    total.input_tokens += c.usage.input_tokens;
    total.output_tokens += c.usage.output_tokens;
    total.reported = total.reported || c.usage.reported;
  }
  return total;
}

AuditLog::AuditLog(std::filesystem::path path) : path_(std::move(path)) {}

void AuditLog::Append(const PromptBundle& bundle, const BackendConfig& config,
                      const RawCompletion& completion) {
  Json record = Json::object();
  record["timestamp"] = UtcNow();
  record["operationId"] = bundle.operation_id;
  record["backend"] = KindName(config.kind);
  record["model"] = config.model;
  Json body = completion.ToJson();
  for (const auto& [key, value] : body.items()) record[key] = value;
  std::string line = record.dump(-1, ' ', false, Json::error_handler_t::replace) + "\n";
  std::lock_guard<std::mutex> lock(mutex_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw ConfigError("cannot open audit log " + path_.string());
  out << line;
}

}  // namespace restoracle
