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

#include "cli.h"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "restoracle/emitter.h"
#include "restoracle/errors.h"
#include "restoracle/evaluate.h"
#include "restoracle/gateway.h"
#include "restoracle/metrics.h"
#include "restoracle/mutation.h"
#include "restoracle/normalizer.h"
#include "restoracle/oracle.h"
#include "restoracle/prompt.h"
#include "restoracle/spec_model.h"

namespace restoracle::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string UtcNow() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

struct Settings {
  Json snapshot = Json::object();
  BackendConfig backend;
  EvalOptions eval;
  std::uint64_t seed = 0;
  std::uint64_t repetitions = 100;
  int threads = 1;
};

Settings LoadSettings(const std::string& config_path, std::optional<std::uint64_t> seed) {
  Settings s;
  if (!config_path.empty()) {
    s.snapshot = ParseDocument(ReadFile(config_path), config_path);
    if (!s.snapshot.is_object()) throw ConfigError("config must be a mapping");
  }
  const Json& c = s.snapshot;
  try {
    if (c.contains("backend")) s.backend = BackendConfig::FromJson(c["backend"]);
    if (c.contains("seed")) s.seed = c["seed"].get<std::uint64_t>();
    if (c.contains("epsilon")) s.eval.epsilon = c["epsilon"].get<double>();
    if (c.contains("dateFormats")) {
      s.eval.date_formats = DateFormatRegistry(c["dateFormats"].get<std::vector<std::string>>());
    }
    if (c.contains("repetitions")) s.repetitions = c["repetitions"].get<std::uint64_t>();
    if (c.contains("threads")) s.threads = c["threads"].get<int>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (seed) s.seed = *seed;
  s.backend.jitter_seed = s.seed;
  s.backend.Validate();
  if (s.threads < 1) throw ConfigError("threads must be at least 1");
  return s;
}

// Writes command outputs under --out with a manifest, or prints the primary
// ones to standard output.
class Outputs {
 public:
  Outputs(std::string dir, std::ostream& out) : dir_(std::move(dir)), out_(out) {}

  void Write(const std::string& name, const std::string& content, bool primary = true) {
    if (dir_.empty()) {
      if (primary) out_ << content;
      return;
    }
    fs::create_directories(dir_);
    fs::path path = fs::path(dir_) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("IoError", "cannot write " + path.string());
    file << content;
    file.close();
    written_.push_back(name);
  }

  void WriteJson(const std::string& name, const Json& json, bool primary = true) {
    Write(name, json.dump(2) + "\n", primary);
  }

  void Input(const std::string& path) { inputs_.push_back(path); }

  void Finish(const std::string& command, const std::vector<std::string>& args, const Settings& settings,
              const std::string& started) {
    if (dir_.empty()) return;
    Json inputs = Json::array();
    for (const auto& p : inputs_) inputs.push_back(Json{{"path", p}, {"sha256", Sha256File(p)}});
    Json outputs = Json::array();
    for (const auto& name : written_) {
      outputs.push_back(Json{{"path", name}, {"sha256", Sha256File(fs::path(dir_) / name)}});
    }
    Json manifest = {{"tool", "restoracle"},
                     {"version", RESTORACLE_VERSION},
                     {"command", command},
                     {"arguments", args},
                     {"config", settings.snapshot},
                     {"seed", settings.seed},
                     {"inputs", inputs},
                     {"outputs", outputs},
                     {"startedAt", started},
                     {"finishedAt", UtcNow()}};
    std::ofstream file(fs::path(dir_) / "manifest.json", std::ios::binary);
    file << manifest.dump(2) << "\n";
  }

 private:
  std::string dir_;
  std::ostream& out_;
  std::vector<std::string> inputs_;
  std::vector<std::string> written_;
};

Json LoadJsonFile(const std::string& path) { return ParseDocument(ReadFile(path), path); }

OracleSet LoadSet(const std::string& path) { return OracleSet::FromJson(LoadJsonFile(path)); }

std::vector<std::string> SelectOperations(const ApiSpec& spec, const std::vector<std::string>& filter) {
  if (!filter.empty()) {
    for (const auto& id : filter) spec.FindOperation(id);
    return filter;
  }
  std::vector<std::string> ids;
  for (const auto& op : spec.operations()) ids.push_back(op.operation_id);
  return ids;
}

std::vector<std::pair<std::string, Json>> LoadResponses(const std::vector<std::string>& paths, Outputs& outputs) {
  std::vector<std::pair<std::string, Json>> out;
  for (const auto& p : paths) {
    outputs.Input(p);
    out.emplace_back(fs::path(p).filename().string(), LoadJsonFile(p));
  }
  return out;
}

std::string Jsonl(const std::vector<Json>& rows) {
  std::string out;
  for (const auto& r : rows) out += r.dump() + "\n";
  return out;
}

std::vector<Json> ReadJsonl(const std::string& path) {
  std::vector<Json> rows;
  std::istringstream in(ReadFile(path));
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  return rows;
}

struct Context {
  Settings settings;
  Outputs* outputs;
  std::ostream* err;
  void Log(const std::string& line) const { *err << "restoracle: " << line << "\n"; }
};

int CmdExtract(Context& ctx, const std::string& spec_path, const std::vector<std::string>& ops) {
  ctx.outputs->Input(spec_path);
  ApiSpec spec = ApiSpec::Load(spec_path);
  Json result = Json::array();
  for (const auto& id : SelectOperations(spec, ops)) {
    const OperationRef& op = spec.FindOperation(id);
    Extraction ex = ExtractFields(spec, id);
    Json fields = Json::array();
    for (const auto& f : ex.fields) fields.push_back(f.ToJson());
    Json warnings = Json::array();
    for (const auto& w : ex.warnings) warnings.push_back(w.ToJson());
    result.push_back(Json{{"operationId", id},
                          {"method", op.http_method},
                          {"path", op.path_template},
                          {"fields", fields},
                          {"warnings", warnings}});
  }
  ctx.outputs->WriteJson("fields.json", result);
  return kExitOk;
}

PromptTemplates LoadTemplates(Context& ctx, const std::string& path) {
  if (path.empty()) return PromptTemplates::Default();
  ctx.outputs->Input(path);
  return PromptTemplates::Load(path);
}

int CmdPrompt(Context& ctx, const std::string& spec_path, const std::vector<std::string>& ops,
              const std::string& templates_path) {
  ctx.outputs->Input(spec_path);
  ApiSpec spec = ApiSpec::Load(spec_path);
  PromptTemplates templates = LoadTemplates(ctx, templates_path);
  for (const auto& id : SelectOperations(spec, ops)) {
    ctx.outputs->Write(id + ".prompts.jsonl", BundlesToJsonl(BuildOperationPrompts(spec, id, templates)));
  }
  return kExitOk;
}

int CmdInfer(Context& ctx, const std::string& spec_path, const std::vector<std::string>& ops,
             const std::string& templates_path, const std::string& replay_dir) {
  ctx.outputs->Input(spec_path);
  ApiSpec spec = ApiSpec::Load(spec_path);
  PromptTemplates templates = LoadTemplates(ctx, templates_path);
  const BackendConfig& backend = ctx.settings.backend;
  Provenance provenance =
      backend.kind == BackendConfig::Kind::kHeuristic && replay_dir.empty() ? Provenance::kHeuristic : Provenance::kLlm;
  for (const auto& id : SelectOperations(spec, ops)) {
    std::vector<PromptBundle> bundles = BuildOperationPrompts(spec, id, templates);
    std::vector<RawCompletion> completions;
    if (replay_dir.empty()) {
      completions = CompleteBatch(bundles, backend);
    } else {
      std::string path = (fs::path(replay_dir) / (id + ".completions.jsonl")).string();
      ctx.outputs->Input(path);
      for (const auto& row : ReadJsonl(path)) completions.push_back(RawCompletion::FromJson(row));
      if (completions.size() != bundles.size()) {
        throw OperationMismatch(path + " holds " + std::to_string(completions.size()) + " completions for " +
                                std::to_string(bundles.size()) + " fields");
      }
    }
    std::vector<FieldOracleRecord> records;
    std::vector<Json> rows;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      if (completions[i].error_kind) {
        ++failed;
        ctx.Log(id + " " + bundles[i].field_path.str() + ": " + *completions[i].error_kind + ": " +
                completions[i].error_message);
      }
      records.push_back(NormalizeOrAbsent(completions[i], bundles[i]));
      rows.push_back(completions[i].ToJson());
    }
    AssembleResult assembled = Assemble(records, id, ExtractFields(spec, id).fields, provenance);
    TokenUsage usage = TotalUsage(completions);
    ctx.Log(id + ": " + std::to_string(bundles.size()) + " fields, " + std::to_string(failed) + " failed, " +
            std::to_string(assembled.oracles.AssertedCount()) + " oracles" +
            (usage.reported ? ", " + std::to_string(usage.input_tokens) + " input and " +
                                  std::to_string(usage.output_tokens) + " output tokens"
                            : ""));
    ctx.outputs->WriteJson(id + ".oracles.json", assembled.oracles.ToJson());
    ctx.outputs->Write(id + ".completions.jsonl", Jsonl(rows), false);
    ctx.outputs->WriteJson(id + ".warnings.json", WarningsReport(id, records, assembled.stripped), false);
  }
  return kExitOk;
}

int CmdReview(Context& ctx, const std::string& set_path, const std::string& spec_path, bool strict) {
  ctx.outputs->Input(set_path);
  Json doc = LoadJsonFile(set_path);
  if (!doc.is_object() || !doc.contains("operationId") || !doc["operationId"].is_string()) {
    throw OracleFormatError(set_path + ": oracle set lacks a string 'operationId'");
  }
  OracleSet set;
  set.operation_id = doc["operationId"].get<std::string>();
  Json removed = Json::array();
  auto drop = [&](const std::string& path, const std::string& key, const std::string& reason) {
    removed.push_back(Json{{"path", path}, {"oracle", key}, {"reason", reason}});
    ctx.Log("removed " + path + " " + key + ": " + reason);
  };
  if (doc.contains("fields")) {
    if (!doc["fields"].is_object()) throw OracleFormatError(set_path + ": 'fields' must be an object");
    for (auto it = doc["fields"].begin(); it != doc["fields"].end(); ++it) {
      JsonPath path;
      try {
        path = JsonPath::Parse(it.key());
      } catch (const ParseError& e) {
        drop(it.key(), "", e.what());
        continue;
      }
      if (!it->is_object()) {
        drop(it.key(), "", "field entry must map oracle keys");
        continue;
      }
      for (auto cell = it->begin(); cell != it->end(); ++cell) {
        auto type = ParseOracleKey(cell.key());
        if (!type) {
          drop(it.key(), cell.key(), "unknown oracle key");
          continue;
        }
        try {
          set.Set(path, *type, ValueFromJson(*type, cell.value()));
        } catch (const OracleFormatError& e) {
          drop(it.key(), cell.key(), e.what());
        }
      }
    }
  }
  if (!spec_path.empty()) {
    ctx.outputs->Input(spec_path);
    ApiSpec spec = ApiSpec::Load(spec_path);
    for (const auto& m : ValidateSet(set, ExtractFields(spec, set.operation_id).fields)) {
      drop(m.path.str(), std::string(OracleKey(m.type)), m.reason);
      auto entry = set.entries.find(m.path);
      if (entry == set.entries.end()) continue;
      entry->second.erase(m.type);
      if (entry->second.empty()) set.entries.erase(entry);
    }
  }
  set.provenance.clear();
  for (const auto& [path, cells] : set.entries) set.provenance[path] = Provenance::kHumanEdited;
  ctx.outputs->WriteJson(set.operation_id + ".oracles.json", set.ToJson());
  ctx.outputs->WriteJson(set.operation_id + ".review.json",
                         Json{{"operationId", set.operation_id}, {"removed", removed}}, false);
  if (strict && !removed.empty()) {
    throw ValidationFailed(std::to_string(removed.size()) + " entries failed review");
  }
  return kExitOk;
}

int CmdEmit(Context& ctx, const std::string& spec_path, const std::vector<std::string>& set_paths,
            const std::string& name) {
  ctx.outputs->Input(spec_path);
  ApiSpec spec = ApiSpec::Load(spec_path);
  std::vector<OracleSet> sets;
  for (const auto& p : set_paths) {
    ctx.outputs->Input(p);
    sets.push_back(LoadSet(p));
  }
  EmitOptions options;
  options.eval = ctx.settings.eval;
  options.collection_name = name;
  ctx.outputs->WriteJson("collection.json", EmitCollection(spec, sets, options));
  return kExitOk;
}

int CmdCheck(Context& ctx, const std::string& set_path, const std::vector<std::string>& response_paths) {
  ctx.outputs->Input(set_path);
  OracleSet set = LoadSet(set_path);
  Json per_response = Json::array();
  std::size_t total = 0;
  for (const auto& [id, response] : LoadResponses(response_paths, *ctx.outputs)) {
    Json violations = Json::array();
    for (const auto& v : Evaluate(set, response, ctx.settings.eval)) {
      violations.push_back(v.ToJson());
      ctx.Log(id + ": " + v.message);
    }
    total += violations.size();
    per_response.push_back(Json{{"response", id}, {"violations", violations}});
  }
  ctx.outputs->WriteJson("check.json",
                         Json{{"operationId", set.operation_id}, {"violations", total}, {"responses", per_response}});
  return total == 0 ? kExitOk : kExitViolations;
}

int CmdMutate(Context& ctx, const std::string& spec_path, const std::string& operation,
              const std::vector<std::string>& response_paths) {
  ctx.outputs->Input(spec_path);
  ApiSpec spec = ApiSpec::Load(spec_path);
  std::vector<ResponseField> fields = ExtractFields(spec, operation).fields;
  auto responses = LoadResponses(response_paths, *ctx.outputs);
  std::vector<Json> rows;
  for (std::uint64_t rep = 0; rep < ctx.settings.repetitions; ++rep) {
    for (std::size_t i = 0; i < responses.size(); ++i) {
      rows.push_back(
          Mutate(responses[i].second, fields, SubSeed(ctx.settings.seed, rep, i), responses[i].first).ToJson());
    }
  }
  ctx.outputs->Write("mutants.jsonl", Jsonl(rows));
  return kExitOk;
}

int CmdFdr(Context& ctx, const std::string& spec_path, const std::string& set_path,
           const std::vector<std::string>& response_paths, const std::string& mutants_path) {
  ctx.outputs->Input(spec_path);
  ctx.outputs->Input(set_path);
  ApiSpec spec = ApiSpec::Load(spec_path);
  OracleSet set = LoadSet(set_path);
  auto responses = LoadResponses(response_paths, *ctx.outputs);
  if (!mutants_path.empty()) {
    ctx.outputs->Input(mutants_path);
    std::vector<MutantRecord> mutants;
    for (const auto& row : ReadJsonl(mutants_path)) mutants.push_back(MutantRecord::FromJson(row));
    std::uint64_t detected = RecountDetected(set, responses, mutants, ctx.settings.eval);
    double percent = mutants.empty() ? 0.0 : 100.0 * static_cast<double>(detected) / static_cast<double>(mutants.size());
    ctx.outputs->WriteJson("fdr.json", Json{{"operationId", set.operation_id},
                                            {"totalMutants", mutants.size()},
                                            {"detected", detected},
                                            {"fdrPercent", percent},
                                            {"recounted", true}});
    return kExitOk;
  }
  CampaignOptions options;
  options.repetitions = ctx.settings.repetitions;
  options.seed = ctx.settings.seed;
  options.threads = ctx.settings.threads;
  options.eval = ctx.settings.eval;
  CampaignResult result = RunCampaign(set, responses, ExtractFields(spec, set.operation_id).fields, options);
  std::vector<Json> rows;
  for (const auto& m : result.mutants) rows.push_back(m.ToJson());
  ctx.Log(set.operation_id + ": " + std::to_string(result.report.detected) + " of " +
          std::to_string(result.report.total_mutants) + " mutants detected");
  ctx.outputs->WriteJson("fdr.json", result.report.ToJson());
  ctx.outputs->Write("mutants.jsonl", Jsonl(rows), false);
  return kExitOk;
}

int CmdScore(Context& ctx, const std::vector<std::string>& predicted_paths, const std::vector<std::string>& truth_paths,
             const std::vector<std::string>& against_paths, const std::string& format) {
  auto load_sets = [&](const std::vector<std::string>& paths) {
    std::vector<OracleSet> sets;
    for (const auto& p : paths) {
      ctx.outputs->Input(p);
      sets.push_back(LoadSet(p));
    }
    return sets;
  };
  std::vector<OracleSet> predicted = load_sets(predicted_paths);
  std::vector<GroundTruth> truths;
  for (const auto& p : truth_paths) {
    ctx.outputs->Input(p);
    truths.push_back(GroundTruth::FromJson(LoadJsonFile(p)));
  }
  ScoreReport report = ScoreAll(predicted, truths);
  for (const auto& w : report.warnings) ctx.Log(w);
  bool table = format == "table";
  ctx.outputs->WriteJson("score.json", report.ToJson(), !table);
  ctx.outputs->Write("score.txt", report.RenderTable(), table);
  if (!against_paths.empty()) {
    OverlapReport overlap = OverlapAll(predicted, load_sets(against_paths), truths);
    ctx.outputs->WriteJson("overlap.json", overlap.ToJson(), !table);
  }
  return kExitOk;
}

}  // namespace

std::string Sha256File(const std::filesystem::path& path) {
  std::string bytes = ReadFile(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("IoError", "sha256 failed for " + path.string());
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Static test oracles for REST APIs", "restoracle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(RESTORACLE_VERSION));
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  app.add_option("--config", config_path, "Configuration file (JSON or YAML)")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Seed for backoff jitter and mutation campaigns");
  app.add_option("--out", out_dir, "Directory for outputs and the run manifest");

  std::string spec_path, set_path, templates_path, replay_dir, operation, name, mutants_path, format = "table";
  std::vector<std::string> operations, paths, truth_paths, against_paths;
  bool strict = false;
  std::optional<std::uint64_t> repetitions;
  std::function<int(Context&)> action;

  auto* extract = app.add_subcommand("extract", "Flatten response schemas into field records")->fallthrough();
  extract->add_option("spec", spec_path, "OpenAPI document")->required()->check(CLI::ExistingFile);
  extract->add_option("--operation", operations, "Operation id (repeatable)");
  extract->callback([&] { action = [&](Context& c) { return CmdExtract(c, spec_path, operations); }; });

  auto* prompt = app.add_subcommand("prompt", "Render the per-field prompts")->fallthrough();
  prompt->add_option("spec", spec_path, "OpenAPI document")->required()->check(CLI::ExistingFile);
  prompt->add_option("--operation", operations, "Operation id (repeatable)");
  prompt->add_option("--templates", templates_path, "Prompt template file")->check(CLI::ExistingFile);
  prompt->callback([&] { action = [&](Context& c) { return CmdPrompt(c, spec_path, operations, templates_path); }; });

  auto* infer = app.add_subcommand("infer", "Infer oracle sets through the configured backend")->fallthrough();
  infer->add_option("spec", spec_path, "OpenAPI document")->required()->check(CLI::ExistingFile);
  infer->add_option("--operation", operations, "Operation id (repeatable)");
  infer->add_option("--templates", templates_path, "Prompt template file")->check(CLI::ExistingFile);
  infer->add_option("--replay", replay_dir, "Directory of recorded <operation>.completions.jsonl files")
      ->check(CLI::ExistingDirectory);
  infer->callback([&] {
    action = [&](Context& c) { return CmdInfer(c, spec_path, operations, templates_path, replay_dir); };
  });

  auto* review = app.add_subcommand("review", "Re-validate a hand-edited oracle set")->fallthrough();
  review->add_option("oracles", set_path, "Oracle set file")->required()->check(CLI::ExistingFile);
  review->add_option("--spec", spec_path, "OpenAPI document to check fields against")->check(CLI::ExistingFile);
  review->add_flag("--strict", strict, "Fail when any entry is removed");
  review->callback([&] { action = [&](Context& c) { return CmdReview(c, set_path, spec_path, strict); }; });

  auto* emit = app.add_subcommand("emit", "Emit a Postman collection with test scripts")->fallthrough();
  emit->add_option("spec", spec_path, "OpenAPI document")->required()->check(CLI::ExistingFile);
  emit->add_option("oracles", paths, "Oracle set files")->check(CLI::ExistingFile);
  emit->add_option("--name", name, "Collection name");
  emit->callback([&] { action = [&](Context& c) { return CmdEmit(c, spec_path, paths, name); }; });

  auto* check = app.add_subcommand("check", "Evaluate an oracle set over recorded responses")->fallthrough();
  check->add_option("oracles", set_path, "Oracle set file")->required()->check(CLI::ExistingFile);
  check->add_option("responses", paths, "Response bodies")->required()->check(CLI::ExistingFile);
  check->callback([&] { action = [&](Context& c) { return CmdCheck(c, set_path, paths); }; });

  auto* mutate = app.add_subcommand("mutate", "Generate seeded single-fault mutants")->fallthrough();
  mutate->add_option("spec", spec_path, "OpenAPI document")->required()->check(CLI::ExistingFile);
  mutate->add_option("responses", paths, "Response bodies")->required()->check(CLI::ExistingFile);
  mutate->add_option("--operation", operation, "Operation id")->required();
  mutate->add_option("--repetitions", repetitions, "Mutants per response");
  mutate->callback([&] { action = [&](Context& c) { return CmdMutate(c, spec_path, operation, paths); }; });

  auto* fdr = app.add_subcommand("fdr", "Run a mutation campaign and report the detection ratio")->fallthrough();
  fdr->add_option("spec", spec_path, "OpenAPI document")->required()->check(CLI::ExistingFile);
  fdr->add_option("oracles", set_path, "Oracle set file")->required()->check(CLI::ExistingFile);
  fdr->add_option("responses", paths, "Green response bodies")->required()->check(CLI::ExistingFile);
  fdr->add_option("--repetitions", repetitions, "Mutants per response");
  fdr->add_option("--mutants", mutants_path, "Recount stored mutants instead of generating")
      ->check(CLI::ExistingFile);
  fdr->callback([&] { action = [&](Context& c) { return CmdFdr(c, spec_path, set_path, paths, mutants_path); }; });

  auto* score = app.add_subcommand("score", "Score oracle sets against ground truth")->fallthrough();
  score->add_option("oracles", paths, "Predicted oracle sets")->required()->check(CLI::ExistingFile);
  score->add_option("--truth", truth_paths, "Ground-truth files")->required()->check(CLI::ExistingFile);
  score->add_option("--against", against_paths, "Second group of sets for overlap")->check(CLI::ExistingFile);
  score->add_option("--format", format, "Standard output format")->check(CLI::IsMember({"table", "json"}));
  score->callback([&] { action = [&](Context& c) { return CmdScore(c, paths, truth_paths, against_paths, format); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string started = UtcNow();
  Outputs outputs(out_dir, out);
  Context ctx{{}, &outputs, &err};
  try {
    ctx.settings = LoadSettings(config_path, seed);
    if (!config_path.empty()) outputs.Input(config_path);
    if (repetitions) ctx.settings.repetitions = *repetitions;
    ctx.settings.snapshot["seed"] = ctx.settings.seed;
    ctx.settings.snapshot["repetitions"] = ctx.settings.repetitions;
    int code = action(ctx);
    outputs.Finish(app.get_subcommands().front()->get_name(), args, ctx.settings, started);
    return code;
  } catch (const UsageError& e) {
    err << "restoracle: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "restoracle: " << e.kind() << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "restoracle: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace restoracle::cli
