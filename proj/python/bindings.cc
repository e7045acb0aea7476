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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "restoracle/emitter.h"
#include "restoracle/errors.h"
#include "restoracle/evaluate.h"
#include "restoracle/gateway.h"
#include "restoracle/heuristic.h"
#include "restoracle/metrics.h"
#include "restoracle/mutation.h"
#include "restoracle/normalizer.h"
#include "restoracle/prompt.h"
#include "restoracle/spec_model.h"

namespace py = pybind11;

namespace restoracle {
namespace {

// Values cross the boundary as JSON text; the Python package wraps them.
std::string Dump(const Json& json) { return json.dump(); }
Json Parse(const std::string& text) { return Json::parse(text); }

std::vector<ResponseField> Fields(const std::string& spec_path, const std::string& operation_id) {
  return ExtractFields(ApiSpec::Load(spec_path), operation_id).fields;
}

std::string ExtractJson(const std::string& spec_path, const std::string& operation_id) {
  Json out = Json::array();
  for (const auto& f : Fields(spec_path, operation_id)) out.push_back(f.ToJson());
  return Dump(out);
}

std::vector<std::string> OperationIds(const std::string& spec_path) {
  ApiSpec spec = ApiSpec::Load(spec_path);
  std::vector<std::string> out;
  for (const auto& op : spec.operations()) out.push_back(op.operation_id);
  return out;
}

std::string PromptsJsonl(const std::string& spec_path, const std::string& operation_id) {
  return BundlesToJsonl(BuildOperationPrompts(ApiSpec::Load(spec_path), operation_id));
}

std::string InferHeuristic(const std::string& spec_path, const std::string& operation_id) {
  ApiSpec spec = ApiSpec::Load(spec_path);
  std::vector<FieldOracleRecord> records;
  for (const auto& bundle : BuildOperationPrompts(spec, operation_id)) {
    records.push_back(Normalize(HeuristicCompletion(bundle), bundle));
  }
  return Dump(
      Assemble(records, operation_id, ExtractFields(spec, operation_id).fields, Provenance::kHeuristic).oracles.ToJson());
}

std::string NormalizeText(const std::string& spec_path, const std::string& operation_id,
                          const std::string& field_path, const std::string& text) {
  ApiSpec spec = ApiSpec::Load(spec_path);
  JsonPath path = JsonPath::Parse(field_path);
  for (const auto& bundle : BuildOperationPrompts(spec, operation_id)) {
    if (bundle.field_path == path) return Dump(Normalize(text, bundle).ToJson());
  }
  throw UnknownOperation("no prompt for field '" + field_path + "' of " + operation_id);
}

EvalOptions Options(double epsilon) {
  EvalOptions options;
  options.epsilon = epsilon;
  return options;
}

std::string EvaluateJson(const std::string& set, const std::string& response, double epsilon) {
  Json out = Json::array();
  for (const auto& v : Evaluate(OracleSet::FromJson(Parse(set)), Parse(response), Options(epsilon))) {
    out.push_back(v.ToJson());
  }
  return Dump(out);
}

std::string ValidateSetJson(const std::string& set, const std::string& spec_path) {
  OracleSet oracles = OracleSet::FromJson(Parse(set));
  Json out = Json::array();
  for (const auto& m : ValidateSet(oracles, Fields(spec_path, oracles.operation_id))) out.push_back(m.ToJson());
  return Dump(out);
}

std::string TestScript(const std::string& set, double epsilon) {
  EmitOptions options;
  options.eval = Options(epsilon);
  std::string out;
  for (const auto& line : EmitTestScript(OracleSet::FromJson(Parse(set)), options)) out += line + "\n";
  return out;
}

std::string Collection(const std::string& spec_path, const std::vector<std::string>& sets, double epsilon) {
  std::vector<OracleSet> parsed;
  for (const auto& s : sets) parsed.push_back(OracleSet::FromJson(Parse(s)));
  EmitOptions options;
  options.eval = Options(epsilon);
  return Dump(EmitCollection(ApiSpec::Load(spec_path), parsed, options));
}

std::string MutateJson(const std::string& spec_path, const std::string& operation_id, const std::string& response,
                       std::uint64_t seed) {
  return Dump(Mutate(Parse(response), Fields(spec_path, operation_id), seed).ToJson());
}

std::string ApplyMutant(const std::string& mutant, const std::string& response) {
  return Dump(MutantRecord::FromJson(Parse(mutant)).Apply(Parse(response)));
}

std::string Campaign(const std::string& spec_path, const std::string& set,
                     const std::vector<std::string>& responses, std::uint64_t repetitions, std::uint64_t seed) {
  OracleSet oracles = OracleSet::FromJson(Parse(set));
  std::vector<std::pair<std::string, Json>> corpus;
  for (std::size_t i = 0; i < responses.size(); ++i) corpus.emplace_back(std::to_string(i), Parse(responses[i]));
  CampaignOptions options;
  options.repetitions = repetitions;
  options.seed = seed;
  CampaignResult result = RunCampaign(oracles, corpus, Fields(spec_path, oracles.operation_id), options);
  Json mutants = Json::array();
  for (const auto& m : result.mutants) mutants.push_back(m.ToJson());
  return Dump(Json{{"report", result.report.ToJson()}, {"mutants", mutants}});
}

std::string ScoreJson(const std::string& predicted, const std::string& truth) {
  ScoreReport report = Score(OracleSet::FromJson(Parse(predicted)), GroundTruth::FromJson(Parse(truth)));
  Json out = report.ToJson();
  out["table"] = report.RenderTable();
  return Dump(out);
}

std::string OverlapJson(const std::string& a, const std::string& b, const std::string& truth) {
  return Dump(Overlap(OracleSet::FromJson(Parse(a)), OracleSet::FromJson(Parse(b)),
                      GroundTruth::FromJson(Parse(truth)))
                  .ToJson());
}

}  // namespace
}  // namespace restoracle

PYBIND11_MODULE(_core, m) {
  using namespace restoracle;
  m.doc() = "restoracle native core";
  py::exception<Error>(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::module_::import("restoracle._core").attr("Error");
      py::object exc = type(e.kind() + ": " + e.what());
      exc.attr("kind") = e.kind();
      PyErr_SetObject(type.ptr(), exc.ptr());
    } catch (const Json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
  m.def("operation_ids", &OperationIds);
  m.def("extract_fields", &ExtractJson);
  m.def("prompts_jsonl", &PromptsJsonl);
  m.def("infer_heuristic", &InferHeuristic);
  m.def("normalize", &NormalizeText);
  m.def("evaluate", &EvaluateJson);
  m.def("validate_set", &ValidateSetJson);
  m.def("test_script", &TestScript);
  m.def("collection", &Collection);
  m.def("mutate", &MutateJson);
  m.def("apply_mutant", &ApplyMutant);
  m.def("campaign", &Campaign);
  m.def("score", &ScoreJson);
  m.def("overlap", &OverlapJson);
}
