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

#include "restoracle/mutation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "restoracle/errors.h"
#include "restoracle/schema.h"

namespace restoracle {
namespace {

constexpr std::string_view kOperatorNames[] = {
    "BoolFlip",      "NumAddDelta",      "NumNegate", "NumReplaceRandom",
    "StrMutateChar", "StrReplaceRandom", "StrEmpty",  "StrCaseToggle",
    "ArrRemoveElement", "ArrDuplicateElement", "ArrSwapAdjacent", "ArrShuffle",
};

constexpr std::string_view kAlphanumerics =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

constexpr const char* kConstraintKeys[] = {
    "minimum",  "maximum",  "exclusiveMinimum", "exclusiveMaximum", "multipleOf", "minLength",
    "maxLength", "pattern", "minItems",         "maxItems",         "uniqueItems"};

// mt19937_64 with bounded draws that do not depend on the standard
// library's distributions, so mutant streams match across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

const ApiSpec& EmptySpec() {
  static const ApiSpec spec = ApiSpec::FromText(
      R"({"openapi": "3.0.3", "info": {"title": "-", "version": "1"}, "paths": {}})", "<mutation>");
  return spec;
}

Json LocationSchema(const MutableLocation& loc) {
  Json schema = loc.constraints;
  schema["type"] = std::string(DatatypeName(loc.datatype));
  if (loc.enum_values) schema["enum"] = *loc.enum_values;
  return schema;
}

bool Valid(const MutableLocation& loc, const Json& value) {
  return ValidateAgainstSchema(EmptySpec(), LocationSchema(loc), value).empty();
}

// Seeding mt19937_64 dominates a probe, so probes copy a seeded engine.
Rng ProbeRng() {
  static const Rng seeded(0x5EED);
  return seeded;
}

bool HasPattern(const MutableLocation& loc) { return loc.constraints.contains("pattern"); }

// UTF-8 code points of a string; invalid bytes stand alone.
std::vector<std::string> CodePoints(const std::string& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t n = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 1;
    n = std::min(n, s.size() - i);
    out.push_back(s.substr(i, n));
    i += n;
  }
  return out;
}

std::string Join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

bool IsAlnum(const std::string& cp) {
  return cp.size() == 1 && kAlphanumerics.find(cp[0]) != std::string_view::npos;
}

std::string ToggleCase(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') {
      c = static_cast<char>(c - 'a' + 'A');
    } else if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

Json NumberJson(const MutableLocation& loc, double v) {
  if (loc.datatype == Datatype::kInteger && std::floor(v) == v && std::fabs(v) <= 9007199254740992.0) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

bool IsNumberLocation(const MutableLocation& loc) {
  return loc.datatype == Datatype::kNumber || loc.datatype == Datatype::kInteger;
}

bool FitsLocation(MutationOperator op, const MutableLocation& loc, const Json& value) {
  switch (op) {
    case MutationOperator::kBoolFlip:
      return loc.datatype == Datatype::kBoolean && value.is_boolean();
    case MutationOperator::kNumAddDelta:
    case MutationOperator::kNumNegate:
    case MutationOperator::kNumReplaceRandom:
      return IsNumberLocation(loc) && value.is_number();
    case MutationOperator::kStrMutateChar:
    case MutationOperator::kStrReplaceRandom:
    case MutationOperator::kStrEmpty:
    case MutationOperator::kStrCaseToggle:
      return loc.datatype == Datatype::kString && value.is_string() && !HasPattern(loc);
    default:
      return loc.datatype == Datatype::kArray && value.is_array();
  }
}

// True when `out` is something `op` could produce from `in`.
bool IsOutputOf(MutationOperator op, const Json& in, const Json& out) {
  switch (op) {
    case MutationOperator::kBoolFlip:
      return out.is_boolean() && out.get<bool>() != in.get<bool>();
    case MutationOperator::kNumAddDelta: {
      if (!out.is_number()) return false;
      double d = out.get<double>() - in.get<double>();
      return std::floor(d) == d && std::fabs(d) >= 1 && std::fabs(d) <= 10 &&
             in.get<double>() + d == out.get<double>();
    }
    case MutationOperator::kNumNegate:
      return out.is_number() && out.get<double>() == -in.get<double>();
    case MutationOperator::kNumReplaceRandom:
      return out.is_number();
    case MutationOperator::kStrMutateChar: {
      if (!out.is_string()) return false;
      auto a = CodePoints(in.get<std::string>());
      auto b = CodePoints(out.get<std::string>());
      if (a.size() != b.size()) return false;
      int changed = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) {
          if (!IsAlnum(b[i])) return false;
          ++changed;
        }
      }
      return changed == 1;
    }
    case MutationOperator::kStrReplaceRandom: {
      if (!out.is_string()) return false;
      auto a = CodePoints(in.get<std::string>());
      auto b = CodePoints(out.get<std::string>());
      return a.size() == b.size() && std::all_of(b.begin(), b.end(), IsAlnum);
    }
    case MutationOperator::kStrEmpty:
      return out.is_string() && out.get<std::string>().empty();
    case MutationOperator::kStrCaseToggle:
      return out.is_string() && out.get<std::string>() == ToggleCase(in.get<std::string>());
    default:
      return false;
  }
}

std::vector<Json> EnumCandidates(MutationOperator op, const MutableLocation& loc, const Json& value) {
  std::vector<Json> out;
  for (const Json& member : *loc.enum_values) {
    if (member != value && IsOutputOf(op, value, member) && Valid(loc, member)) out.push_back(member);
  }
  return out;
}

std::vector<double> ValidDeltas(const MutableLocation& loc, double v) {
  std::vector<double> out;
  for (int d = -10; d <= 10; ++d) {
    if (d == 0 || v + d == v) continue;
    if (Valid(loc, NumberJson(loc, v + d))) out.push_back(d);
  }
  return out;
}

std::optional<Json> RandomNumber(const MutableLocation& loc, double v, Rng& rng) {
  const Json& c = loc.constraints;
  auto bound = [&](const char* key, const char* exclusive) -> std::optional<double> {
    if (c.contains(key) && c[key].is_number()) return c[key].get<double>();
    if (c.contains(exclusive) && c[exclusive].is_number()) return c[exclusive].get<double>();
    return std::nullopt;
  };
  double lo = bound("minimum", "exclusiveMinimum").value_or(v - 1000);
  double hi = bound("maximum", "exclusiveMaximum").value_or(v + 1000);
  if (!(hi >= lo) || !std::isfinite(hi - lo)) return std::nullopt;
  double step = c.contains("multipleOf") && c["multipleOf"].is_number() ? c["multipleOf"].get<double>() : 0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    double x;
    if (step > 0) {
      double k_lo = std::ceil(lo / step);
      double k_hi = std::floor(hi / step);
      if (k_hi < k_lo || k_hi - k_lo > 1e15) return std::nullopt;
      x = (k_lo + static_cast<double>(rng.Below(static_cast<std::uint64_t>(k_hi - k_lo) + 1))) * step;
    } else if (loc.datatype == Datatype::kInteger) {
      double i_lo = std::ceil(lo);
      double i_hi = std::floor(hi);
      if (i_hi < i_lo || i_hi - i_lo > 1e15) return std::nullopt;
      x = i_lo + static_cast<double>(rng.Below(static_cast<std::uint64_t>(i_hi - i_lo) + 1));
    } else {
      x = std::round((lo + rng.Unit() * (hi - lo)) * 100) / 100;
    }
    Json candidate = NumberJson(loc, x);
    if (x != v && Valid(loc, candidate)) return candidate;
  }
  return std::nullopt;
}

std::string RandomAlnum(std::size_t length, Rng& rng) {
  std::string out;
  for (std::size_t i = 0; i < length; ++i) out += kAlphanumerics[rng.Below(kAlphanumerics.size())];
  return out;
}

std::vector<std::size_t> DifferingPairs(const Json& a) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (a[i] != a[i + 1]) out.push_back(i);
  }
  return out;
}

Json DuplicateAt(const Json& a, std::size_t i) {
  Json out = a;
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(i) + 1, a[i]);
  return out;
}

Json RemoveAt(const Json& a, std::size_t i) {
  Json out = a;
  out.erase(i);
  return out;
}

// Applies `op`; nullopt when it has no valid output here.
std::optional<Json> Generate(MutationOperator op, const MutableLocation& loc, const Json& value, Rng& rng) {
  if (!FitsLocation(op, loc, value)) return std::nullopt;
  if (loc.enum_values && loc.datatype != Datatype::kArray) {
    auto candidates = EnumCandidates(op, loc, value);
    if (candidates.empty()) return std::nullopt;
    return candidates[rng.Below(candidates.size())];
  }
  switch (op) {
    case MutationOperator::kBoolFlip: {
      Json out = !value.get<bool>();
      return Valid(loc, out) ? std::optional<Json>(out) : std::nullopt;
    }
    case MutationOperator::kNumAddDelta: {
      double v = value.get<double>();
      auto deltas = ValidDeltas(loc, v);
      if (deltas.empty()) return std::nullopt;
      return NumberJson(loc, v + deltas[rng.Below(deltas.size())]);
    }
    case MutationOperator::kNumNegate: {
      double v = value.get<double>();
      if (v == 0) return std::nullopt;
      Json out = NumberJson(loc, -v);
      return Valid(loc, out) ? std::optional<Json>(out) : std::nullopt;
    }
    case MutationOperator::kNumReplaceRandom:
      return RandomNumber(loc, value.get<double>(), rng);
    case MutationOperator::kStrMutateChar: {
      auto cps = CodePoints(value.get<std::string>());
      if (cps.empty()) return std::nullopt;
      std::size_t i = rng.Below(cps.size());
      std::string replacement;
      do {
        replacement = std::string(1, kAlphanumerics[rng.Below(kAlphanumerics.size())]);
      } while (replacement == cps[i]);
      cps[i] = replacement;
      Json out = Join(cps);
      return Valid(loc, out) ? std::optional<Json>(out) : std::nullopt;
    }
    case MutationOperator::kStrReplaceRandom: {
      const std::string& s = value.get_ref<const std::string&>();
      std::size_t length = CodePoints(s).size();
      if (length == 0) return std::nullopt;
      std::string out;
      do {
        out = RandomAlnum(length, rng);
      } while (out == s);
      return Valid(loc, out) ? std::optional<Json>(out) : std::nullopt;
    }
    case MutationOperator::kStrEmpty: {
      if (value.get_ref<const std::string&>().empty()) return std::nullopt;
      Json out = "";
      return Valid(loc, out) ? std::optional<Json>(out) : std::nullopt;
    }
    case MutationOperator::kStrCaseToggle: {
      Json out = ToggleCase(value.get<std::string>());
      if (out == value) return std::nullopt;
      return Valid(loc, out) ? std::optional<Json>(out) : std::nullopt;
    }
    case MutationOperator::kArrRemoveElement: {
      if (value.empty()) return std::nullopt;
      std::size_t i = rng.Below(value.size());
      Json out = RemoveAt(value, i);
      return Valid(loc, out) ? std::optional<Json>(out) : std::nullopt;
    }
    case MutationOperator::kArrDuplicateElement: {
      if (value.empty()) return std::nullopt;
      std::size_t i = rng.Below(value.size());
      Json out = DuplicateAt(value, i);
      return Valid(loc, out) ? std::optional<Json>(out) : std::nullopt;
    }
    case MutationOperator::kArrSwapAdjacent: {
      auto pairs = DifferingPairs(value);
      if (pairs.empty()) return std::nullopt;
      std::size_t i = pairs[rng.Below(pairs.size())];
      Json out = value;
      std::swap(out[i], out[i + 1]);
      return Valid(loc, out) ? std::optional<Json>(out) : std::nullopt;
    }
    case MutationOperator::kArrShuffle: {
      if (DifferingPairs(value).empty()) return std::nullopt;
      Json out = value;
      do {
        for (std::size_t i = out.size() - 1; i > 0; --i) {
          std::swap(out[i], out[rng.Below(i + 1)]);
        }
      } while (out == value);
      return Valid(loc, out) ? std::optional<Json>(out) : std::nullopt;
    }
  }
  return std::nullopt;
}

MutableLocation MakeLocation(Location location, Datatype datatype, const Json& source,
                             std::optional<std::vector<Json>> enum_values) {
  MutableLocation loc;
  loc.location = std::move(location);
  loc.datatype = datatype;
  loc.enum_values = std::move(enum_values);
  for (const char* key : kConstraintKeys) {
    if (source.contains(key)) loc.constraints[key] = source[key];
  }
  return loc;
}

bool HasType(const Json& value, Datatype type) {
  switch (type) {
    case Datatype::kString: return value.is_string();
    case Datatype::kBoolean: return value.is_boolean();
    case Datatype::kInteger: return value.is_number_integer() ||
                                    (value.is_number_float() && std::floor(value.get<double>()) == value.get<double>());
    case Datatype::kNumber: return value.is_number();
    case Datatype::kArray: return value.is_array();
    case Datatype::kObject: return value.is_object();
  }
  return false;
}

}  // namespace

const std::vector<MutationOperator>& AllMutationOperators() {
  static const std::vector<MutationOperator> ops = [] {
    std::vector<MutationOperator> out;
    for (int i = 0; i < kMutationOperatorCount; ++i) out.push_back(static_cast<MutationOperator>(i));
    return out;
  }();
  return ops;
}

std::string_view OperatorName(MutationOperator op) { return kOperatorNames[static_cast<int>(op)]; }

std::optional<MutationOperator> ParseOperator(std::string_view name) {
  for (int i = 0; i < kMutationOperatorCount; ++i) {
    if (kOperatorNames[i] == name) return static_cast<MutationOperator>(i);
  }
  return std::nullopt;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t SubSeed(std::uint64_t seed, std::uint64_t repetition, std::uint64_t response) {
  return SplitMix64(SplitMix64(SplitMix64(seed) ^ repetition) ^ response);
}

std::vector<MutableLocation> MutableLocations(const Json& response,
                                              const std::vector<ResponseField>& fields) {
  std::vector<MutableLocation> out;
  for (const auto& field : fields) {
    if (field.datatype == Datatype::kObject) continue;
    for (const auto& match : ResolvePath(field.path, response)) {
      const Json& value = match.value.get();
      if (!HasType(value, field.datatype)) continue;
      out.push_back(MakeLocation(match.location, field.datatype, field.constraints, field.enum_values));
      if (field.datatype != Datatype::kArray || !field.element_datatype ||
          *field.element_datatype == Datatype::kObject || *field.element_datatype == Datatype::kArray) {
        continue;
      }
      Json items = field.constraints.value("items", Json::object());
      std::optional<std::vector<Json>> item_enum;
      if (items.contains("enum") && items["enum"].is_array()) {
        item_enum.emplace();
        for (const auto& e : items["enum"]) {
          if (!e.is_null()) item_enum->push_back(e);
        }
      }
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (!HasType(value[i], *field.element_datatype)) continue;
        out.push_back(MakeLocation(match.location.Index(i), *field.element_datatype, items, item_enum));
      }
    }
  }
  return out;
}

bool IsApplicable(MutationOperator op, const MutableLocation& location, const Json& value) {
  // Applicability is decided by a probe with a fixed generator; every
  // operator either always finds an output or never does, except
  // NumReplaceRandom whose probe draws stand in for the search.
  Rng probe = ProbeRng();
  return Generate(op, location, value, probe).has_value();
}

Json MutantRecord::Apply(const Json& response) const {
  Json out = response;
  out[location.ToPointer()] = after;
  return out;
}

Json MutantRecord::ToJson() const {
  Json out = Json::object();
  out["responseId"] = response_id;
  out["seed"] = seed;
  out["operator"] = std::string(OperatorName(op));
  out["location"] = location.str();
  out["before"] = before;
  out["after"] = after;
  if (detected) out["detected"] = *detected;
  return out;
}

MutantRecord MutantRecord::FromJson(const Json& json) {
  try {
    MutantRecord r;
    r.response_id = json.at("responseId").get<std::string>();
    r.seed = json.at("seed").get<std::uint64_t>();
    auto op = ParseOperator(json.at("operator").get<std::string>());
    if (!op) throw ParseError("unknown mutation operator '" + json.at("operator").get<std::string>() + "'");
    r.op = *op;
    r.location = Location::Parse(json.at("location").get<std::string>());
    r.before = json.at("before");
    r.after = json.at("after");
    if (json.contains("detected")) r.detected = json["detected"].get<bool>();
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("mutant record: ") + e.what());
  }
}

MutantRecord Mutate(const Json& response, const std::vector<ResponseField>& fields,
                    std::uint64_t seed, std::string response_id) {
  std::vector<MutableLocation> locations = MutableLocations(response, fields);
  std::vector<std::pair<std::size_t, MutationOperator>> pairs;
  for (std::size_t i = 0; i < locations.size(); ++i) {
    const Json& value = response.at(locations[i].location.ToPointer());
    for (MutationOperator op : AllMutationOperators()) {
      if (IsApplicable(op, locations[i], value)) pairs.emplace_back(i, op);
    }
  }
  if (pairs.empty()) {
    throw NoMutableLocation("response " + (response_id.empty() ? std::string("<unnamed>") : response_id) +
                            " has no mutable location");
  }
  Rng rng(seed);
  auto [index, op] = pairs[rng.Below(pairs.size())];
  const MutableLocation& loc = locations[index];
  const Json& before = response.at(loc.location.ToPointer());
  std::optional<Json> after = Generate(op, loc, before, rng);
  if (!after) {
    // The probe found an output, so replay it.
    Rng probe = ProbeRng();
    after = Generate(op, loc, before, probe);
  }
  MutantRecord record;
  record.response_id = std::move(response_id);
  record.seed = seed;
  record.op = op;
  record.location = loc.location;
  record.before = before;
  record.after = *after;
  return record;
}

double FdrReport::FdrPercent() const {
  return total_mutants == 0 ? 0.0 : 100.0 * static_cast<double>(detected) / static_cast<double>(total_mutants);
}

Json FdrReport::ToJson() const {
  Json ops = Json::object();
  for (MutationOperator op : AllMutationOperators()) {
    auto it = per_operator.find(op);
    OperatorTally t = it == per_operator.end() ? OperatorTally{} : it->second;
    ops[std::string(OperatorName(op))] =
        Json{{"total", t.total},
             {"detected", t.detected},
             {"fdrPercent", t.total == 0 ? Json(nullptr)
                                         : Json(100.0 * static_cast<double>(t.detected) / static_cast<double>(t.total))}};
  }
  return Json{{"operationId", operation_id},
              {"responses", responses},
              {"repetitions", repetitions},
              {"totalMutants", total_mutants},
              {"detected", detected},
              {"fdrPercent", FdrPercent()},
              {"perOperator", ops}};
}

CampaignResult RunCampaign(const OracleSet& oracles,
                           const std::vector<std::pair<std::string, Json>>& responses,
                           const std::vector<ResponseField>& fields,
                           const CampaignOptions& options) {
  std::string red;
  for (const auto& [id, response] : responses) {
    for (const auto& v : Evaluate(oracles, response, options.eval)) red += "\n  " + id + ": " + v.message;
  }
  if (!red.empty()) throw NotGreen("baseline responses violate the oracle set:" + red);

  CampaignResult result;
  const std::size_t n = responses.size();
  const std::size_t total = n * options.repetitions;
  result.mutants.resize(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t k = next.fetch_add(1);
      if (k >= total) return;
      std::size_t rep = k / n;
      std::size_t i = k % n;
      try {
        MutantRecord record =
            Mutate(responses[i].second, fields, SubSeed(options.seed, rep, i), responses[i].first);
        record.detected = !Evaluate(oracles, record.Apply(responses[i].second), options.eval).empty();
        result.mutants[k] = std::move(record);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };
  int threads = std::max(1, options.threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  FdrReport& report = result.report;
  report.operation_id = oracles.operation_id;
  report.responses = n;
  report.repetitions = options.repetitions;
  for (const auto& m : result.mutants) {
    ++report.total_mutants;
    OperatorTally& t = report.per_operator[m.op];
    ++t.total;
    if (*m.detected) {
      ++report.detected;
      ++t.detected;
    }
  }
  return result;
}

std::uint64_t RecountDetected(const OracleSet& oracles,
                              const std::vector<std::pair<std::string, Json>>& responses,
                              const std::vector<MutantRecord>& mutants, const EvalOptions& options) {
  std::map<std::string, const Json*> by_id;
  for (const auto& [id, response] : responses) by_id[id] = &response;
  std::uint64_t detected = 0;
  for (const auto& m : mutants) {
    auto it = by_id.find(m.response_id);
    if (it == by_id.end()) throw ParseError("mutant refers to unknown response '" + m.response_id + "'");
    Json mutant = *it->second;
    mutant[m.location.ToPointer()] = m.after;
    if (!Evaluate(oracles, mutant, options).empty()) ++detected;
  }
  return detected;
}

}  // namespace restoracle
