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

#include "restoracle/emitter.h"

#include <set>
#include <sstream>

#include "restoracle/errors.h"
#include "restoracle/predicates.h"

namespace restoracle {
namespace {

constexpr const char* kIndent = "    ";

// Identifiers a field variable must not shadow.
const std::set<std::string>& ReservedNames() {
  static const std::set<std::string> names = {
      "await", "break", "case", "catch", "class", "const", "continue", "debugger", "default",
      "delete", "do", "else", "enum", "export", "extends", "false", "finally", "for", "function",
      "if", "implements", "import", "in", "instanceof", "interface", "let", "new", "null",
      "package", "private", "protected", "public", "return", "static", "super", "switch", "this",
      "throw", "true", "try", "typeof", "var", "void", "while", "with", "yield", "arguments",
      "eval", "undefined", "NaN", "Infinity", "$", "pm", "Array", "Object", "JSON", "Math", "Number",
      "String", "RegExp", "Boolean", "Date", "console", "require", "postman"};
  return names;
}

bool IsIdentifier(const std::string& s) {
  if (s.empty()) return false;
  auto start = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '$'; };
  if (!start(s[0])) return false;
  for (char c : s) {
    if (!start(c) && !(c >= '0' && c <= '9') && c != '_') return false;
  }
  return true;
}

std::string FieldVariable(const JsonPath& path) {
  std::string name = path.LastName();
  if (IsIdentifier(name) && ReservedNames().count(name) == 0) return name;
  return "_value";
}

// JSON string literal with U+2028 and U+2029 escaped; both end a line in
// older JavaScript engines.
std::string Literal(const std::string& s) {
  std::string out = Json(s).dump();
  for (const char* sep : {"\xE2\x80\xA8", "\xE2\x80\xA9"}) {
    std::size_t at = 0;
    while ((at = out.find(sep, at)) != std::string::npos) {
      out.replace(at, 3, sep[2] == '\xA8' ? "\\u2028" : "\\u2029");
      at += 6;
    }
  }
  return out;
}

// Comment text with every line terminator and control character blanked.
std::string SafeComment(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c == 0xE2 && i + 2 < s.size() && s[i + 1] == '\x80' &&
        (s[i + 2] == '\xA8' || s[i + 2] == '\xA9')) {
      out += ' ';
      i += 2;
    } else {
      out += c < 0x20 || c == 0x7F ? ' ' : s[i];
    }
  }
  return out;
}

std::string NumberLiteral(double v) { return NumberToJson(v).dump(); }

// Regex literal for an ECMAScript pattern.
std::string RegexLiteral(const std::string& pattern) {
  std::string out = "/";
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '\\' && i + 1 < pattern.size()) {
      out += pattern.substr(i, 2);
      ++i;
    } else if (pattern[i] == '/') {
      out += "\\/";
    } else {
      out += pattern[i];
    }
  }
  return out + "/";
}

std::string ArrayLiteral(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out + "]";
}

std::string TypeGuard(Datatype type, const std::string& v) {
  switch (type) {
    case Datatype::kString: return "typeof " + v + " === \"string\"";
    case Datatype::kBoolean: return "typeof " + v + " === \"boolean\"";
    case Datatype::kNumber:
    case Datatype::kInteger: return "typeof " + v + " === \"number\"";
    case Datatype::kArray: return "Array.isArray(" + v + ")";
    case Datatype::kObject: return v + " !== null && typeof " + v + " === \"object\" && !Array.isArray(" + v + ")";
  }
  return "false";
}

// Boolean JavaScript expression true when `v` passes a scalar oracle.
std::string ScalarCondition(OracleType type, const OracleValue& value, const std::string& v,
                            const EvalOptions& options) {
  switch (type) {
    case OracleType::kStringIsUrl: return RegexLiteral(kUrlPattern) + ".test(" + v + ")";
    case OracleType::kStringIsNumeric: return RegexLiteral(kNumericPattern) + ".test(" + v + ")";
    case OracleType::kStringIsEmail: return RegexLiteral(kEmailPattern) + ".test(" + v + ")";
    case OracleType::kStringIsTime: return RegexLiteral(kTimePattern) + ".test(" + v + ")";
    case OracleType::kStringIsDate: return "_isDate(" + v + ")";
    case OracleType::kStringSpecificValues: {
      std::vector<std::string> items;
      for (const auto& s : std::get<StringSetValue>(value).values) items.push_back(Literal(s));
      return ArrayLiteral(items) + ".includes(" + v + ")";
    }
    case OracleType::kNumberSpecificValues: {
      std::vector<std::string> items;
      for (double d : std::get<NumberSetValue>(value).values) items.push_back(NumberLiteral(d));
      if (options.epsilon == 0.0) return ArrayLiteral(items) + ".includes(" + v + ")";
      return ArrayLiteral(items) + ".some(function (_s) { return Math.abs(" + v + " - _s) <= " +
             NumberLiteral(options.epsilon) + "; })";
    }
    default:
      throw UnsupportedOracle("no scalar condition for " + std::string(OracleKey(type)));
  }
}

// One expectation line for a scalar oracle; `message` is an optional
// JavaScript expression labelling the element.
std::string ScalarExpectation(OracleType type, const OracleValue& value, const std::string& v,
                              const EvalOptions& options, const std::string& message) {
  std::string subject_suffix = message.empty() ? "" : ", " + message;
  auto expect = [&](const std::string& subject) { return "pm.expect(" + subject + subject_suffix + ")"; };
  switch (type) {
    case OracleType::kBooleanAlwaysTrue: return expect(v) + ".to.be.true";
    case OracleType::kBooleanAlwaysFalse: return expect(v) + ".to.be.false";
    case OracleType::kStringFixedLength:
      return expect("[..." + v + "].length") + ".to.equal(" +
             std::to_string(*std::get<CountValue>(value).value) + ")";
    case OracleType::kNumberMinValue:
      return expect(v) + ".to.be.at.least(" +
             NumberLiteral(*std::get<BoundValue>(value).value - options.epsilon) + ")";
    case OracleType::kNumberMaxValue:
      return expect(v) + ".to.be.at.most(" +
             NumberLiteral(*std::get<BoundValue>(value).value + options.epsilon) + ")";
    default:
      return expect(ScalarCondition(type, value, v, options)) + ".to.be.true";
  }
}

struct Writer {
  std::vector<std::string> lines;
  int depth = 0;

  void Line(const std::string& text) {
    std::string indent;
    for (int i = 0; i < depth; ++i) indent += kIndent;
    lines.push_back(indent + text);
  }
  void Open(const std::string& text) {
    Line(text);
    ++depth;
  }
  void Close(const std::string& text = "}") {
    --depth;
    Line(text);
  }
};

// pm.test body for an array-level oracle on `v`.
void ArrayTestBody(Writer& w, OracleType type, const OracleValue& value, const std::string& v,
                   const EvalOptions& options) {
  if (IsLifted(type)) {
    OracleType base = BaseType(type);
    w.Open("for (let _k = 0; _k < " + v + ".length; _k++) {");
    w.Line("const _x = " + v + "[_k];");
    w.Line("if (" + TypeGuard(ObservedDatatype(base), "_x") + ") {");
    ++w.depth;
    w.Line(ScalarExpectation(base, value, "_x", options, "\"element \" + _k") + ";");
    w.Close();
    w.Close();
    return;
  }
  switch (type) {
    case OracleType::kArrayMinSize:
      w.Line("pm.expect(" + v + ".length).to.be.at.least(" +
             std::to_string(*std::get<CountValue>(value).value) + ");");
      return;
    case OracleType::kArrayMaxSize:
      w.Line("pm.expect(" + v + ".length).to.be.at.most(" +
             std::to_string(*std::get<CountValue>(value).value) + ");");
      return;
    case OracleType::kArraySpecificSizes: {
      std::vector<std::string> items;
      for (auto s : std::get<SizeSetValue>(value).values) items.push_back(std::to_string(s));
      w.Line("pm.expect(" + ArrayLiteral(items) + ".includes(" + v + ".length)).to.be.true;");
      return;
    }
    case OracleType::kArrayNumberAscOrder:
    case OracleType::kArrayNumberDescOrder: {
      std::string op = type == OracleType::kArrayNumberAscOrder ? " <= " : " >= ";
      w.Open("for (let _k = 1; _k < " + v + ".length; _k++) {");
      w.Line("pm.expect(" + v + "[_k - 1]" + op + v + "[_k], \"elements \" + (_k - 1) + \" and \" + _k).to.be.true;");
      w.Close();
      return;
    }
    default:
      throw UnsupportedOracle("no array check for " + std::string(OracleKey(type)));
  }
}

// JavaScript expression rendering the concrete location, mirroring
// Location::str().
struct NameBuilder {
  std::vector<std::string> parts;
  std::string pending;
  bool first = true;

  void Key(const std::string& key) {
    if (IsBareKey(key)) {
      pending += (first ? "" : ".") + key;
    } else {
      pending += "[" + Json(key).dump() + "]";
    }
    first = false;
  }
  void Index(const std::string& var) {
    pending += "[";
    parts.push_back(Literal(pending));
    parts.push_back(var);
    pending = "]";
    first = false;
  }
  std::string Expression(const std::string& suffix) const {
    std::string tail = (first ? std::string("$") : pending) + suffix;
    std::string out;
    for (const auto& p : parts) out += p + " + ";
    return out + Literal(tail);
  }
};

}  // namespace

std::vector<std::string> EmitAssertion(const JsonPath& path, OracleType type,
                                       const OracleValue& value, const EmitOptions& options) {
  if (!KindMatches(type, value) || !IsAsserted(value)) {
    throw UnsupportedOracle("cannot emit " + std::string(OracleKey(type)) + " = " +
                            ValueToString(value) + " for " + path.str());
  }
  Writer w;
  w.Line(SafeComment("// " + path.str() + ": " + std::string(OracleKey(type)) + " = " + ValueToString(value)));
  NameBuilder name;
  std::string current = "_body";
  std::string variable = FieldVariable(path);
  int opened = 0;
  const auto& segments = path.segments();
  for (std::size_t d = 0; d < segments.size(); ++d) {
    bool last = d + 1 == segments.size();
    std::string next = last ? variable : "_n" + std::to_string(d);
    if (const auto* key = std::get_if<std::string>(&segments[d])) {
      w.Open("if (_has(" + current + ", " + Literal(*key) + ")) {");
      w.Line("const " + next + " = " + current + "[" + Literal(*key) + "];");
      ++opened;
      name.Key(*key);
    } else {
      std::string index = "_i" + std::to_string(d);
      w.Open("if (Array.isArray(" + current + ")) {");
      w.Open("for (let " + index + " = 0; " + index + " < " + current + ".length; " + index + "++) {");
      w.Line("const " + next + " = " + current + "[" + index + "];");
      opened += 2;
      name.Index(index);
    }
    current = next;
  }
  if (segments.empty()) {
    w.Open("{");
    w.Line("const " + variable + " = _body;");
    ++opened;
  }
  std::string v = current == "_body" ? variable : current;
  std::string guard = TypeGuard(ObservedDatatype(type), v);
  if (type == OracleType::kArrayNumberAscOrder || type == OracleType::kArrayNumberDescOrder) {
    guard += " && " + v + ".every(function (_x) { return typeof _x === \"number\"; })";
  }
  w.Open("if (" + guard + ") {");
  w.Open("pm.test(" + name.Expression(" " + std::string(OracleKey(type))) + ", function () {");
  if (ObservedDatatype(type) == Datatype::kArray) {
    ArrayTestBody(w, type, value, v, options.eval);
  } else {
    w.Line(ScalarExpectation(type, value, v, options.eval, "") + ";");
  }
  w.Close("});");
  w.Close();
  for (int i = 0; i < opened; ++i) w.Close();
  return w.lines;
}

std::vector<std::string> ScriptPreamble(const OracleSet& oracles, const EmitOptions& options) {
  bool needs_date = false;
  for (const auto& [path, cells] : oracles.entries) {
    for (const auto& [type, value] : cells) {
      if (BaseType(type) == OracleType::kStringIsDate) needs_date = true;
    }
  }
  Writer w;
  w.Line("const _body = pm.response.json();");
  w.Open("function _has(o, k) {");
  w.Line("return o !== null && typeof o === \"object\" && !Array.isArray(o) && "
         "Object.prototype.hasOwnProperty.call(o, k);");
  w.Close();
  if (needs_date) {
    w.Open("const _DATE_FORMATS = [");
    for (const auto& format : options.eval.date_formats.formats()) {
      std::vector<std::string> groups;
      for (auto token : format.groups()) {
        switch (token) {
          case DateFormat::Token::kYear: groups.push_back("\"Y\""); break;
          case DateFormat::Token::kMonth: groups.push_back("\"M\""); break;
          case DateFormat::Token::kDay: groups.push_back("\"D\""); break;
          case DateFormat::Token::kHour: groups.push_back("\"h\""); break;
          case DateFormat::Token::kMinute: groups.push_back("\"m\""); break;
          case DateFormat::Token::kSecond: groups.push_back("\"s\""); break;
        }
      }
      w.Line("[" + RegexLiteral(format.ToRegex()) + ", " + ArrayLiteral(groups) + "],");
    }
    w.Close("];");
    w.Open("function _dateMatches(s, format) {");
    w.Line("const m = format[0].exec(s);");
    w.Line("if (m === null) return false;");
    w.Line("let year = 2000, month = -1, day = -1;");
    w.Open("for (let g = 0; g < format[1].length; g++) {");
    w.Line("const n = parseInt(m[g + 1], 10);");
    w.Line("const t = format[1][g];");
    w.Line("if (t === \"Y\") year = n;");
    w.Line("else if (t === \"M\") month = n;");
    w.Line("else if (t === \"D\") day = n;");
    w.Line("else if (t === \"h\" && n > 23) return false;");
    w.Line("else if ((t === \"m\" || t === \"s\") && n > 59) return false;");
    w.Close();
    w.Line("if (month !== -1 && (month < 1 || month > 12)) return false;");
    w.Line("if (day === -1) return true;");
    w.Line("if (month === -1) return day >= 1 && day <= 31;");
    w.Line("const leap = (year % 4 === 0 && year % 100 !== 0) || year % 400 === 0;");
    w.Line("const days = [31, leap ? 29 : 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];");
    w.Line("return day >= 1 && day <= days[month - 1];");
    w.Close();
    w.Open("function _isDate(s) {");
    w.Line("return _DATE_FORMATS.some(function (f) { return _dateMatches(s, f); });");
    w.Close();
  }
  return w.lines;
}

std::vector<std::string> EmitTestScript(const OracleSet& oracles, const EmitOptions& options) {
  if (oracles.AssertedCount() == 0) return {};
  std::vector<std::string> lines = ScriptPreamble(oracles, options);
  for (const auto& [path, cells] : oracles.entries) {
    for (const auto& [type, value] : cells) {
      lines.push_back("");
      auto block = EmitAssertion(path, type, value, options);
      lines.insert(lines.end(), block.begin(), block.end());
    }
  }
  return lines;
}

Json EmitCollection(const ApiSpec& spec, const std::vector<OracleSet>& sets,
                    const EmitOptions& options) {
  std::map<std::string, const OracleSet*> by_operation;
  for (const auto& set : sets) {
    const OperationRef* op = nullptr;
    try {
      op = &spec.FindOperation(set.operation_id);
    } catch (const UnknownOperation&) {
      throw ValidationFailed("oracle set names unknown operation '" + set.operation_id + "'");
    }
    auto mismatches = ValidateSet(set, ExtractFields(spec, op->operation_id).fields);
    if (!mismatches.empty()) {
      std::string message = "oracle set for " + set.operation_id + " does not fit the spec:";
      for (const auto& m : mismatches) message += "\n  " + m.path.str() + " " + std::string(OracleKey(m.type)) + ": " + m.reason;
      throw ValidationFailed(message);
    }
    if (!by_operation.emplace(set.operation_id, &set).second) {
      throw ValidationFailed("two oracle sets for operation '" + set.operation_id + "'");
    }
  }

  std::string base_url;
  const Json& doc = spec.document();
  if (doc.contains("servers") && doc["servers"].is_array() && !doc["servers"].empty() &&
      doc["servers"][0].contains("url") && doc["servers"][0]["url"].is_string()) {
    base_url = doc["servers"][0]["url"].get<std::string>();
    while (!base_url.empty() && base_url.back() == '/') base_url.pop_back();
  }

  Json items = Json::array();
  for (const auto& op : spec.operations()) {
    Json path_segments = Json::array();
    Json path_variables = Json::array();
    std::string raw = "{{baseUrl}}";
    std::stringstream stream(op.path_template);
    std::string segment;
    while (std::getline(stream, segment, '/')) {
      if (segment.empty()) continue;
      if (segment.size() > 2 && segment.front() == '{' && segment.back() == '}') {
        std::string var = segment.substr(1, segment.size() - 2);
        segment = ":" + var;
        path_variables.push_back(Json{{"key", var}, {"value", ""}});
      }
      path_segments.push_back(segment);
      raw += "/" + segment;
    }
    Json url = Json{{"raw", raw}, {"host", Json::array({"{{baseUrl}}"})}, {"path", path_segments}};
    if (!path_variables.empty()) url["variable"] = path_variables;
    Json request = Json{{"method", op.http_method},
                        {"header", Json::array({Json{{"key", "Authorization"},
                                                     {"value", "Bearer {{apiKey}}"},
                                                     {"type", "text"}}})},
                        {"url", url}};
    if (!op.summary.empty()) request["description"] = op.summary;
    std::vector<std::string> script;
    if (auto it = by_operation.find(op.operation_id); it != by_operation.end()) {
      script = EmitTestScript(*it->second, options);
    }
    Json event = Json{{"listen", "test"},
                      {"script", Json{{"type", "text/javascript"}, {"exec", script}}}};
    items.push_back(Json{{"name", op.operation_id}, {"event", Json::array({event})}, {"request", request}});
  }

  std::string name = options.collection_name.empty() ? spec.title() : options.collection_name;
  if (name.empty()) name = "restoracle";
  return Json{{"info", Json{{"name", name}, {"schema", kPostmanSchemaUrl}}},
              {"item", items},
              {"variable", Json::array({Json{{"key", "baseUrl"}, {"value", base_url}},
                                        Json{{"key", "apiKey"}, {"value", ""}}})}};
}

}  // namespace restoracle
