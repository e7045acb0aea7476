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

#ifndef RESTORACLE_JSON_PATH_H_
#define RESTORACLE_JSON_PATH_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace restoracle {

// Insertion-ordered JSON. Every document the library reads or writes keeps
// key order so that outputs are byte-stable.
using Json = nlohmann::ordered_json;

struct Wildcard {
  bool operator==(const Wildcard&) const = default;
};

// Address of a response field inside an operation's response schema, e.g.
// `businesses[*].price`. The empty path is the response root and renders as
// `$`. Keys that are not plain identifiers render in bracketed JSON-string
// form: `meta["content-type.v2"]`.
class JsonPath {
 public:
  using Segment = std::variant<std::string, Wildcard>;

  JsonPath() : text_("$") {}
  explicit JsonPath(std::vector<Segment> segments);

  // Throws ParseError on malformed input.
  static JsonPath Parse(std::string_view text);

  JsonPath Child(std::string key) const;
  JsonPath Elements() const;

  const std::vector<Segment>& segments() const { return segments_; }
  bool is_root() const { return segments_.empty(); }
  bool has_wildcard() const;
  // Last key segment, or "$" when the path has none.
  std::string LastName() const;

  const std::string& str() const { return text_; }

  bool operator==(const JsonPath& other) const { return text_ == other.text_; }
  std::strong_ordering operator<=>(const JsonPath& other) const {
    return text_ <=> other.text_;
  }

 private:
  std::vector<Segment> segments_;
  std::string text_;
};

// A concrete position inside one JSON document: keys and array indices.
class Location {
 public:
  using Segment = std::variant<std::string, std::size_t>;

  Location() = default;
  explicit Location(std::vector<Segment> segments)
      : segments_(std::move(segments)) {}

  static Location Parse(std::string_view text);

  Location Child(std::string key) const;
  Location Index(std::size_t index) const;

  const std::vector<Segment>& segments() const { return segments_; }
  std::string str() const;
  Json::json_pointer ToPointer() const;

  bool operator==(const Location&) const = default;

 private:
  std::vector<Segment> segments_;
};

struct PathMatch {
  Location location;
  std::reference_wrapper<const Json> value;
};

// Every value `path` addresses in `document`. Wildcards fan out over array
// elements in index order; a key on a non-object or a missing key yields no
// match. Never throws.
std::vector<PathMatch> ResolvePath(const JsonPath& path, const Json& document);

// True when `key` can be rendered without bracket quoting.
bool IsBareKey(std::string_view key);

}  // namespace restoracle

#endif  // RESTORACLE_JSON_PATH_H_
