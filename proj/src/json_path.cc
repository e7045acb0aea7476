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

#include "restoracle/json_path.h"

#include <cctype>
#include <string>
#include <utility>

#include "restoracle/errors.h"

namespace restoracle {
namespace {

void AppendKey(std::string& out, const std::string& key, bool first) {
  if (IsBareKey(key)) {
    if (!first) out += '.';
    out += key;
  } else {
    out += '[';
    out += Json(key).dump();
    out += ']';
  }
}

bool IsBareChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '$' || c == '@' || c == ':';
}

// Shared scanner for JsonPath and Location text. `on_bracket` handles the
// contents of a `[...]` that is not a quoted key.
class PathScanner {
 public:
  explicit PathScanner(std::string_view text) : text_(text) {}

  template <typename OnKey, typename OnBracket>
  void Run(OnKey on_key, OnBracket on_bracket) {
    if (text_ == "$") return;
    if (text_.empty()) Fail("empty path");
    if (text_.starts_with("$.") || text_.starts_with("$[")) {
      pos_ = 1;
      if (text_[pos_] == '.') ++pos_;
    }
    bool first = true;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '[') {
        ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '"') {
          on_key(ReadQuoted());
        } else {
          std::size_t close = text_.find(']', pos_);
          if (close == std::string_view::npos) Fail("unterminated '['");
          on_bracket(text_.substr(pos_, close - pos_));
          pos_ = close;
        }
        Expect(']');
      } else {
        if (!first) {
          if (c != '.') Fail("expected '.' or '['");
          ++pos_;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && IsBareChar(text_[pos_])) ++pos_;
        if (pos_ == start) Fail("empty key");
        on_key(std::string(text_.substr(start, pos_ - start)));
      }
      first = false;
    }
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError("invalid path '" + std::string(text_) + "': " + what +
                     " at offset " + std::to_string(pos_));
  }

 private:
  std::string ReadQuoted() {
    // Find the closing quote, honoring backslash escapes.
    std::size_t end = pos_ + 1;
    while (end < text_.size() && text_[end] != '"') {
      end += text_[end] == '\\' ? 2 : 1;
    }
    if (end >= text_.size()) Fail("unterminated quoted key");
    std::string_view literal = text_.substr(pos_, end - pos_ + 1);
    pos_ = end + 1;
    try {
      return Json::parse(literal).get<std::string>();
    } catch (const Json::exception&) {
      Fail("bad quoted key");
    }
  }

  void Expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) {
      Fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

bool IsBareKey(std::string_view key) {
  if (key.empty() || key == "$") return false;
  for (char c : key) {
    if (!IsBareChar(c)) return false;
  }
  return true;
}

JsonPath::JsonPath(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    text_ = "$";
    return;
  }
  bool first = true;
  for (const auto& segment : segments_) {
    if (const auto* key = std::get_if<std::string>(&segment)) {
      AppendKey(text_, *key, first);
    } else {
      text_ += "[*]";
    }
    first = false;
  }
}

JsonPath JsonPath::Parse(std::string_view text) {
  std::vector<Segment> segments;
  PathScanner scanner(text);
  scanner.Run([&](std::string key) { segments.emplace_back(std::move(key)); },
              [&](std::string_view inner) {
                if (inner != "*") scanner.Fail("expected [*]");
                segments.emplace_back(Wildcard{});
              });
  return JsonPath(std::move(segments));
}

JsonPath JsonPath::Child(std::string key) const {
  auto segments = segments_;
  segments.emplace_back(std::move(key));
  return JsonPath(std::move(segments));
}

JsonPath JsonPath::Elements() const {
  auto segments = segments_;
  segments.emplace_back(Wildcard{});
  return JsonPath(std::move(segments));
}

bool JsonPath::has_wildcard() const {
  for (const auto& segment : segments_) {
    if (std::holds_alternative<Wildcard>(segment)) return true;
  }
  return false;
}

std::string JsonPath::LastName() const {
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    if (const auto* key = std::get_if<std::string>(&*it)) return *key;
  }
  return "$";
}

Location Location::Parse(std::string_view text) {
  std::vector<Segment> segments;
  PathScanner scanner(text);
  scanner.Run([&](std::string key) { segments.emplace_back(std::move(key)); },
              [&](std::string_view inner) {
                if (inner.empty()) scanner.Fail("empty index");
                std::size_t index = 0;
                for (char c : inner) {
                  if (!std::isdigit(static_cast<unsigned char>(c))) {
                    scanner.Fail("expected array index");
                  }
                  index = index * 10 + static_cast<std::size_t>(c - '0');
                }
                segments.emplace_back(index);
              });
  return Location(std::move(segments));
}

Location Location::Child(std::string key) const {
  auto segments = segments_;
  segments.emplace_back(std::move(key));
  return Location(std::move(segments));
}

Location Location::Index(std::size_t index) const {
  auto segments = segments_;
  segments.emplace_back(index);
  return Location(std::move(segments));
}

std::string Location::str() const {
  if (segments_.empty()) return "$";
  std::string out;
  bool first = true;
  for (const auto& segment : segments_) {
    if (const auto* key = std::get_if<std::string>(&segment)) {
      AppendKey(out, *key, first);
    } else {
      out += '[' + std::to_string(std::get<std::size_t>(segment)) + ']';
    }
    first = false;
  }
  return out;
}

Json::json_pointer Location::ToPointer() const {
  Json::json_pointer pointer;
  for (const auto& segment : segments_) {
    if (const auto* key = std::get_if<std::string>(&segment)) {
      pointer /= *key;
    } else {
      pointer /= std::get<std::size_t>(segment);
    }
  }
  return pointer;
}

std::vector<PathMatch> ResolvePath(const JsonPath& path,
                                   const Json& document) {
  std::vector<PathMatch> frontier{{Location(), std::cref(document)}};
  for (const auto& segment : path.segments()) {
    std::vector<PathMatch> next;
    for (const auto& match : frontier) {
      const Json& value = match.value.get();
      if (const auto* key = std::get_if<std::string>(&segment)) {
        if (!value.is_object()) continue;
        auto it = value.find(*key);
        if (it == value.end()) continue;
        next.push_back({match.location.Child(*key), std::cref(*it)});
      } else {
        if (!value.is_array()) continue;
        for (std::size_t i = 0; i < value.size(); ++i) {
          next.push_back({match.location.Index(i), std::cref(value[i])});
        }
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace restoracle
