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

#include "restoracle/predicates.h"

#include <cstdio>
#include <string>

#include "restoracle/errors.h"

namespace restoracle {

// Keep these in lockstep with the hand-written predicates below.
const char* const kUrlPattern =
    R"(^[A-Za-z][A-Za-z0-9+.\-]*:)"
    R"((?://(?:(?:[A-Za-z0-9\-._~!$&'()*+,;=:]|%[0-9A-Fa-f]{2})*@)?)"
    R"((?:\[(?:[0-9A-Fa-f:.]+|[vV][0-9A-Fa-f]+\.[A-Za-z0-9\-._~!$&'()*+,;=:]+)\])"
    R"(|(?:[A-Za-z0-9\-._~!$&'()*+,;=]|%[0-9A-Fa-f]{2})*)(?::[0-9]*)?)"
    R"((?:/(?:[A-Za-z0-9\-._~!$&'()*+,;=:@]|%[0-9A-Fa-f]{2})*)*)"
    R"(|/(?:(?:[A-Za-z0-9\-._~!$&'()*+,;=:@]|%[0-9A-Fa-f]{2})+)"
    R"((?:/(?:[A-Za-z0-9\-._~!$&'()*+,;=:@]|%[0-9A-Fa-f]{2})*)*)?)"
    R"(|(?:[A-Za-z0-9\-._~!$&'()*+,;=:@]|%[0-9A-Fa-f]{2})+)"
    R"((?:/(?:[A-Za-z0-9\-._~!$&'()*+,;=:@]|%[0-9A-Fa-f]{2})*)*)"
    R"(|))"
    R"((?:\?(?:[A-Za-z0-9\-._~!$&'()*+,;=:@/?]|%[0-9A-Fa-f]{2})*)?)"
    R"((?:#(?:[A-Za-z0-9\-._~!$&'()*+,;=:@/?]|%[0-9A-Fa-f]{2})*)?$)";

const char* const kEmailPattern =
    R"(^[^ \t\n\v\f\r@]+@[^ \t\n\v\f\r@]+\.[^ \t\n\v\f\r@]+$)";

const char* const kTimePattern =
    R"(^(?:[01][0-9]|2[0-3]):[0-5][0-9](?::[0-5][0-9])?$)";

const char* const kNumericPattern = R"(^[+-]?[0-9]+(?:\.[0-9]+)?$)";

namespace {

bool IsAlpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsHex(char c) {
  return IsDigit(c) || (c >= 'A' && c <= 'F') || (c >= 'a' && c <= 'f');
}
bool IsUnreserved(char c) {
  return IsAlpha(c) || IsDigit(c) || c == '-' || c == '.' || c == '_' || c == '~';
}
bool IsSubDelim(char c) {
  switch (c) {
    case '!': case '$': case '&': case '\'': case '(': case ')':
    case '*': case '+': case ',': case ';': case '=':
      return true;
    default:
      return false;
  }
}
bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

// True when every character of `s` is accepted by `allowed` or is part of a
// well-formed percent escape.
template <typename Allowed>
bool AllEncoded(std::string_view s, Allowed allowed) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%') {
      if (i + 2 >= s.size()) return false;
      if (!IsHex(s[i + 1]) || !IsHex(s[i + 2])) return false;
      i += 2;
    } else if (!allowed(s[i])) {
      return false;
    }
  }
  return true;
}

bool IsPchar(char c) { return IsUnreserved(c) || IsSubDelim(c) || c == ':' || c == '@'; }

bool IsSegment(std::string_view s) { return AllEncoded(s, IsPchar); }

// ("/" segment)*
bool IsPathAbempty(std::string_view s) {
  if (s.empty()) return true;
  if (s[0] != '/') return false;
  std::size_t start = 1;
  while (true) {
    std::size_t slash = s.find('/', start);
    if (!IsSegment(s.substr(start, slash == std::string_view::npos ? std::string_view::npos
                                                                     : slash - start))) {
      return false;
    }
    if (slash == std::string_view::npos) return true;
    start = slash + 1;
  }
}

bool IsIpLiteralBody(std::string_view body) {
  if (body.empty()) return false;
  bool plain = true;
  for (char c : body) {
    if (!IsHex(c) && c != ':' && c != '.') plain = false;
  }
  if (plain) return true;
  if (body[0] != 'v' && body[0] != 'V') return false;
  std::size_t i = 1;
  while (i < body.size() && IsHex(body[i])) ++i;
  if (i == 1 || i >= body.size() || body[i] != '.') return false;
  ++i;
  if (i >= body.size()) return false;
  for (; i < body.size(); ++i) {
    char c = body[i];
    if (!IsUnreserved(c) && !IsSubDelim(c) && c != ':') return false;
  }
  return true;
}

bool IsPort(std::string_view s) {
  for (char c : s) {
    if (!IsDigit(c)) return false;
  }
  return true;
}

bool IsAuthority(std::string_view authority) {
  std::size_t at = authority.find('@');
  if (at != std::string_view::npos) {
    std::string_view userinfo = authority.substr(0, at);
    if (!AllEncoded(userinfo, [](char c) { return IsUnreserved(c) || IsSubDelim(c) || c == ':'; })) {
      return false;
    }
    authority.remove_prefix(at + 1);
  }
  std::string_view rest;
  if (!authority.empty() && authority[0] == '[') {
    std::size_t close = authority.find(']');
    if (close == std::string_view::npos) return false;
    if (!IsIpLiteralBody(authority.substr(1, close - 1))) return false;
    rest = authority.substr(close + 1);
  } else {
    std::size_t colon = authority.find(':');
    std::string_view host = authority.substr(0, colon);
    if (!AllEncoded(host, [](char c) { return IsUnreserved(c) || IsSubDelim(c); })) return false;
    rest = colon == std::string_view::npos ? std::string_view() : authority.substr(colon);
  }
  if (rest.empty()) return true;
  return rest[0] == ':' && IsPort(rest.substr(1));
}

bool IsHierPart(std::string_view hier) {
  if (hier.starts_with("//")) {
    hier.remove_prefix(2);
    std::size_t slash = hier.find('/');
    if (!IsAuthority(hier.substr(0, slash))) return false;
    return slash == std::string_view::npos || IsPathAbempty(hier.substr(slash));
  }
  if (hier.empty()) return true;
  if (hier[0] == '/') {
    if (hier.size() == 1) return true;
    std::size_t slash = hier.find('/', 1);
    std::string_view first = hier.substr(1, slash == std::string_view::npos ? std::string_view::npos
                                                                              : slash - 1);
    if (first.empty() || !IsSegment(first)) return false;
    return slash == std::string_view::npos || IsPathAbempty(hier.substr(slash));
  }
  std::size_t slash = hier.find('/');
  std::string_view first = hier.substr(0, slash);
  if (first.empty() || !IsSegment(first)) return false;
  return slash == std::string_view::npos || IsPathAbempty(hier.substr(slash));
}

bool IsQueryOrFragment(std::string_view s) {
  return AllEncoded(s, [](char c) { return IsPchar(c) || c == '/' || c == '?'; });
}

bool AllDigits(std::string_view s, std::size_t count) {
  if (s.size() != count) return false;
  for (char c : s) {
    if (!IsDigit(c)) return false;
  }
  return true;
}

}  // namespace

bool IsUrl(std::string_view s) {
  if (s.empty() || !IsAlpha(s[0])) return false;
  std::size_t i = 1;
  while (i < s.size() && (IsAlpha(s[i]) || IsDigit(s[i]) || s[i] == '+' || s[i] == '-' || s[i] == '.')) ++i;
  if (i >= s.size() || s[i] != ':') return false;
  std::string_view rest = s.substr(i + 1);
  std::size_t hash = rest.find('#');
  if (hash != std::string_view::npos) {
    if (!IsQueryOrFragment(rest.substr(hash + 1))) return false;
    rest = rest.substr(0, hash);
  }
  std::size_t question = rest.find('?');
  if (question != std::string_view::npos) {
    if (!IsQueryOrFragment(rest.substr(question + 1))) return false;
    rest = rest.substr(0, question);
  }
  return IsHierPart(rest);
}

bool IsEmail(std::string_view s) {
  std::size_t at = s.find('@');
  if (at == std::string_view::npos || s.find('@', at + 1) != std::string_view::npos) return false;
  for (char c : s) {
    if (IsAsciiSpace(c)) return false;
  }
  std::string_view local = s.substr(0, at);
  std::string_view domain = s.substr(at + 1);
  if (local.empty() || domain.size() < 3) return false;
  std::size_t dot = domain.find('.', 1);
  return dot != std::string_view::npos && dot <= domain.size() - 2;
}

bool IsTime(std::string_view s) {
  if (s.size() != 5 && s.size() != 8) return false;
  auto two = [&](std::size_t at, int max) {
    if (!IsDigit(s[at]) || !IsDigit(s[at + 1])) return false;
    return (s[at] - '0') * 10 + (s[at + 1] - '0') <= max;
  };
  if (!two(0, 23) || s[2] != ':' || !two(3, 59)) return false;
  return s.size() == 5 || (s[5] == ':' && two(6, 59));
}

bool IsNumeric(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t start = i;
  while (i < s.size() && IsDigit(s[i])) ++i;
  if (i == start) return false;
  if (i == s.size()) return true;
  if (s[i] != '.') return false;
  start = ++i;
  while (i < s.size() && IsDigit(s[i])) ++i;
  return i > start && i == s.size();
}

bool IsValidCalendarDate(long year, long month, long day) {
  if (month < 1 || month > 12 || day < 1) return false;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  int limit = kDays[month - 1] + (month == 2 && leap ? 1 : 0);
  return day <= limit;
}

DateFormat::DateFormat(std::string pattern) : pattern_(std::move(pattern)) {
  std::string_view p = pattern_;
  if (p.empty()) throw ConfigError("empty date format");
  std::size_t i = 0;
  while (i < p.size()) {
    auto token = [&](std::string_view name, Token t) {
      if (p.substr(i, name.size()) != name) return false;
      pieces_.push_back({true, t, 0});
      groups_.push_back(t);
      i += name.size();
      return true;
    };
    if (token("YYYY", Token::kYear) || token("MM", Token::kMonth) || token("DD", Token::kDay) ||
        token("hh", Token::kHour) || token("mm", Token::kMinute) || token("ss", Token::kSecond)) {
      continue;
    }
    unsigned char c = static_cast<unsigned char>(p[i]);
    if (c < 0x20 || c >= 0x7F) {
      throw ConfigError("date format '" + pattern_ + "' must be printable ASCII");
    }
    pieces_.push_back({false, Token::kYear, p[i]});
    ++i;
  }
}

bool DateFormat::Matches(std::string_view s) const {
  long year = 2000;  // leap year when the layout has no year
  long month = -1;
  long day = -1;
  std::size_t at = 0;
  for (const auto& piece : pieces_) {
    if (!piece.is_token) {
      if (at >= s.size() || s[at] != piece.literal) return false;
      ++at;
      continue;
    }
    std::size_t width = piece.token == Token::kYear ? 4 : 2;
    if (!AllDigits(s.substr(at, width), width)) return false;
    long value = std::stol(std::string(s.substr(at, width)));
    at += width;
    switch (piece.token) {
      case Token::kYear: year = value; break;
      case Token::kMonth: month = value; break;
      case Token::kDay: day = value; break;
      case Token::kHour: if (value > 23) return false; break;
      case Token::kMinute:
      case Token::kSecond: if (value > 59) return false; break;
    }
  }
  if (at != s.size()) return false;
  if (month != -1 && (month < 1 || month > 12)) return false;
  if (day != -1) {
    if (month != -1) return IsValidCalendarDate(year, month, day);
    return day >= 1 && day <= 31;
  }
  return true;
}

std::string DateFormat::ToRegex() const {
  std::string out = "^";
  for (const auto& piece : pieces_) {
    if (piece.is_token) {
      out += piece.token == Token::kYear ? "([0-9]{4})" : "([0-9]{2})";
    } else if (IsAlpha(piece.literal) || IsDigit(piece.literal)) {
      out += piece.literal;
    } else {
      char buffer[8];
      std::snprintf(buffer, sizeof(buffer), "\\x%02X", static_cast<unsigned char>(piece.literal));
      out += buffer;
    }
  }
  return out + "$";
}

DateFormatRegistry::DateFormatRegistry() : formats_{DateFormat("YYYY-MM-DD")} {}

DateFormatRegistry::DateFormatRegistry(const std::vector<std::string>& patterns) {
  for (const auto& pattern : patterns) formats_.emplace_back(pattern);
  if (formats_.empty()) formats_.emplace_back("YYYY-MM-DD");
}

bool DateFormatRegistry::IsDate(std::string_view s) const {
  for (const auto& format : formats_) {
    if (format.Matches(s)) return true;
  }
  return false;
}

}  // namespace restoracle
