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

#ifndef RESTORACLE_PREDICATES_H_
#define RESTORACLE_PREDICATES_H_

#include <string>
#include <string_view>
#include <vector>

namespace restoracle {

// String grammars behind the string_is_* oracles. Each predicate has an
// ECMAScript regular expression twin (k*Pattern) that the assertion emitter
// writes into test scripts; the two must accept exactly the same strings.

// Absolute URI per RFC 3986: scheme ":" hier-part ["?" query]
// ["#" fragment]. ASCII only, no whitespace. IP literals accept any
// "[hex:.]" body or an IPvFuture form.
bool IsUrl(std::string_view s);
extern const char* const kUrlPattern;

// local@domain where the domain carries a dot that is neither its first nor
// its last character. No ASCII whitespace and exactly one '@'.
bool IsEmail(std::string_view s);
extern const char* const kEmailPattern;

// 24-hour HH:MM or HH:MM:SS.
bool IsTime(std::string_view s);
extern const char* const kTimePattern;

// Optionally signed decimal with optional fraction: -12, +3.50, 7.
bool IsNumeric(std::string_view s);
extern const char* const kNumericPattern;

// A calendar date layout built from the tokens YYYY, MM, DD, hh, mm, ss;
// every other character is literal. Matching validates month ranges, days
// per month (Gregorian leap years) and clock ranges.
class DateFormat {
 public:
  enum class Token { kYear, kMonth, kDay, kHour, kMinute, kSecond };

  explicit DateFormat(std::string pattern);

  bool Matches(std::string_view s) const;
  const std::string& pattern() const { return pattern_; }
  // Anchored ECMAScript regex with one capture group per token.
  std::string ToRegex() const;
  // Token of each capture group, in order.
  const std::vector<Token>& groups() const { return groups_; }

 private:
  struct Piece {
    bool is_token;
    Token token;
    char literal;
  };
  std::string pattern_;
  std::vector<Piece> pieces_;
  std::vector<Token> groups_;
};

// Ordered set of accepted date layouts; a string is a date when any layout
// matches. Defaults to ISO 8601 calendar dates (YYYY-MM-DD).
class DateFormatRegistry {
 public:
  DateFormatRegistry();
  explicit DateFormatRegistry(const std::vector<std::string>& patterns);

  bool IsDate(std::string_view s) const;
  const std::vector<DateFormat>& formats() const { return formats_; }

 private:
  std::vector<DateFormat> formats_;
};

bool IsValidCalendarDate(long year, long month, long day);

}  // namespace restoracle

#endif  // RESTORACLE_PREDICATES_H_
