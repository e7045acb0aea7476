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

#ifndef RESTORACLE_TESTS_SUPPORT_TEST_UTIL_H_
#define RESTORACLE_TESTS_SUPPORT_TEST_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "restoracle/oracle.h"
#include "restoracle/spec_model.h"

namespace restoracle::testing {

inline const std::string kFixtures = RESTORACLE_FIXTURES;

inline Json LoadJson(const std::string& relative) {
  return Json::parse(ReadFile(kFixtures + "/" + relative));
}

inline std::vector<Json> LoadResponses(const std::string& api) {
  std::vector<Json> out;
  for (int i = 0; i < 20; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "/responses/response_%02d.json", i);
    out.push_back(LoadJson(api + name));
  }
  return out;
}

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t Below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }
  bool Coin() { return Below(2) == 0; }
  double Number() { return static_cast<double>(static_cast<std::int64_t>(Below(41)) - 20) / 2.0; }

  std::string String() {
    static const std::vector<std::string> pool = {
        "", "a", "ES", "ESP", "$", "$$", "https://x.io/a", "a@b.co", "12:30", "2024-02-29",
        "-3.5", "42", "h://", "not a url", "2023-02-29", "caf\xC3\xA9", "\"q\"\\", "line\nbreak"};
    return pool[Below(pool.size())];
  }

  Json Scalar() {
    switch (Below(5)) {
      case 0: return String();
      case 1: return Number();
      case 2: return Coin();
      case 3: return nullptr;
      default: return static_cast<std::int64_t>(Below(7));
    }
  }

  Json Any() {
    switch (Below(4)) {
      case 0: {
        Json a = Json::array();
        std::uint64_t n = Below(5);
        bool homogeneous = Coin();
        Json first = Scalar();
        for (std::uint64_t i = 0; i < n; ++i) {
          if (!homogeneous) {
            a.push_back(Scalar());
          } else if (first.is_number()) {
            a.push_back(Number());
          } else if (first.is_string()) {
            a.push_back(String());
          } else {
            a.push_back(Coin());
          }
        }
        return a;
      }
      case 1: return Json::object({{"k", Scalar()}});
      default: return Scalar();
    }
  }

  // An asserted value of the oracle's kind.
  OracleValue Value(OracleType type) {
    switch (KindOf(type)) {
      case ValueKind::kFlag: return FlagValue{true};
      case ValueKind::kCount: return CountValue{Below(4)};
      case ValueKind::kBound: return BoundValue{Number()};
      case ValueKind::kStringSet: {
        StringSetValue v;
        std::uint64_t n = 1 + Below(3);
        for (std::uint64_t i = 0; i < n; ++i) {
          std::string s = String();
          if (std::find(v.values.begin(), v.values.end(), s) == v.values.end()) v.values.push_back(s);
        }
        return v;
      }
      case ValueKind::kNumberSet: {
        NumberSetValue v;
        std::uint64_t n = 1 + Below(3);
        for (std::uint64_t i = 0; i < n; ++i) {
          double d = Number();
          if (std::find(v.values.begin(), v.values.end(), d) == v.values.end()) v.values.push_back(d);
        }
        return v;
      }
      case ValueKind::kSizeSet: {
        SizeSetValue v;
        std::uint64_t n = 1 + Below(3);
        for (std::uint64_t i = 0; i < n; ++i) {
          std::uint64_t s = Below(5);
          if (std::find(v.values.begin(), v.values.end(), s) == v.values.end()) v.values.push_back(s);
        }
        return v;
      }
    }
    return FlagValue{true};
  }

  OracleType Type() { return AllOracleTypes()[Below(AllOracleTypes().size())]; }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace restoracle::testing

#endif  // RESTORACLE_TESTS_SUPPORT_TEST_UTIL_H_
