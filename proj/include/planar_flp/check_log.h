// Copyright 2026 The planar-flp Authors.
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

// Tally of runtime invariant checks, keyed by check tag.

#ifndef PLANAR_FLP_CHECK_LOG_H_
#define PLANAR_FLP_CHECK_LOG_H_

#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace planar_flp {

enum class CheckLevel {
  kOff = 0,       // Only checks that cost nothing extra.
  kStandard = 1,  // Linear and sampled checks.
  kFull = 2,      // All-pairs checks and per-write table re-verification.
};

// Reads PLANAR_FLP_DEBUG_ASSERT={0,1,2}; defaults to kStandard.
CheckLevel CheckLevelFromEnv();

class CheckLog {
 public:
  struct Tally {
    int passed = 0;
    int failed = 0;
    std::vector<std::string> failures;  // First few diagnostics.
  };

  explicit CheckLog(CheckLevel level = CheckLevel::kStandard) : level_(level) {}

  CheckLevel level() const { return level_; }
  bool enabled(CheckLevel needed) const { return level_ >= needed; }

  // Returns `passed` so callers can branch on it.
  bool Record(std::string_view tag, bool passed, std::string_view detail = {});
  std::map<std::string, Tally> tallies() const;
  int total_failed() const;
  int failed(std::string_view tag) const;
  int checked(std::string_view tag) const;

 private:
  CheckLevel level_;
  mutable std::mutex mu_;
  std::map<std::string, Tally, std::less<>> tallies_;
};

}  // namespace planar_flp

#endif  // PLANAR_FLP_CHECK_LOG_H_
