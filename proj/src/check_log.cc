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

#include "planar_flp/check_log.h"

#include <cstdlib>

namespace planar_flp {

CheckLevel CheckLevelFromEnv() {
  const char* value = std::getenv("PLANAR_FLP_DEBUG_ASSERT");
  if (value == nullptr) return CheckLevel::kStandard;
  switch (value[0]) {
    case '0':
      return CheckLevel::kOff;
    case '2':
      return CheckLevel::kFull;
    default:
      return CheckLevel::kStandard;
  }
}

bool CheckLog::Record(std::string_view tag, bool passed,
                      std::string_view detail) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = tallies_.find(tag);
  if (it == tallies_.end()) it = tallies_.emplace(std::string(tag), Tally{}).first;
  if (passed) {
    ++it->second.passed;
  } else {
    ++it->second.failed;
    if (it->second.failures.size() < 5) {
      it->second.failures.emplace_back(detail);
    }
  }
  return passed;
}

std::map<std::string, CheckLog::Tally> CheckLog::tallies() const {
  std::lock_guard<std::mutex> lock(mu_);
  return {tallies_.begin(), tallies_.end()};
}

int CheckLog::total_failed() const {
  std::lock_guard<std::mutex> lock(mu_);
  int total = 0;
  for (const auto& [tag, tally] : tallies_) total += tally.failed;
  return total;
}

int CheckLog::failed(std::string_view tag) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = tallies_.find(tag);
  return it == tallies_.end() ? 0 : it->second.failed;
}

int CheckLog::checked(std::string_view tag) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = tallies_.find(tag);
  return it == tallies_.end() ? 0 : it->second.passed + it->second.failed;
}

}  // namespace planar_flp
