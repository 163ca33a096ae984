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

// Reference solvers: exhaustive enumeration and local search.

#ifndef PLANAR_FLP_ORACLES_H_
#define PLANAR_FLP_ORACLES_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "planar_flp/instance.h"

namespace planar_flp {

inline constexpr int kExactFacilityGuard = 24;

struct ExactResult {
  std::vector<int> open_set;
  double cost = 0.0;
  int64_t subsets_enumerated = 0;
};

// Cheapest subset by SolutionCost; ties go to the lexicographically smallest
// sorted id list. Subsets are split across OpenMP threads.
absl::StatusOr<ExactResult> ExactOpt(const Problem& problem);
// Single-threaded reference for ExactOpt.
absl::StatusOr<ExactResult> ExactOptSerial(const Problem& problem);

// Greedy start, then first-improvement over adds, drops and swaps of at most
// `swap_size` facilities, scanning ids ascending.
Solution LocalSearch(const Problem& problem, int swap_size);
// Same, from a given nonempty start.
Solution LocalSearchFrom(const Problem& problem, std::vector<int> start,
                         int swap_size);
// Best single facility, then best single additions while they help.
std::vector<int> GreedyStart(const Problem& problem);

}  // namespace planar_flp

#endif  // PLANAR_FLP_ORACLES_H_
