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

// Constant-factor approximation and the robust solution built on top of it.

#ifndef PLANAR_FLP_BASELINE_H_
#define PLANAR_FLP_BASELINE_H_

#include <vector>

#include "absl/status/statusor.h"
#include "planar_flp/check_log.h"
#include "planar_flp/instance.h"

namespace planar_flp {

// Guarantee of the primal-dual method implemented below.
inline constexpr double kPrimalDualFactor = 3.0;

// Jain-Vazirani primal-dual: uniform dual growth, tentative openings, then a
// maximal independent set among conflicting facilities in opening order.
absl::StatusOr<Solution> ConstantFactorApprox(const Problem& problem);

// Adds, in ascending id order and repeating until a pass adds nothing, every
// facility whose opening strictly lowers the cost.
Solution OneOptClosure(const Problem& problem, const Solution& start);

// Drops facilities that serve no client under the tie-break order.
Solution PruneUnserved(const Problem& problem, const Solution& solution);

struct RobustSolution {
  std::vector<int> open_set;
  double alpha = kPrimalDualFactor;
  // Clusters and avgcost in the original opening costs.
  ClusterMap clusters;
  bool scaled = true;
  double scaled_cost = 0.0;    // cost(D; I~), opening costs times eps.
  double original_cost = 0.0;  // cost(D; I).
};

// Builds D~ on the instance with opening costs scaled by eps.
absl::StatusOr<RobustSolution> BuildRobust(const Problem& problem, double eps,
                                           CheckLog* log = nullptr);

// Whether no single facility addition lowers the cost.
bool IsOneOptClosed(const Problem& problem, const std::vector<int>& open_set);

}  // namespace planar_flp

#endif  // PLANAR_FLP_BASELINE_H_
