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

// Normalized sub-instance handed from the magnitude layering to the
// distance layering and the dynamic program.

#ifndef PLANAR_FLP_RING_INSTANCE_H_
#define PLANAR_FLP_RING_INSTANCE_H_

#include <vector>

#include "planar_flp/check_log.h"
#include "planar_flp/instance.h"

namespace planar_flp {

struct RingInstance {
  Problem problem;
  // Ids of facilities and clients in the instance this ring was cut from.
  std::vector<int> facility_origin;
  std::vector<int> client_origin;
  std::vector<int> designated;             // D°, facility indices.
  std::vector<std::vector<int>> clusters;  // Client indices per designated.
  double r = 0.0;
  double m = 0.0;  // open(D°) + cluster connection cost.
};

// open(D°) + sum over clusters of the connection to their center.
double DesignatedCost(const Problem& problem, const std::vector<int>& designated,
                      const std::vector<std::vector<int>>& clusters);

// Records the radius bullets: 1 <= dist(c, f) <= r * radius_fraction and
// open(f) + cluster connection <= |cluster| r; clusters nonempty.
void CheckRingBullets(const RingInstance& ring, double radius_fraction,
                      CheckLog* log);

}  // namespace planar_flp

#endif  // PLANAR_FLP_RING_INSTANCE_H_
