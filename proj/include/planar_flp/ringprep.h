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

// Distance layering of a ring instance and the per-ring surgery graphs.

#ifndef PLANAR_FLP_RINGPREP_H_
#define PLANAR_FLP_RINGPREP_H_

#include <map>
#include <vector>

#include "absl/status/statusor.h"
#include "planar_flp/check_log.h"
#include "planar_flp/ring_instance.h"

namespace planar_flp {

// G': vertices within 4r of D°. Origins are indices into `ring`.
absl::StatusOr<RingInstance> TrimToReach(const RingInstance& ring, CheckLog* log);

// Connected components of a trimmed instance, each solved on its own.
// Origins are indices into `ring`.
absl::StatusOr<std::vector<RingInstance>> SplitComponents(const RingInstance& ring);

struct DistanceRings {
  double eps = 0.0;
  int source = -1;
  double width = 0.0;  // 8r
  int q = 0;           // ceil(1/eps)
  int a = 0;
  std::vector<Length> dist_from_source;
  std::vector<int> layer_of_vertex;
  std::vector<int> bought;            // S, designated indices.
  std::vector<int> bought_clients;    // C_S, client indices.
  std::map<int, std::vector<int>> ring_designated;  // j -> designated indices.
  std::map<int, std::vector<int>> ring_clients;     // j -> client indices.
  double skipped = 0.0;  // Contribution of S.

  // Ring of a layer, or nullopt-like kSkippedLayer for layers = a (mod q).
  int RingOfLayer(int layer) const;
};

inline constexpr int kSkippedLayer = -(1 << 30);

// Requires a connected instance.
DistanceRings ComputeDistanceRings(const RingInstance& ring, double eps,
                                   CheckLog* log);

struct RingGraph {
  int j = 0;
  Problem problem;  // H_j with facilities F_j and clients C_j.
  std::vector<int> to_parent;        // H vertex -> vertex of the component.
  int source = -1;                   // s in H.
  std::vector<int> facility_origin;  // Indices into the component.
  std::vector<int> client_origin;
  std::vector<int> designated;       // Local indices of D° in this ring.
  double r = 0.0;
  double len_bound_l = 0.0;          // 8r(q+1)
};

// Keeps layers jq+a .. (j+1)q+a, contracts lower layers onto s with edges of
// weight dist(s, w) and drops higher layers.
absl::StatusOr<RingGraph> BuildRingGraph(const RingInstance& ring,
                                         const DistanceRings& rings, int j,
                                         CheckLog* log);

struct RingDpResult {
  std::vector<int> facilities;  // Indices into the component.
  double cost = 0.0;            // cost(R_j; J_j) measured in H_j.
};

// S together with every ring solution; checks the merged cost against
// eps M + sum of ring costs.
absl::StatusOr<std::vector<int>> MergeRingDpSolutions(
    const RingInstance& ring, const DistanceRings& rings,
    const std::map<int, RingDpResult>& per_ring, CheckLog* log);

}  // namespace planar_flp

#endif  // PLANAR_FLP_RINGPREP_H_
