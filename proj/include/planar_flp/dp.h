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

// The generalized portal problem, its leaf subset dynamic program and the
// bottom-up assembly over the face decomposition.

#ifndef PLANAR_FLP_DP_H_
#define PLANAR_FLP_DP_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "planar_flp/check_log.h"
#include "planar_flp/decomp.h"
#include "planar_flp/instance.h"
#include "planar_flp/ring_instance.h"
#include "planar_flp/ringprep.h"

namespace planar_flp {

// K = (C, Pi, pred, req) over the facilities of `problem`.
struct GenInstance {
  const Problem* problem = nullptr;
  std::vector<int> clients;  // Client indices of `problem`, ascending.
  std::vector<int> portals;  // Vertex ids.
  std::vector<double> pred;  // Per portal; +inf allowed.
  std::vector<double> req;
};

double ConnCost(const GenInstance& k, int c, const std::vector<int>& r);
// open(R) + sum over clients of multiplicity * ConnCost.
double GenCost(const GenInstance& k, const std::vector<int>& r);
bool IsNearFeasible(const GenInstance& k, const std::vector<int>& r, double lambda);
bool IsGammaClose(const GenInstance& k, const std::vector<int>& r, double gamma);

struct DpEntry {
  enum class Source { kLeaf, kCombined, kFallback };
  bool feasible = false;
  std::vector<int> facilities;  // Sorted.
  double cost = kInfiniteLength;
  Source source = Source::kLeaf;
};

// Largest number of minimal request constraints plus client vertices the
// leaf table accepts.
inline constexpr int kLeafStateBits = 18;

// Cheapest lambda-near feasible solution by a table over facility prefixes,
// satisfied request sets and served client vertices. Infeasible entries
// have feasible = false.
absl::StatusOr<DpEntry> LeafDp(const GenInstance& k, double lambda);

struct FnPair {
  NormalFn pred;
  NormalFn req;
};

// (C1) and (C2) with values level * d.
bool IsCompatible(const std::vector<int>& parent_portals, const FnPair& eta,
                  const std::vector<std::vector<int>>& child_portals,
                  const std::vector<FnPair>& phi, const DistanceMatrix& dist,
                  double d);

// Union of the child solutions costed in `parent`; records the cost
// inequality (tag "combine") and near feasibility (tag "combine-feasible").
DpEntry CombineChildren(const GenInstance& parent,
                        const std::vector<const DpEntry*>& children,
                        double lambda, CheckLog* log);

struct DpOptions {
  double eps = 0.01;  // Accuracy inside the ring; leaves use lambda = 5 eps.
  std::optional<double> portal_spacing;
  std::optional<int> value_levels;
  int full_guess_limit = 12;  // Up to this many facilities: every subset.
  int guess_size_cap = 2;     // Above it: subsets of at most this size.
  int snap_samples = 100;
};

struct DpParams {
  double delta = 0.0;
  double spacing = 0.0;
  double lambda = 0.0;
  NormalParams normal;
  int64_t step_levels = 0;  // Margin levels added per unit of height.
};

DpParams DeriveDpParams(int num_vertices, double r, const DpOptions& options);

struct RingDpReport {
  std::vector<int> facilities;  // Indices into the ring graph problem.
  double cost = 0.0;
  bool fallback = false;
  DpParams params;
  int tree_depth = 0;
  int tree_nodes = 0;
  int max_portals = 0;
  int64_t keys = 0;
  int64_t candidates = 0;
};

absl::StatusOr<RingDpReport> SolveRingDp(const RingGraph& rg, const DpOptions& options,
                                         CheckLog* log);

struct SolveRingStats {
  int components = 0;
  int ring_graphs = 0;
  int fallbacks = 0;
  double delta = 0.0;
  double len_bound_l = 0.0;
  int distance_q = 0;
  int distance_a = 0;
  int64_t keys = 0;
};

// Trim, split into components, layer by distance, solve every ring graph
// and merge. Returns facility indices of `ring`.
absl::StatusOr<std::vector<int>> SolveRing(const RingInstance& ring,
                                           const DpOptions& options, CheckLog* log,
                                           SolveRingStats* stats = nullptr);

}  // namespace planar_flp

#endif  // PLANAR_FLP_DP_H_
