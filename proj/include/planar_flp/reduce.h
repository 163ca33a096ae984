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

// Rescaling, client concentration, magnitude layering and recombination.

#ifndef PLANAR_FLP_REDUCE_H_
#define PLANAR_FLP_REDUCE_H_

#include <map>
#include <vector>

#include "absl/status/statusor.h"
#include "planar_flp/baseline.h"
#include "planar_flp/check_log.h"
#include "planar_flp/instance.h"
#include "planar_flp/ring_instance.h"

namespace planar_flp {

struct PipelineParams {
  double eps = 0.0;
  int q = 0;  // ceil(eps^-2)
  int a = 0;  // Chosen residue.
  double alpha = kPrimalDualFactor;
  double scale = 1.0;
};

struct PreprocessResult {
  Problem problem;
  double scale = 1.0;
  bool degenerate = false;
  std::vector<int> vertex_map;  // Original vertex -> preprocessed vertex.
  int contracted_edges = 0;
  int zeroed_costs = 0;
};

// Scales so that the baseline costs eps^-1 (|F| + |C||E|), contracts edges
// shorter than 1 and zeroes opening costs below 1. Facility and client ids
// are preserved.
absl::StatusOr<PreprocessResult> PreprocessScale(const Problem& problem,
                                                 double eps,
                                                 double baseline_cost);

struct ConcentratedInstance {
  Problem problem;  // I'; same facility and client ids as the input.
  std::vector<int> robust;                 // D~, facility ids.
  std::vector<double> avgcost;             // Per robust index.
  std::vector<int64_t> cluster_size;       // |cluster(f)|, with multiplicity.
  std::vector<std::vector<int>> clusters;  // cluster'(f), client ids.
  std::vector<int> anchor;                 // x(f) vertex in I'.
  std::vector<int> original_vertex;        // Per client, before moving.
  std::vector<char> moved;
  double psi = 0.0;                        // conn(Far, D~).
  double robust_cost = 0.0;                // cost(D~) before moving.
};

absl::StatusOr<ConcentratedInstance> Concentrate(const Problem& problem,
                                                 const RobustSolution& robust,
                                                 double eps, CheckLog* log);

inline constexpr int kUnlayered = -(1 << 30);  // avgcost = 0: bought outright.

struct MagnitudeLayering {
  double eps = 0.0;
  int q = 0;
  int a = 0;
  std::vector<int> layer_of;  // Per robust index.
  std::map<int, double> ell;  // Layer contributions.
  double class_sum = 0.0;     // Contribution of layers congruent to a.
  double total = 0.0;         // open(D~) + all cluster' connections.
  std::vector<int> bought;    // S, facility ids.
  std::vector<int> bought_clients;
  std::map<int, std::vector<int>> rings;         // j -> W_j facility ids.
  std::map<int, std::vector<int>> ring_clients;  // j -> C_j client ids.

  // D_j^free = S and all rings above j.
  std::vector<int> FreeFacilities(int j) const;
};

absl::StatusOr<MagnitudeLayering> MagnitudeLayers(
    const ConcentratedInstance& conc, double eps, CheckLog* log);

// J_j over the graph of I': clients C_j, all facilities, opening costs zero
// on D_j^free. Shares the distance table of I'.
Problem RingProblem(const ConcentratedInstance& conc,
                    const MagnitudeLayering& layering, int j);

struct CombineResult {
  Solution solution;  // D in I'.
  double ring_cost_sum = 0.0;
  double bound = 0.0;  // Right-hand side of the recombination inequality.
};

absl::StatusOr<CombineResult> CombineRingSolutions(
    const ConcentratedInstance& conc, const MagnitudeLayering& layering,
    const std::map<int, std::vector<int>>& per_ring, CheckLog* log);

struct ReductionOptions {
  bool strict_constants = false;
};

struct RingTask {
  int j = 0;
  RingInstance ring;
  double scale = 1.0;        // Applied to lengths and opening costs.
  bool power_scale = true;   // Whether the eps power scale was usable.
  bool full_radius = true;  // Whether r = 2 eps^-4q was finite.
};

struct Reduction {
  PipelineParams params;
  ConcentratedInstance conc;
  MagnitudeLayering layering;
  std::vector<RingTask> tasks;
};

absl::StatusOr<Reduction> RunReduction(const Problem& preprocessed,
                                        const RobustSolution& robust,
                                        double eps,
                                        const ReductionOptions& options,
                                        CheckLog* log);

}  // namespace planar_flp

#endif  // PLANAR_FLP_REDUCE_H_
