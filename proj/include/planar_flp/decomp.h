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

// Triangulation, shortest-path and dual spanning trees, the hierarchical face
// decomposition, portals and normal functions.

#ifndef PLANAR_FLP_DECOMP_H_
#define PLANAR_FLP_DECOMP_H_

#include <cstdint>
#include <limits>
#include <vector>

#include "absl/status/statusor.h"
#include "planar_flp/check_log.h"
#include "planar_flp/instance.h"
#include "planar_flp/plane_graph.h"
#include "planar_flp/shortest_paths.h"

namespace planar_flp {

struct FaceStructure {
  PlaneGraph graph;  // Triangulated; added chords have infinite weight.
  FaceSet faces;
  std::vector<int> xi;  // Vertex -> an incident face.
  int num_original_edges = 0;
};

// Requires a connected embedded graph on at least 3 vertices.
absl::StatusOr<FaceStructure> Triangulate(const PlaneGraph& graph);

struct DualTrees {
  int source = -1;
  ShortestPathTree spt;
  std::vector<char> in_tree;  // Per primal edge: belongs to S.
  // Edges of S*, by primal edge id. Arc 2k runs from the face left of
  // dart 2e to the face of dart 2e+1 where e = dual_edges[k]; arc 2k+1 back.
  std::vector<int> dual_edges;
  std::vector<std::vector<int>> dual_adj;  // Face -> incident dual edge indices.
  // Rooted view of S* used to answer L(arc) queries.
  std::vector<int> tin;
  std::vector<int> tout;
  std::vector<int> parent_face;

  int num_arcs() const { return 2 * static_cast<int>(dual_edges.size()); }
  int ArcTail(const FaceStructure& fs, int arc) const;
  int ArcHead(const FaceStructure& fs, int arc) const;
  int PrimalEdge(int arc) const { return dual_edges[arc / 2]; }
  // Whether `face` lies in L(arc).
  bool InRegion(const FaceStructure& fs, int arc, int face) const;
};

absl::StatusOr<DualTrees> BuildDualTrees(const FaceStructure& fs, int source,
                                         CheckLog* log);

struct DecompNode {
  std::vector<int> faces;  // X_t, sorted.
  std::vector<int> beta;   // Arcs of the boundary, oriented into X_t.
  std::vector<int> children;
  int parent = -1;
  int depth = 0;
  int height = 0;
  std::vector<int> portals;     // Pi_t, sorted vertex ids.
  std::vector<int> clients;     // C_t, client indices.
  std::vector<int> facilities;  // Facilities placed in the region.
};

struct DecompTree {
  std::vector<DecompNode> nodes;
  int root = 0;
  int depth = 0;
  bool IsAncestor(int a, int b) const;  // a == b counts.
};

// Recursive block partition of the faces. Checks T1-T5 into `log` (tags
// "T1".."T5") and returns an error if any fails.
absl::StatusOr<DecompTree> BuildDecomposition(const FaceStructure& fs,
                                              const DualTrees& dt, CheckLog* log);

// Portals on the path from s to v: the first vertex of every nonempty
// interval of width `spacing` measured from the vertex after s, plus s.
std::vector<int> PlacePortals(const ShortestPathTree& spt, int v, double spacing);

// Fills portals, clients and facilities of every node.
void AttachToNodes(const FaceStructure& fs, const DualTrees& dt,
                   const Problem& problem, double spacing, DecompTree* tree);

// Samples nodes s, t with t not an ancestor of s and checks the separation
// inequality with slack 2 * spacing (tag "portal-snap").
void CheckPortalSnap(const FaceStructure& fs, const DecompTree& tree,
                     const Problem& problem, double spacing, int samples,
                     uint64_t seed, CheckLog* log);

inline constexpr int64_t kInfLevel = std::numeric_limits<int64_t>::max();

struct NormalParams {
  double d = 1.0;
  double lo = 0.0;
  double hi = 0.0;
  double slack = 1.0;

  int64_t LowLevel() const;
  int64_t HighLevel() const;
};

// Values as multiples of d; kInfLevel is +infinity.
using NormalFn = std::vector<int64_t>;

double LevelValue(int64_t level, double d);
bool LipschitzPair(int64_t a, int64_t b, double d, double dist, double slack);
bool IsNormal(const NormalFn& fn, const std::vector<int>& portals,
              const DistanceMatrix& dist, const NormalParams& params);

// All normal functions on `portals` (in the given order), the all-infinite
// function included.
std::vector<NormalFn> EnumerateNormal(const std::vector<int>& portals,
                                      const DistanceMatrix& dist,
                                      const NormalParams& params);

}  // namespace planar_flp

#endif  // PLANAR_FLP_DECOMP_H_
