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

// Dijkstra with a deterministic tie-break and all-pairs distance tables.
//
// Among equally short routes the predecessor with the lowest vertex id wins,
// so shortest-path trees are reproducible across runs and thread counts.
// Non-traversable (infinite weight) edges are never relaxed.

#ifndef PLANAR_FLP_SHORTEST_PATHS_H_
#define PLANAR_FLP_SHORTEST_PATHS_H_

#include <vector>

#include "planar_flp/plane_graph.h"

namespace planar_flp {

struct ShortestPathTree {
  int source = -1;
  std::vector<Length> dist;
  std::vector<int> parent;       // -1 at the source and unreachable vertices.
  std::vector<int> parent_edge;  // Edge used to reach each vertex.

  // Vertices from `v` back to the source, both included.
  std::vector<int> PathToSource(int v) const;
};

ShortestPathTree Dijkstra(const PlaneGraph& graph, int source);

// Distance from the nearest of `sources` to every vertex.
std::vector<Length> MultiSourceDistances(const PlaneGraph& graph,
                                         const std::vector<int>& sources);

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  // Takes an explicit row-major table; used by tests to inject faults.
  DistanceMatrix(int n, std::vector<Length> values)
      : n_(n), values_(std::move(values)) {}

  // One Dijkstra per source, sources spread over OpenMP threads.
  static DistanceMatrix Compute(const PlaneGraph& graph);
  // Single-threaded reference for Compute.
  static DistanceMatrix ComputeSerial(const PlaneGraph& graph);

  int size() const { return n_; }
  Length operator()(int u, int v) const {
    return values_[static_cast<size_t>(u) * n_ + v];
  }
  const std::vector<Length>& values() const { return values_; }

 private:
  int n_ = 0;
  std::vector<Length> values_;
};

}  // namespace planar_flp

#endif  // PLANAR_FLP_SHORTEST_PATHS_H_
