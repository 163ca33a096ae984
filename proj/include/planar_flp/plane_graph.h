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

// Combinatorial plane embeddings given by rotation systems.
//
// Every undirected edge e owns two darts: 2e leaves edge(e).u and 2e+1 leaves
// edge(e).v. The rotation of a vertex lists its incident edges in
// counter-clockwise order. Faces are traced with NextInFace().

#ifndef PLANAR_FLP_PLANE_GRAPH_H_
#define PLANAR_FLP_PLANE_GRAPH_H_

#include <limits>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace planar_flp {

using Length = double;
inline constexpr Length kInfiniteLength = std::numeric_limits<Length>::infinity();

struct Edge {
  int u = -1;
  int v = -1;
  Length weight = 0.0;

  // Edges of infinite weight close faces but never carry a path.
  bool traversable() const { return weight < kInfiniteLength; }
};

class PlaneGraph {
 public:
  PlaneGraph() = default;

  // Validates that `rotation[v]` lists each edge incident to v exactly once
  // (loops are rejected). Parallel edges are allowed.
  static absl::StatusOr<PlaneGraph> Create(
      int num_vertices, std::vector<Edge> edges,
      std::vector<std::vector<int>> rotation);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_darts() const { return 2 * num_edges(); }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const int> rotation(int v) const { return rotation_[v]; }
  const std::vector<std::vector<int>>& rotations() const { return rotation_; }
  int degree(int v) const { return static_cast<int>(rotation_[v].size()); }

  static int Twin(int dart) { return dart ^ 1; }
  static int EdgeOfDart(int dart) { return dart >> 1; }
  int Tail(int dart) const {
    const Edge& e = edges_[dart >> 1];
    return (dart & 1) ? e.v : e.u;
  }
  int Head(int dart) const { return Tail(dart ^ 1); }
  int DartFrom(int edge, int vertex) const {
    return 2 * edge + (edges_[edge].u == vertex ? 0 : 1);
  }
  int Opposite(int edge, int vertex) const {
    const Edge& e = edges_[edge];
    return e.u == vertex ? e.v : e.u;
  }
  // Dart following `dart` along the boundary of its face.
  int NextInFace(int dart) const;

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> rotation_;
  std::vector<int> position_;  // Index of a dart's edge in its tail rotation.
};

struct FaceSet {
  std::vector<std::vector<int>> darts;  // Boundary walk of every face.
  std::vector<int> face_of_dart;
  int size() const { return static_cast<int>(darts.size()); }
};

FaceSet TraceFaces(const PlaneGraph& graph);

// Number of connected components, isolated vertices included.
int CountComponents(const PlaneGraph& graph);
std::vector<int> ComponentLabels(const PlaneGraph& graph);

// True when the rotation system is a sphere embedding of every component,
// i.e. V - E + F = 2C with one face per isolated vertex.
bool SatisfiesEulerFormula(const PlaneGraph& graph);

// Mutable copy of an embedding supporting the local surgery used by the
// reductions: subdivision, contraction, deletion and corner insertion.
class EmbeddingEditor {
 public:
  explicit EmbeddingEditor(const PlaneGraph& graph);

  int num_vertices() const { return static_cast<int>(rotation_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[e]; }
  bool edge_alive(int e) const { return edge_alive_[e]; }
  bool vertex_alive(int v) const { return vertex_alive_[v]; }
  const std::vector<int>& rotation(int v) const { return rotation_[v]; }

  int AddVertex();
  // Inserts u-v so that it directly follows `after_u` in the rotation of u
  // and `after_v` in that of v (-1 when the vertex has no edges yet).
  int AddEdge(int u, int after_u, int v, int after_v, Length weight);
  void SetWeight(int e, Length weight) { edges_[e].weight = weight; }
  void RemoveEdge(int e);
  void RemoveVertex(int v);
  // Merges edge(e).v into edge(e).u; loops created by parallel edges vanish.
  void ContractEdge(int e);
  // Same, keeping `keep` (an endpoint of e) as the surviving vertex.
  void ContractEdgeInto(int e, int keep);
  // Splits e at distance `length_from_u` from edge(e).u; returns the new
  // vertex. The piece touching u keeps id e.
  int SubdivideEdge(int e, Length length_from_u);

  struct Result {
    PlaneGraph graph;
    std::vector<int> old_to_new;  // -1 for removed vertices.
    std::vector<int> new_to_old;
  };
  absl::StatusOr<Result> Build() const;

 private:
  void EraseFromRotation(int v, int e);

  std::vector<Edge> edges_;
  std::vector<bool> edge_alive_;
  std::vector<std::vector<int>> rotation_;
  std::vector<bool> vertex_alive_;
};

}  // namespace planar_flp

#endif  // PLANAR_FLP_PLANE_GRAPH_H_
