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

#include "planar_flp/plane_graph.h"

#include <algorithm>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace planar_flp {

absl::StatusOr<PlaneGraph> PlaneGraph::Create(
    int num_vertices, std::vector<Edge> edges,
    std::vector<std::vector<int>> rotation) {
  if (num_vertices < 0 || static_cast<int>(rotation.size()) != num_vertices) {
    return absl::InvalidArgumentError("rotation size differs from vertex count");
  }
  const int m = static_cast<int>(edges.size());
  for (int e = 0; e < m; ++e) {
    const Edge& edge = edges[e];
    if (edge.u < 0 || edge.u >= num_vertices || edge.v < 0 ||
        edge.v >= num_vertices) {
      return absl::InvalidArgumentError(
          absl::StrFormat("edge %d has an invalid endpoint", e));
    }
    if (edge.u == edge.v) {
      return absl::InvalidArgumentError(absl::StrFormat("edge %d is a loop", e));
    }
    if (!(edge.weight >= 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("edge %d has a negative weight", e));
    }
  }
  PlaneGraph g;
  g.num_vertices_ = num_vertices;
  g.edges_ = std::move(edges);
  g.rotation_ = std::move(rotation);
  g.position_.assign(2 * m, -1);
  for (int v = 0; v < num_vertices; ++v) {
    const auto& rot = g.rotation_[v];
    for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
      const int e = rot[i];
      if (e < 0 || e >= m || (g.edges_[e].u != v && g.edges_[e].v != v)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "rotation of vertex %d lists a non-incident edge", v));
      }
      const int dart = g.DartFrom(e, v);
      if (g.position_[dart] != -1) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "rotation of vertex %d lists edge %d twice", v, e));
      }
      g.position_[dart] = i;
    }
  }
  for (int d = 0; d < 2 * m; ++d) {
    if (g.position_[d] == -1) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "edge %d is missing from the rotation of vertex %d", d / 2,
          g.Tail(d)));
    }
  }
  return g;
}

int PlaneGraph::NextInFace(int dart) const {
  const int twin = dart ^ 1;
  const int h = Tail(twin);
  const auto& rot = rotation_[h];
  const int next_edge = rot[(position_[twin] + 1) % rot.size()];
  return DartFrom(next_edge, h);
}

FaceSet TraceFaces(const PlaneGraph& graph) {
  FaceSet faces;
  faces.face_of_dart.assign(graph.num_darts(), -1);
  for (int start = 0; start < graph.num_darts(); ++start) {
    if (faces.face_of_dart[start] != -1) continue;
    const int id = faces.size();
    faces.darts.emplace_back();
    int d = start;
    do {
      faces.face_of_dart[d] = id;
      faces.darts.back().push_back(d);
      d = graph.NextInFace(d);
    } while (d != start);
  }
  return faces;
}

std::vector<int> ComponentLabels(const PlaneGraph& graph) {
  const int n = graph.num_vertices();
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (label[s] != -1) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e : graph.rotation(v)) {
        const int w = graph.Opposite(e, v);
        if (label[w] == -1) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

int CountComponents(const PlaneGraph& graph) {
  const std::vector<int> label = ComponentLabels(graph);
  return label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
}

bool SatisfiesEulerFormula(const PlaneGraph& graph) {
  int isolated = 0;
  for (int v = 0; v < graph.num_vertices(); ++v) {
    if (graph.degree(v) == 0) ++isolated;
  }
  const int faces = TraceFaces(graph).size() + isolated;
  return graph.num_vertices() - graph.num_edges() + faces ==
         2 * CountComponents(graph);
}

EmbeddingEditor::EmbeddingEditor(const PlaneGraph& graph)
    : edges_(graph.edges()),
      edge_alive_(graph.num_edges(), true),
      rotation_(graph.rotations()),
      vertex_alive_(graph.num_vertices(), true) {}

int EmbeddingEditor::AddVertex() {
  rotation_.emplace_back();
  vertex_alive_.push_back(true);
  return num_vertices() - 1;
}

int EmbeddingEditor::AddEdge(int u, int after_u, int v, int after_v,
                             Length weight) {
  const int e = num_edges();
  edges_.push_back(Edge{u, v, weight});
  edge_alive_.push_back(true);
  auto insert_after = [&](int x, int after) {
    auto& rot = rotation_[x];
    if (after < 0) {
      rot.push_back(e);
      return;
    }
    auto it = std::find(rot.begin(), rot.end(), after);
    rot.insert(it + 1, e);
  };
  insert_after(u, after_u);
  insert_after(v, after_v);
  return e;
}

void EmbeddingEditor::EraseFromRotation(int v, int e) {
  auto& rot = rotation_[v];
  rot.erase(std::remove(rot.begin(), rot.end(), e), rot.end());
}

void EmbeddingEditor::RemoveEdge(int e) {
  if (!edge_alive_[e]) return;
  edge_alive_[e] = false;
  EraseFromRotation(edges_[e].u, e);
  EraseFromRotation(edges_[e].v, e);
}

void EmbeddingEditor::RemoveVertex(int v) {
  const std::vector<int> incident = rotation_[v];
  for (int e : incident) RemoveEdge(e);
  vertex_alive_[v] = false;
}

void EmbeddingEditor::ContractEdge(int e) {
  const int a = edges_[e].u;
  const int b = edges_[e].v;
  auto rotated_after = [&](int x) {
    const auto& rot = rotation_[x];
    std::vector<int> out;
    const auto it = std::find(rot.begin(), rot.end(), e);
    const int pos = static_cast<int>(it - rot.begin());
    for (int i = 1; i < static_cast<int>(rot.size()); ++i) {
      out.push_back(rot[(pos + i) % rot.size()]);
    }
    return out;
  };
  std::vector<int> merged = rotated_after(a);
  const std::vector<int> from_b = rotated_after(b);
  merged.insert(merged.end(), from_b.begin(), from_b.end());
  edge_alive_[e] = false;
  for (int f : from_b) {
    if (edges_[f].u == b) edges_[f].u = a;
    if (edges_[f].v == b) edges_[f].v = a;
  }
  std::vector<int> kept;
  for (int f : merged) {
    if (edges_[f].u == a && edges_[f].v == a) {
      edge_alive_[f] = false;
    } else {
      kept.push_back(f);
    }
  }
  rotation_[a] = std::move(kept);
  rotation_[b].clear();
  vertex_alive_[b] = false;
}

void EmbeddingEditor::ContractEdgeInto(int e, int keep) {
  if (edges_[e].u != keep) std::swap(edges_[e].u, edges_[e].v);
  ContractEdge(e);
}

int EmbeddingEditor::SubdivideEdge(int e, Length length_from_u) {
  const int v = edges_[e].v;
  const Length total = edges_[e].weight;
  const int x = AddVertex();
  const int e2 = num_edges();
  edges_.push_back(Edge{x, v, total - length_from_u});
  edge_alive_.push_back(true);
  edges_[e].v = x;
  edges_[e].weight = length_from_u;
  std::replace(rotation_[v].begin(), rotation_[v].end(), e, e2);
  rotation_[x] = {e, e2};
  return x;
}

absl::StatusOr<EmbeddingEditor::Result> EmbeddingEditor::Build() const {
  Result result;
  result.old_to_new.assign(num_vertices(), -1);
  for (int v = 0; v < num_vertices(); ++v) {
    if (!vertex_alive_[v]) continue;
    result.old_to_new[v] = static_cast<int>(result.new_to_old.size());
    result.new_to_old.push_back(v);
  }
  std::vector<int> edge_map(num_edges(), -1);
  std::vector<Edge> edges;
  for (int e = 0; e < num_edges(); ++e) {
    if (!edge_alive_[e]) continue;
    const int u = result.old_to_new[edges_[e].u];
    const int v = result.old_to_new[edges_[e].v];
    if (u < 0 || v < 0) {
      return absl::InternalError("live edge touches a removed vertex");
    }
    edge_map[e] = static_cast<int>(edges.size());
    edges.push_back(Edge{u, v, edges_[e].weight});
  }
  std::vector<std::vector<int>> rotation(result.new_to_old.size());
  for (int i = 0; i < static_cast<int>(result.new_to_old.size()); ++i) {
    for (int e : rotation_[result.new_to_old[i]]) {
      if (edge_map[e] >= 0) rotation[i].push_back(edge_map[e]);
    }
  }
  auto graph = PlaneGraph::Create(static_cast<int>(result.new_to_old.size()),
                                  std::move(edges), std::move(rotation));
  if (!graph.ok()) return graph.status();
  result.graph = *std::move(graph);
  return result;
}

}  // namespace planar_flp
