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

#include "planar_flp/shortest_paths.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

namespace planar_flp {
namespace {

using QueueItem = std::pair<Length, int>;
using MinQueue =
    std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

void RunDijkstra(const PlaneGraph& graph, const std::vector<int>& sources,
                 std::vector<Length>& dist, std::vector<int>* parent,
                 std::vector<int>* parent_edge) {
  const int n = graph.num_vertices();
  dist.assign(n, kInfiniteLength);
  if (parent != nullptr) parent->assign(n, -1);
  if (parent_edge != nullptr) parent_edge->assign(n, -1);
  std::vector<char> done(n, 0);
  MinQueue queue;
  for (int s : sources) {
    dist[s] = 0.0;
    queue.emplace(0.0, s);
  }
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (done[v] || d > dist[v]) continue;
    done[v] = 1;
    for (int e : graph.rotation(v)) {
      const Edge& edge = graph.edge(e);
      if (!edge.traversable()) continue;
      const int w = graph.Opposite(e, v);
      if (done[w]) continue;
      const Length nd = d + edge.weight;
      if (nd < dist[w]) {
        dist[w] = nd;
        if (parent != nullptr) {
          (*parent)[w] = v;
          (*parent_edge)[w] = e;
        }
        queue.emplace(nd, w);
      } else if (nd == dist[w] && parent != nullptr && v < (*parent)[w]) {
        (*parent)[w] = v;
        (*parent_edge)[w] = e;
      }
    }
  }
}

// Sums along reversed paths may differ in the last bit; keep the smaller.
void Symmetrize(int n, std::vector<Length>& values) {
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      Length& a = values[static_cast<size_t>(u) * n + v];
      Length& b = values[static_cast<size_t>(v) * n + u];
      a = b = std::min(a, b);
    }
  }
}

}  // namespace

std::vector<int> ShortestPathTree::PathToSource(int v) const {
  std::vector<int> path;
  for (int x = v; x != -1; x = parent[x]) path.push_back(x);
  return path;
}

ShortestPathTree Dijkstra(const PlaneGraph& graph, int source) {
  ShortestPathTree tree;
  tree.source = source;
  RunDijkstra(graph, {source}, tree.dist, &tree.parent, &tree.parent_edge);
  return tree;
}

std::vector<Length> MultiSourceDistances(const PlaneGraph& graph,
                                         const std::vector<int>& sources) {
  std::vector<Length> dist;
  RunDijkstra(graph, sources, dist, nullptr, nullptr);
  return dist;
}

DistanceMatrix DistanceMatrix::Compute(const PlaneGraph& graph) {
  const int n = graph.num_vertices();
  std::vector<Length> values(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(dynamic, 4)
  for (int s = 0; s < n; ++s) {
    std::vector<Length> dist;
    RunDijkstra(graph, {s}, dist, nullptr, nullptr);
    std::copy(dist.begin(), dist.end(), values.begin() + static_cast<size_t>(s) * n);
  }
  Symmetrize(n, values);
  return DistanceMatrix(n, std::move(values));
}

DistanceMatrix DistanceMatrix::ComputeSerial(const PlaneGraph& graph) {
  const int n = graph.num_vertices();
  std::vector<Length> values(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s) {
    std::vector<Length> dist;
    RunDijkstra(graph, {s}, dist, nullptr, nullptr);
    std::copy(dist.begin(), dist.end(), values.begin() + static_cast<size_t>(s) * n);
  }
  Symmetrize(n, values);
  return DistanceMatrix(n, std::move(values));
}

}  // namespace planar_flp
