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

#include "planar_flp/ringprep.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace planar_flp {
namespace {

constexpr int kFullCheckVertices = 12;
constexpr int kSampledPairs = 1000;

// Sub-instance on the vertices flagged in `keep`; origins index into `ring`.
absl::StatusOr<RingInstance> InducedSubRing(const RingInstance& ring,
                                            const std::vector<char>& keep) {
  const FlInstance& inst = ring.problem.instance();
  EmbeddingEditor editor(inst.graph);
  for (int v = 0; v < inst.graph.num_vertices(); ++v) {
    if (!keep[v]) editor.RemoveVertex(v);
  }
  absl::StatusOr<EmbeddingEditor::Result> built = editor.Build();
  if (!built.ok()) return built.status();
  FlInstance out;
  out.graph = std::move(built->graph);
  out.label = inst.label;
  RingInstance sub;
  std::vector<int> facility_local(inst.num_facilities(), -1);
  for (int f = 0; f < inst.num_facilities(); ++f) {
    const int v = built->old_to_new[inst.facilities[f].vertex];
    if (v < 0) continue;
    facility_local[f] = static_cast<int>(out.facilities.size());
    out.facilities.push_back(FacilitySite{v, inst.facilities[f].open_cost});
    sub.facility_origin.push_back(f);
  }
  std::vector<int> client_local(inst.num_clients(), -1);
  for (int c = 0; c < inst.num_clients(); ++c) {
    const int v = built->old_to_new[inst.clients[c].vertex];
    if (v < 0) continue;
    client_local[c] = static_cast<int>(out.clients.size());
    out.clients.push_back(ClientSite{v, inst.clients[c].multiplicity});
    sub.client_origin.push_back(c);
  }
  for (size_t i = 0; i < ring.designated.size(); ++i) {
    const int f = facility_local[ring.designated[i]];
    if (f < 0) continue;
    sub.designated.push_back(f);
    std::vector<int> members;
    for (int c : ring.clusters[i]) {
      if (client_local[c] < 0) {
        return absl::InternalError("cluster split by the vertex selection");
      }
      members.push_back(client_local[c]);
    }
    sub.clusters.push_back(std::move(members));
  }
  sub.problem = Problem::Build(std::move(out));
  sub.r = ring.r;
  sub.m = DesignatedCost(sub.problem, sub.designated, sub.clusters);
  return sub;
}

}  // namespace

absl::StatusOr<RingInstance> TrimToReach(const RingInstance& ring, CheckLog* log) {
  const Problem& p = ring.problem;
  std::vector<int> sources;
  for (int f : ring.designated) sources.push_back(p.facility(f).vertex);
  const std::vector<Length> reach =
      MultiSourceDistances(p.instance().graph, sources);
  std::vector<char> keep(reach.size(), 0);
  for (size_t v = 0; v < reach.size(); ++v) keep[v] = reach[v] <= 4.0 * ring.r;
  absl::StatusOr<RingInstance> trimmed = InducedSubRing(ring, keep);
  if (!trimmed.ok()) return trimmed;
  if (log != nullptr) {
    log->Record("trim-keeps-clients",
                trimmed->problem.num_clients() == p.num_clients(),
                "a client lies farther than 4r from D°");
  }
  return trimmed;
}

absl::StatusOr<std::vector<RingInstance>> SplitComponents(const RingInstance& ring) {
  const std::vector<int> label = ComponentLabels(ring.problem.instance().graph);
  const int count = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<RingInstance> parts;
  for (int k = 0; k < count; ++k) {
    std::vector<char> keep(label.size());
    for (size_t v = 0; v < label.size(); ++v) keep[v] = label[v] == k;
    absl::StatusOr<RingInstance> part = InducedSubRing(ring, keep);
    if (!part.ok()) return part.status();
    if (part->problem.num_clients() == 0 && part->designated.empty()) continue;
    parts.push_back(*std::move(part));
  }
  return parts;
}

int DistanceRings::RingOfLayer(int layer) const {
  const int shifted = layer - a;
  if (((shifted % q) + q) % q == 0) return kSkippedLayer;
  int j = shifted / q;
  if (shifted % q != 0 && shifted < 0) --j;
  return j;
}

DistanceRings ComputeDistanceRings(const RingInstance& ring, double eps,
                                   CheckLog* log) {
  const Problem& p = ring.problem;
  DistanceRings dr;
  dr.eps = eps;
  dr.source = 0;
  dr.width = 8.0 * ring.r;
  dr.q = static_cast<int>(std::ceil(1.0 / eps));
  const int n = p.instance().graph.num_vertices();
  dr.dist_from_source.resize(n);
  dr.layer_of_vertex.resize(n);
  for (int v = 0; v < n; ++v) {
    dr.dist_from_source[v] = p.Dist(dr.source, v);
    dr.layer_of_vertex[v] = static_cast<int>(std::floor(dr.dist_from_source[v] / dr.width));
  }
  const int k = static_cast<int>(ring.designated.size());
  std::vector<double> contribution(k);
  std::vector<double> class_sum(dr.q, 0.0);
  for (int i = 0; i < k; ++i) {
    const int f = ring.designated[i];
    double sum = p.open_cost(f);
    for (int c : ring.clusters[i]) {
      sum += static_cast<double>(p.client(c).multiplicity) * p.ClientDist(c, f);
    }
    contribution[i] = sum;
    class_sum[dr.layer_of_vertex[p.facility(f).vertex] % dr.q] += sum;
  }
  dr.a = static_cast<int>(std::min_element(class_sum.begin(), class_sum.end()) -
                          class_sum.begin());
  for (int i = 0; i < k; ++i) {
    const int layer = dr.layer_of_vertex[p.facility(ring.designated[i]).vertex];
    const int j = dr.RingOfLayer(layer);
    const auto& cl = ring.clusters[i];
    if (j == kSkippedLayer) {
      dr.bought.push_back(i);
      dr.skipped += contribution[i];
      dr.bought_clients.insert(dr.bought_clients.end(), cl.begin(), cl.end());
    } else {
      dr.ring_designated[j].push_back(i);
      auto& rc = dr.ring_clients[j];
      rc.insert(rc.end(), cl.begin(), cl.end());
    }
  }
  std::sort(dr.bought_clients.begin(), dr.bought_clients.end());
  for (auto& [j, rc] : dr.ring_clients) std::sort(rc.begin(), rc.end());

  if (log != nullptr) {
    log->Record("isolation", NearlyLessEqual(dr.skipped, eps * ring.m),
                absl::StrFormat("skipped %g > eps M = %g", dr.skipped, eps * ring.m));
    auto ring_of_vertex = [&](int v) { return dr.RingOfLayer(dr.layer_of_vertex[v]); };
    auto check_pair = [&](int u, int v) {
      const int ju = ring_of_vertex(u);
      const int jv = ring_of_vertex(v);
      if (ju == kSkippedLayer || jv == kSkippedLayer || ju == jv) return;
      log->Record("rings-separated", p.Dist(u, v) > dr.width,
                  absl::StrFormat("vertices %d, %d in rings %d, %d at distance %g",
                                  u, v, ju, jv, p.Dist(u, v)));
    };
    if (n <= kFullCheckVertices || log->enabled(CheckLevel::kFull)) {
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) check_pair(u, v);
      }
    } else {
      std::mt19937 rng(n);
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int t = 0; t < kSampledPairs; ++t) check_pair(pick(rng), pick(rng));
    }
  }
  return dr;
}

absl::StatusOr<RingGraph> BuildRingGraph(const RingInstance& ring,
                                         const DistanceRings& rings, int j,
                                         CheckLog* log) {
  const Problem& p = ring.problem;
  const PlaneGraph& g = p.instance().graph;
  const int n = g.num_vertices();
  const int lo = j * rings.q + rings.a;
  const int hi = (j + 1) * rings.q + rings.a;
  const int s = rings.source;

  EmbeddingEditor editor(g);
  // Contract the ball below layer lo onto s along shortest-path tree edges,
  // parents before children.
  const ShortestPathTree tree = Dijkstra(g, s);
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n; ++v) {
    if (tree.parent[v] >= 0) children[tree.parent[v]].push_back(v);
  }
  std::vector<char> contracted(n, 0);
  if (lo > 0) {
    std::deque<int> queue = {s};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : children[v]) {
        if (rings.layer_of_vertex[w] >= lo) continue;
        editor.ContractEdgeInto(tree.parent_edge[w], s);
        contracted[w] = 1;
        queue.push_back(w);
      }
    }
    // Merge parallel edges at s and give the survivors their true length.
    std::map<int, int> kept;
    const std::vector<int> incident = editor.rotation(s);
    for (int e : incident) {
      const int w = editor.edge(e).u == s ? editor.edge(e).v : editor.edge(e).u;
      if (!kept.emplace(w, e).second) {
        editor.RemoveEdge(e);
      } else {
        editor.SetWeight(e, p.Dist(s, w));
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (rings.layer_of_vertex[v] > hi) editor.RemoveVertex(v);
  }
  absl::StatusOr<EmbeddingEditor::Result> built = editor.Build();
  if (!built.ok()) return built.status();

  RingGraph rg;
  rg.j = j;
  rg.r = ring.r;
  rg.len_bound_l = rings.width * (rings.q + 1);
  rg.to_parent = built->new_to_old;
  rg.source = built->old_to_new[s];
  FlInstance inst;
  inst.graph = std::move(built->graph);
  inst.label = p.instance().label;
  std::vector<int> facility_local(p.num_facilities(), -1);
  for (int f = 0; f < p.num_facilities(); ++f) {
    const int v = p.facility(f).vertex;
    if (contracted[v] || built->old_to_new[v] < 0) continue;
    if (lo > 0 && v == s) continue;
    facility_local[f] = static_cast<int>(inst.facilities.size());
    inst.facilities.push_back(FacilitySite{built->old_to_new[v], p.open_cost(f)});
    rg.facility_origin.push_back(f);
  }
  const auto rc = rings.ring_clients.find(j);
  if (rc != rings.ring_clients.end()) {
    for (int c : rc->second) {
      const int v = built->old_to_new[p.client(c).vertex];
      if (v < 0 || contracted[p.client(c).vertex]) {
        return absl::InternalError("ring client outside the kept layers");
      }
      inst.clients.push_back(ClientSite{v, p.client(c).multiplicity});
      rg.client_origin.push_back(c);
    }
  }
  const auto rd = rings.ring_designated.find(j);
  if (rd != rings.ring_designated.end()) {
    for (int i : rd->second) rg.designated.push_back(facility_local[ring.designated[i]]);
  }
  rg.problem = Problem::Build(std::move(inst));

  if (log != nullptr) {
    const Problem& h = rg.problem;
    const int hn = h.instance().graph.num_vertices();
    auto check_pair = [&](int u, int v) {
      const int pu = rg.to_parent[u];
      const int pv = rg.to_parent[v];
      const Length dh = h.Dist(u, v);
      const Length dg = p.Dist(pu, pv);
      log->Record("P1", NearlyLessEqual(dg, dh),
                  absl::StrFormat("dist_H(%d,%d)=%g < dist_G'=%g", u, v, dh, dg));
      const int layer = rings.layer_of_vertex[pu];
      if (layer > lo && layer < hi && dg <= 3.0 * ring.r) {
        log->Record("P3", NearlyEqual(dh, dg),
                    absl::StrFormat("dist_H(%d,%d)=%g, dist_G'=%g", u, v, dh, dg));
      }
    };
    for (int u = 0; u < hn; ++u) {
      log->Record("P2", NearlyEqual(h.Dist(u, rg.source), p.Dist(rg.to_parent[u], s)),
                  absl::StrFormat("vertex %d", u));
    }
    if (hn <= kFullCheckVertices || log->enabled(CheckLevel::kFull)) {
      for (int u = 0; u < hn; ++u) {
        for (int v = 0; v < hn; ++v) check_pair(u, v);
      }
    } else {
      std::mt19937 rng(hn);
      std::uniform_int_distribution<int> pick(0, hn - 1);
      for (int t = 0; t < kSampledPairs; ++t) check_pair(pick(rng), pick(rng));
    }
    const ShortestPathTree ht = Dijkstra(h.instance().graph, rg.source);
    for (int v = 0; v < hn; ++v) {
      if (v == rg.source || ht.parent[v] < 0) continue;
      const std::vector<int> path = ht.PathToSource(v);
      const Length first = ht.dist[path[path.size() - 2]];
      log->Record("piercing-ring", ht.dist[v] - first < rg.len_bound_l,
                  absl::StrFormat("vertex %d: %g >= L", v, ht.dist[v] - first));
    }
  }
  return rg;
}

absl::StatusOr<std::vector<int>> MergeRingDpSolutions(
    const RingInstance& ring, const DistanceRings& rings,
    const std::map<int, RingDpResult>& per_ring, CheckLog* log) {
  std::vector<int> open;
  for (int i : rings.bought) open.push_back(ring.designated[i]);
  double ring_sum = 0.0;
  for (const auto& [j, clients] : rings.ring_clients) {
    if (clients.empty()) continue;
    const auto it = per_ring.find(j);
    if (it == per_ring.end()) {
      return absl::InvalidArgumentError(absl::StrFormat("missing solution for ring %d", j));
    }
    open.insert(open.end(), it->second.facilities.begin(), it->second.facilities.end());
    ring_sum += it->second.cost;
  }
  std::sort(open.begin(), open.end());
  open.erase(std::unique(open.begin(), open.end()), open.end());
  if (log != nullptr && ring.problem.num_clients() > 0) {
    const double merged = SolutionCost(ring.problem, open);
    const double bound = rings.eps * ring.m + ring_sum;
    log->Record("layering-separation", NearlyLessEqual(merged, bound),
                absl::StrFormat("merged %g > eps M + ring sum = %g", merged, bound));
  }
  return open;
}

}  // namespace planar_flp
