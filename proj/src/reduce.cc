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

#include "planar_flp/reduce.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace planar_flp {

double DesignatedCost(const Problem& problem, const std::vector<int>& designated,
                      const std::vector<std::vector<int>>& clusters) {
  double total = 0.0;
  for (size_t i = 0; i < designated.size(); ++i) {
    total += problem.open_cost(designated[i]);
    for (int c : clusters[i]) {
      total += static_cast<double>(problem.client(c).multiplicity) *
               problem.ClientDist(c, designated[i]);
    }
  }
  return total;
}

void CheckRingBullets(const RingInstance& ring, double radius_fraction,
                      CheckLog* log) {
  if (log == nullptr) return;
  const Problem& p = ring.problem;
  for (size_t i = 0; i < ring.designated.size(); ++i) {
    const int f = ring.designated[i];
    log->Record("same-rad-nonempty", !ring.clusters[i].empty(),
                absl::StrFormat("designated facility %d has an empty cluster", f));
    double sum = p.open_cost(f);
    int64_t size = 0;
    for (int c : ring.clusters[i]) {
      const Length d = p.ClientDist(c, f);
      log->Record("same-rad-radius",
                  NearlyLessEqual(1.0, d) &&
                      NearlyLessEqual(d, radius_fraction * ring.r),
                  absl::StrFormat("client %d at distance %g from facility %d, r=%g",
                                  c, d, f, ring.r));
      sum += static_cast<double>(p.client(c).multiplicity) * d;
      size += p.client(c).multiplicity;
    }
    log->Record("same-rad-average",
                NearlyLessEqual(sum, static_cast<double>(size) * ring.r),
                absl::StrFormat("facility %d: %g > |cluster| r", f, sum));
  }
}

namespace {

FlInstance ScaledCopy(const FlInstance& inst, double scale) {
  FlInstance out;
  std::vector<Edge> edges = inst.graph.edges();
  for (Edge& e : edges) e.weight *= scale;
  out.graph = *PlaneGraph::Create(inst.graph.num_vertices(), std::move(edges),
                                  inst.graph.rotations());
  out.coords = inst.coords;
  out.clients = inst.clients;
  out.facilities = inst.facilities;
  for (FacilitySite& f : out.facilities) f.open_cost *= scale;
  out.label = inst.label;
  return out;
}

}  // namespace

absl::StatusOr<PreprocessResult> PreprocessScale(const Problem& problem,
                                                 double eps,
                                                 double baseline_cost) {
  const FlInstance& inst = problem.instance();
  PreprocessResult result;
  const int n = inst.graph.num_vertices();
  if (!(baseline_cost > 0.0)) {
    result.problem = problem;
    result.degenerate = inst.num_clients() > 0;
    result.vertex_map.resize(n);
    std::iota(result.vertex_map.begin(), result.vertex_map.end(), 0);
    return result;
  }
  const double target =
      (static_cast<double>(inst.num_facilities()) +
       static_cast<double>(inst.TotalMultiplicity()) * inst.graph.num_edges()) /
      eps;
  result.scale = target / baseline_cost;
  FlInstance scaled = ScaledCopy(inst, result.scale);

  EmbeddingEditor editor(scaled.graph);
  std::vector<int> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  for (int e = 0; e < editor.num_edges(); ++e) {
    if (!editor.edge_alive(e) || !(editor.edge(e).weight < 1.0)) continue;
    rep[editor.edge(e).v] = editor.edge(e).u;
    editor.ContractEdge(e);
    ++result.contracted_edges;
  }
  // Contraction can leave parallel edges; keep the lightest of each bundle.
  for (int v = 0; v < editor.num_vertices(); ++v) {
    if (!editor.vertex_alive(v)) continue;
    std::map<int, int> best;
    const std::vector<int> incident = editor.rotation(v);
    for (int e : incident) {
      const int w = editor.edge(e).u == v ? editor.edge(e).v : editor.edge(e).u;
      auto [it, inserted] = best.emplace(w, e);
      if (inserted) continue;
      const int keep = it->second;
      if (editor.edge(e).weight < editor.edge(keep).weight) {
        editor.RemoveEdge(keep);
        it->second = e;
      } else {
        editor.RemoveEdge(e);
      }
    }
  }
  absl::StatusOr<EmbeddingEditor::Result> built = editor.Build();
  if (!built.ok()) return built.status();
  auto find = [&](int v) {
    while (rep[v] != v) v = rep[v];
    return v;
  };
  result.vertex_map.resize(n);
  for (int v = 0; v < n; ++v) result.vertex_map[v] = built->old_to_new[find(v)];

  FlInstance out;
  out.graph = std::move(built->graph);
  out.label = inst.label;
  out.clients = scaled.clients;
  for (ClientSite& c : out.clients) c.vertex = result.vertex_map[c.vertex];
  out.facilities = scaled.facilities;
  for (FacilitySite& f : out.facilities) {
    f.vertex = result.vertex_map[f.vertex];
    if (f.open_cost < 1.0 && f.open_cost != 0.0) {
      f.open_cost = 0.0;
      ++result.zeroed_costs;
    }
  }
  result.problem = Problem::Build(std::move(out));
  return result;
}

absl::StatusOr<ConcentratedInstance> Concentrate(const Problem& problem,
                                                 const RobustSolution& robust,
                                                 double eps, CheckLog* log) {
  const double eps2 = eps * eps;
  ConcentratedInstance conc;
  conc.robust = robust.open_set;
  conc.robust_cost = robust.original_cost;
  const ClusterMap& clusters = robust.clusters;
  const int k = static_cast<int>(conc.robust.size());
  conc.avgcost = clusters.avgcost;
  conc.cluster_size = clusters.size;
  conc.clusters = clusters.members;
  for (int i = 0; i < k; ++i) {
    if (clusters.size[i] == 0) {
      return absl::InternalError("robust facility serves no client");
    }
  }

  // Decide where every anchor goes before editing the graph.
  struct Cut {
    int robust_index;
    double offset_from_u;
  };
  std::map<int, std::vector<Cut>> cuts;  // Keyed by edge id.
  std::vector<int> pendant;              // Robust indices needing a new leaf.
  conc.anchor.assign(k, -1);
  const PlaneGraph& graph = problem.instance().graph;
  for (int i = 0; i < k; ++i) {
    const int f = conc.robust[i];
    const int fv = problem.facility(f).vertex;
    const double target = eps2 * conc.avgcost[i];
    if (target == 0.0) {
      conc.anchor[i] = fv;
      continue;
    }
    int far = -1;
    for (int c : conc.clusters[i]) {
      if (far == -1 || problem.ClientDist(c, f) > problem.ClientDist(far, f)) far = c;
    }
    const ShortestPathTree tree = Dijkstra(graph, fv);
    std::vector<int> path = tree.PathToSource(problem.client(far).vertex);
    std::reverse(path.begin(), path.end());
    bool placed = false;
    for (size_t s = 1; s < path.size() && !placed; ++s) {
      const int w = path[s];
      if (tree.dist[w] < target) continue;
      if (tree.dist[w] == target) {
        conc.anchor[i] = w;
      } else {
        const int prev = path[s - 1];
        const int e = tree.parent_edge[w];
        const double from_prev = target - tree.dist[prev];
        const double from_u =
            graph.edge(e).u == prev ? from_prev : graph.edge(e).weight - from_prev;
        cuts[e].push_back(Cut{i, from_u});
      }
      placed = true;
    }
    if (!placed) pendant.push_back(i);
  }

  EmbeddingEditor editor(graph);
  for (auto& [e, list] : cuts) {
    std::stable_sort(list.begin(), list.end(), [](const Cut& a, const Cut& b) {
      return a.offset_from_u < b.offset_from_u;
    });
    int current = e;  // Piece that still reaches the far endpoint.
    double consumed = 0.0;
    int last_vertex = -1;
    double last_offset = -1.0;
    for (const Cut& cut : list) {
      if (cut.offset_from_u == last_offset) {
        conc.anchor[cut.robust_index] = last_vertex;
        continue;
      }
      const int x = editor.SubdivideEdge(current, cut.offset_from_u - consumed);
      // The piece from x onwards is the edge most recently appended.
      current = editor.num_edges() - 1;
      consumed = cut.offset_from_u;
      conc.anchor[cut.robust_index] = x;
      last_vertex = x;
      last_offset = cut.offset_from_u;
    }
  }
  for (int i : pendant) {
    const int fv = problem.facility(conc.robust[i]).vertex;
    const int x = editor.AddVertex();
    const auto& rot = editor.rotation(fv);
    editor.AddEdge(fv, rot.empty() ? -1 : rot.front(), x, -1,
                   eps2 * conc.avgcost[i]);
    conc.anchor[i] = x;
  }
  absl::StatusOr<EmbeddingEditor::Result> built = editor.Build();
  if (!built.ok()) return built.status();

  FlInstance moved = problem.instance();
  moved.graph = std::move(built->graph);
  moved.coords.clear();
  conc.original_vertex.resize(moved.num_clients());
  conc.moved.assign(moved.num_clients(), 0);
  for (int c = 0; c < moved.num_clients(); ++c) {
    conc.original_vertex[c] = moved.clients[c].vertex;
  }
  for (int i = 0; i < k; ++i) {
    const int f = conc.robust[i];
    const double avg = conc.avgcost[i];
    for (int c : conc.clusters[i]) {
      const Length d = problem.ClientDist(c, f);
      const bool is_far = d > avg / eps2;
      const bool is_close = d < eps2 * avg;
      if (is_far) conc.psi += static_cast<double>(problem.client(c).multiplicity) * d;
      if (is_far || is_close) {
        moved.clients[c].vertex = conc.anchor[i];
        conc.moved[c] = 1;
      }
    }
  }
  conc.problem = Problem::Build(std::move(moved));

  if (log != nullptr) {
    const Problem& p = conc.problem;
    for (int i = 0; i < k; ++i) {
      const int f = conc.robust[i];
      const double avg = conc.avgcost[i];
      const Length to_anchor = p.Dist(conc.anchor[i], p.facility(f).vertex);
      log->Record("anchor-distance", NearlyEqual(to_anchor, eps2 * avg),
                  absl::StrFormat("dist(x(f), f) = %g, want %g", to_anchor, eps2 * avg));
      double sum = p.open_cost(f);
      for (int c : conc.clusters[i]) {
        const Length d = p.ClientDist(c, f);
        log->Record("concentration",
                    NearlyLessEqual(eps2 * avg, d) && NearlyLessEqual(d, avg / eps2),
                    absl::StrFormat("client %d at %g, avgcost %g", c, d, avg));
        sum += static_cast<double>(p.client(c).multiplicity) * d;
      }
      log->Record("scsol-ip-f",
                  NearlyLessEqual(sum, (1.0 + eps2) *
                                           static_cast<double>(conc.cluster_size[i]) * avg),
                  absl::StrFormat("facility %d", f));
    }
  }
  return conc;
}

std::vector<int> MagnitudeLayering::FreeFacilities(int j) const {
  std::vector<int> free = bought;
  for (auto it = rings.upper_bound(j); it != rings.end(); ++it) {
    free.insert(free.end(), it->second.begin(), it->second.end());
  }
  std::sort(free.begin(), free.end());
  return free;
}

namespace {

int FloorDiv(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int LayerIndex(double avg, double eps) {
  const double base = std::pow(eps, 4);
  int i = static_cast<int>(std::floor(std::log(avg) / std::log(base)));
  // Repair rounding at exact powers: need base^i >= avg > base^(i+1).
  while (std::pow(base, i) < avg) --i;
  while (std::pow(base, i + 1) >= avg) ++i;
  return i;
}

}  // namespace

absl::StatusOr<MagnitudeLayering> MagnitudeLayers(
    const ConcentratedInstance& conc, double eps, CheckLog* log) {
  if (conc.robust.empty()) return absl::InvalidArgumentError("empty robust solution");
  MagnitudeLayering lay;
  lay.eps = eps;
  lay.q = static_cast<int>(std::ceil(1.0 / (eps * eps)));
  const Problem& p = conc.problem;
  const int k = static_cast<int>(conc.robust.size());
  std::vector<double> contribution(k);
  lay.layer_of.resize(k);
  for (int i = 0; i < k; ++i) {
    const int f = conc.robust[i];
    double sum = p.open_cost(f);
    for (int c : conc.clusters[i]) {
      sum += static_cast<double>(p.client(c).multiplicity) * p.ClientDist(c, f);
    }
    contribution[i] = sum;
    lay.total += sum;
    if (conc.avgcost[i] > 0.0) {
      lay.layer_of[i] = LayerIndex(conc.avgcost[i], eps);
      lay.ell[lay.layer_of[i]] += sum;
    } else {
      lay.layer_of[i] = kUnlayered;
    }
  }
  auto residue = [&](int i) { return ((i % lay.q) + lay.q) % lay.q; };
  std::vector<double> class_sum(lay.q, 0.0);
  for (const auto& [i, l] : lay.ell) class_sum[residue(i)] += l;
  lay.a = static_cast<int>(std::min_element(class_sum.begin(), class_sum.end()) -
                           class_sum.begin());
  lay.class_sum = class_sum[lay.a];

  for (int i = 0; i < k; ++i) {
    const int f = conc.robust[i];
    const int layer = lay.layer_of[i];
    if (layer == kUnlayered || residue(layer) == lay.a) {
      lay.bought.push_back(f);
      lay.bought_clients.insert(lay.bought_clients.end(), conc.clusters[i].begin(),
                                conc.clusters[i].end());
    } else {
      const int j = FloorDiv(layer - lay.a, lay.q);
      lay.rings[j].push_back(f);
      auto& cl = lay.ring_clients[j];
      cl.insert(cl.end(), conc.clusters[i].begin(), conc.clusters[i].end());
    }
  }
  std::sort(lay.bought_clients.begin(), lay.bought_clients.end());
  for (auto& [j, cl] : lay.ring_clients) std::sort(cl.begin(), cl.end());

  if (log != nullptr) {
    log->Record("baker-cost", NearlyLessEqual(lay.class_sum, eps * eps * lay.total),
                absl::StrFormat("class sum %g > eps^2 * %g", lay.class_sum, lay.total));
    std::vector<int> seen;
    seen.insert(seen.end(), lay.bought_clients.begin(), lay.bought_clients.end());
    for (const auto& [j, cl] : lay.ring_clients) seen.insert(seen.end(), cl.begin(), cl.end());
    std::sort(seen.begin(), seen.end());
    std::vector<int> all(p.num_clients());
    std::iota(all.begin(), all.end(), 0);
    log->Record("layer-partition", seen == all, "client sets do not partition C'");
    for (int i = 0; i < k; ++i) {
      const int layer = lay.layer_of[i];
      if (layer == kUnlayered || residue(layer) == lay.a) continue;
      const int j = FloorDiv(layer - lay.a, lay.q);
      const double avg = conc.avgcost[i];
      const double hi = std::pow(eps, 4.0 * (j * lay.q + lay.a + 1));
      const double lo = std::pow(eps, 4.0 * (j * lay.q + lay.q + lay.a));
      log->Record("ring-avg", NearlyLessEqual(avg, hi) && lo < avg * (1 + 1e-12),
                  absl::StrFormat("facility %d avgcost %g outside ring %d", conc.robust[i], avg, j));
    }
  }
  return lay;
}

Problem RingProblem(const ConcentratedInstance& conc,
                    const MagnitudeLayering& layering, int j) {
  const FlInstance& base = conc.problem.instance();
  FlInstance inst;
  inst.graph = base.graph;
  inst.label = base.label;
  inst.facilities = base.facilities;
  for (int f : layering.FreeFacilities(j)) inst.facilities[f].open_cost = 0.0;
  const auto it = layering.ring_clients.find(j);
  if (it != layering.ring_clients.end()) {
    for (int c : it->second) inst.clients.push_back(base.clients[c]);
  }
  return Problem::WithDistances(std::move(inst), conc.problem.shared_dist());
}

absl::StatusOr<CombineResult> CombineRingSolutions(
    const ConcentratedInstance& conc, const MagnitudeLayering& layering,
    const std::map<int, std::vector<int>>& per_ring, CheckLog* log) {
  CombineResult result;
  std::vector<int> open = layering.bought;
  for (const auto& [j, facilities] : layering.rings) {
    const auto it = per_ring.find(j);
    if (it == per_ring.end()) {
      return absl::InvalidArgumentError(absl::StrFormat("missing solution for ring %d", j));
    }
    const Problem ring = RingProblem(conc, layering, j);
    absl::StatusOr<Solution> start = EvalSolution(ring, it->second);
    if (!start.ok()) return start.status();
    const Solution closed = OneOptClosure(ring, *start);
    result.ring_cost_sum += closed.cost();
    const std::vector<int> free = layering.FreeFacilities(j);
    for (int f : closed.open_set) {
      if (!std::binary_search(free.begin(), free.end(), f)) open.push_back(f);
    }
  }
  absl::StatusOr<Solution> sol = EvalSolution(conc.problem, open);
  if (!sol.ok()) return sol.status();
  result.solution = *std::move(sol);
  const double eps4 = std::pow(layering.eps, 4);
  result.bound = result.ring_cost_sum + layering.class_sum + 8.0 * eps4 * conc.robust_cost;
  if (log != nullptr) {
    log->Record("jtoi", NearlyLessEqual(result.solution.cost(), result.bound),
                absl::StrFormat("cost(D; I') = %g exceeds %g", result.solution.cost(),
                                result.bound));
  }
  return result;
}

absl::StatusOr<Reduction> RunReduction(const Problem& preprocessed,
                                        const RobustSolution& robust,
                                        double eps,
                                        const ReductionOptions& options,
                                        CheckLog* log) {
  Reduction red;
  absl::StatusOr<ConcentratedInstance> conc = Concentrate(preprocessed, robust, eps, log);
  if (!conc.ok()) return conc.status();
  red.conc = *std::move(conc);
  absl::StatusOr<MagnitudeLayering> lay = MagnitudeLayers(red.conc, eps, log);
  if (!lay.ok()) return lay.status();
  red.layering = *std::move(lay);
  red.params.eps = eps;
  red.params.q = red.layering.q;
  red.params.a = red.layering.a;

  const int q = red.layering.q;
  const int a = red.layering.a;
  const double full_r = 2.0 * std::pow(eps, -4.0 * q);
  for (const auto& [j, ring_facilities] : red.layering.rings) {
    RingTask task;
    task.j = j;
    const Problem unscaled = RingProblem(red.conc, red.layering, j);
    double scale = std::pow(eps, -(4.0 * (j * q + q + a) + 2.0));
    task.power_scale = std::isfinite(scale) && scale > 0.0;
    if (!task.power_scale) {
      // Fall back to the shortest cluster connection becoming 1.
      double min_d = kInfiniteLength;
      for (size_t i = 0; i < red.conc.robust.size(); ++i) {
        if (!std::binary_search(ring_facilities.begin(), ring_facilities.end(),
                                red.conc.robust[i])) {
          continue;
        }
        for (int c : red.conc.clusters[i]) {
          min_d = std::min(min_d, red.conc.problem.ClientDist(c, red.conc.robust[i]));
        }
      }
      scale = 1.0 / min_d;
    }
    task.scale = scale;
    FlInstance inst = ScaledCopy(unscaled.instance(), scale);
    RingInstance& ring = task.ring;
    ring.problem = Problem::Build(std::move(inst));
    ring.facility_origin.resize(ring.problem.num_facilities());
    std::iota(ring.facility_origin.begin(), ring.facility_origin.end(), 0);
    ring.client_origin = red.layering.ring_clients[j];
    std::vector<int> local(red.conc.problem.num_clients(), -1);
    for (int c = 0; c < static_cast<int>(ring.client_origin.size()); ++c) {
      local[ring.client_origin[c]] = c;
    }
    ring.designated = ring_facilities;
    for (int f : ring.designated) {
      const int i = static_cast<int>(
          std::lower_bound(red.conc.robust.begin(), red.conc.robust.end(), f) -
          red.conc.robust.begin());
      std::vector<int> members;
      for (int c : red.conc.clusters[i]) members.push_back(local[c]);
      ring.clusters.push_back(std::move(members));
    }
    task.full_radius = std::isfinite(full_r);
    if (options.strict_constants && task.full_radius) {
      ring.r = full_r;
    } else {
      // Smallest radius for which both bullets hold, doubled so distances
      // stay within r/2 as in the strict setting.
      double need = 1.0;
      const Problem& rp = ring.problem;
      for (size_t i = 0; i < ring.designated.size(); ++i) {
        const int f = ring.designated[i];
        double sum = rp.open_cost(f);
        int64_t size = 0;
        for (int c : ring.clusters[i]) {
          const Length d = rp.ClientDist(c, f);
          need = std::max(need, d);
          sum += static_cast<double>(rp.client(c).multiplicity) * d;
          size += rp.client(c).multiplicity;
        }
        need = std::max(need, sum / static_cast<double>(size));
      }
      ring.r = 2.0 * need;
    }
    ring.m = DesignatedCost(ring.problem, ring.designated, ring.clusters);
    CheckRingBullets(ring, 0.5, log);
    red.tasks.push_back(std::move(task));
  }
  return red;
}

}  // namespace planar_flp
