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

#include "test_util.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_format.h"

namespace planar_flp::test {

std::vector<double> FloydWarshall(const PlaneGraph& graph) {
  const int n = graph.num_vertices();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(static_cast<size_t>(n) * n, inf);
  for (int v = 0; v < n; ++v) d[static_cast<size_t>(v) * n + v] = 0.0;
  for (const Edge& e : graph.edges()) {
    if (!e.traversable()) continue;
    double& uv = d[static_cast<size_t>(e.u) * n + e.v];
    double& vu = d[static_cast<size_t>(e.v) * n + e.u];
    uv = std::min(uv, e.weight);
    vu = std::min(vu, e.weight);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double via = d[static_cast<size_t>(i) * n + k] + d[static_cast<size_t>(k) * n + j];
        double& ij = d[static_cast<size_t>(i) * n + j];
        if (via < ij) ij = via;
      }
    }
  }
  return d;
}

double ScanCost(const Problem& problem, const std::vector<int>& open_set) {
  double conn = 0.0;
  for (int c = 0; c < problem.num_clients(); ++c) {
    double best = std::numeric_limits<double>::infinity();
    for (int f : open_set) best = std::min(best, problem.ClientDist(c, f));
    conn += static_cast<double>(problem.client(c).multiplicity) * best;
  }
  double open = 0.0;
  for (int f : open_set) open += problem.open_cost(f);
  return conn + open;
}

BruteResult BruteForceOpt(const Problem& problem) {
  const int nf = problem.num_facilities();
  BruteResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (uint32_t mask = 1; mask < (1u << nf); ++mask) {
    std::vector<int> set;
    for (int f = 0; f < nf; ++f) {
      if (mask >> f & 1) set.push_back(f);
    }
    const double cost = ScanCost(problem, set);
    if (cost < best.cost) {
      best.cost = cost;
      best.open_set = std::move(set);
    }
  }
  return best;
}

FlInstance RandomInstance(std::mt19937_64& rng, const RandomSpec& spec) {
  auto between = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (;;) {
    GeneratorParams params;
    const int n = between(spec.min_vertices, spec.max_vertices);
    switch (between(0, 2)) {
      case 0: {
        params.kind = GraphKind::kGrid;
        params.rows = between(1, std::max(1, n / 2));
        params.cols = std::max(1, n / params.rows);
        break;
      }
      case 1:
        params.kind = GraphKind::kWheel;
        params.spokes = std::max(3, n - 1);
        break;
      default:
        params.kind = GraphKind::kDelaunayLike;
        params.points = n;
        break;
    }
    params.num_clients = between(spec.min_clients, spec.max_clients);
    params.num_facilities = between(spec.min_facilities, spec.max_facilities);
    params.max_multiplicity = spec.max_multiplicity;
    params.seed = rng();
    absl::StatusOr<FlInstance> inst = Generate(params);
    if (inst.ok() && CountComponents(inst->graph) == 1) return *std::move(inst);
  }
}

RingInstance RingFromProblem(Problem problem) {
  RingInstance ring;
  std::vector<int> all;
  for (int f = 0; f < problem.num_facilities(); ++f) all.push_back(f);
  const Solution sol = *EvalSolution(problem, all);
  const ClusterMap clusters = ClustersOf(problem, sol);
  double need = 1.0;
  for (size_t i = 0; i < clusters.facilities.size(); ++i) {
    if (clusters.size[i] == 0) continue;
    const int f = clusters.facilities[i];
    ring.designated.push_back(f);
    ring.clusters.push_back(clusters.members[i]);
    need = std::max(need, clusters.avgcost[i]);
    for (int c : clusters.members[i]) need = std::max(need, problem.ClientDist(c, f));
  }
  ring.facility_origin = all;
  for (int c = 0; c < problem.num_clients(); ++c) ring.client_origin.push_back(c);
  ring.r = 2.0 * need;
  ring.problem = std::move(problem);
  ring.m = DesignatedCost(ring.problem, ring.designated, ring.clusters);
  return ring;
}

RingInstance StretchedRing(std::mt19937_64& rng, int max_vertices) {
  RandomSpec spec;
  spec.min_vertices = 5;
  spec.max_vertices = max_vertices;
  spec.max_facilities = 5;
  spec.max_clients = 6;
  FlInstance inst = RandomInstance(rng, spec);
  // Clients sit on facilities with unit opening costs so r stays small next
  // to the stretched diameter and several rings appear.
  for (FacilitySite& f : inst.facilities) f.open_cost = 1.0;
  for (ClientSite& c : inst.clients) {
    c.vertex = inst.facilities[rng() % inst.facilities.size()].vertex;
  }
  std::vector<Edge> edges = inst.graph.edges();
  for (Edge& e : edges) {
    if (rng() % 3 == 0) e.weight *= 25.0;
  }
  inst.graph = *PlaneGraph::Create(inst.graph.num_vertices(), std::move(edges),
                                   inst.graph.rotations());
  return RingFromProblem(Problem::Build(std::move(inst)));
}

Decomposed RandomDecomposed(std::mt19937_64& rng, int vertices, CheckLog* log) {
  for (;;) {
    RandomSpec spec;
    spec.min_vertices = vertices;
    spec.max_vertices = vertices;
    spec.max_facilities = 3;
    const FlInstance inst = RandomInstance(rng, spec);
    if (inst.graph.num_vertices() < 3) continue;
    absl::StatusOr<FaceStructure> fs = Triangulate(inst.graph);
    if (!fs.ok()) continue;
    Decomposed out;
    out.fs = *std::move(fs);
    const int source = static_cast<int>(rng() % out.fs.graph.num_vertices());
    absl::StatusOr<DualTrees> dt = BuildDualTrees(out.fs, source, log);
    if (!dt.ok()) continue;
    out.dt = *std::move(dt);
    absl::StatusOr<DecompTree> tree = BuildDecomposition(out.fs, out.dt, log);
    // A failed build still yields a tree worth reporting on; rebuild quietly.
    if (!tree.ok()) {
      CheckLog quiet;
      tree = BuildDecomposition(out.fs, out.dt, &quiet);
      if (!tree.ok()) continue;
    }
    out.tree = *std::move(tree);
    return out;
  }
}

std::string VerifyDecomposition(const FaceStructure& fs, const DualTrees& dt,
                                const DecompTree& tree) {
  const int num_faces = fs.faces.size();
  if (tree.depth > std::log2(static_cast<double>(num_faces)) + 1e-9) {
    return absl::StrFormat("depth %d exceeds log2(%d)", tree.depth, num_faces);
  }
  const DecompNode& root = tree.nodes[tree.root];
  if (static_cast<int>(root.faces.size()) != num_faces) return "root is not every face";
  for (size_t t = 0; t < tree.nodes.size(); ++t) {
    const DecompNode& node = tree.nodes[t];
    int depth = 0;
    for (int x = node.parent; x >= 0; x = tree.nodes[x].parent) ++depth;
    if (depth > tree.depth) return absl::StrFormat("node %d deeper than the tree", t);
    if (node.beta.size() > 3) return absl::StrFormat("node %d has |beta| > 3", t);
    // Faces reachable from the head of every arc with that dual edge cut.
    std::vector<int> count(num_faces, 0);
    for (int arc : node.beta) {
      const int cut = arc / 2;
      const int start = dt.ArcHead(fs, arc);
      std::vector<char> seen(num_faces, 0);
      std::vector<int> stack = {start};
      seen[start] = 1;
      while (!stack.empty()) {
        const int f = stack.back();
        stack.pop_back();
        ++count[f];
        for (int k : dt.dual_adj[f]) {
          if (k == cut) continue;
          const int e = dt.dual_edges[k];
          const int a = fs.faces.face_of_dart[2 * e];
          const int g = a == f ? fs.faces.face_of_dart[2 * e + 1] : a;
          if (!seen[g]) {
            seen[g] = 1;
            stack.push_back(g);
          }
        }
      }
    }
    std::vector<int> region;
    for (int f = 0; f < num_faces; ++f) {
      if (count[f] == static_cast<int>(node.beta.size())) region.push_back(f);
    }
    if (region != node.faces) return absl::StrFormat("node %d region differs from L(beta)", t);
    if (node.children.empty()) {
      if (node.faces.size() != 1) return absl::StrFormat("leaf %d has several faces", t);
      continue;
    }
    if (node.children.size() > 7) return absl::StrFormat("node %d has > 7 children", t);
    std::vector<int> united;
    for (int c : node.children) {
      const auto& cf = tree.nodes[c].faces;
      if (cf.empty()) return absl::StrFormat("child of %d is empty", t);
      united.insert(united.end(), cf.begin(), cf.end());
    }
    std::sort(united.begin(), united.end());
    if (united != node.faces) return absl::StrFormat("children of %d do not partition it", t);
  }
  return "";
}

bool PortalsCover(const ShortestPathTree& spt, int v, double spacing,
                  const std::vector<int>& portals) {
  const std::vector<int> path = spt.PathToSource(v);
  std::vector<int> on_path;
  for (int p : portals) {
    if (std::find(path.begin(), path.end(), p) != path.end()) on_path.push_back(p);
  }
  if (on_path.size() != portals.size()) return false;
  for (int w : path) {
    bool covered = false;
    for (int p : on_path) {
      covered = covered || std::abs(spt.dist[w] - spt.dist[p]) <= spacing;
    }
    if (!covered) return false;
  }
  return true;
}

std::set<NormalFn> BruteNormal(const std::vector<int>& portals,
                               const DistanceMatrix& dist, int64_t lo_level,
                               int64_t hi_level, double d, double slack) {
  const int p = static_cast<int>(portals.size());
  const int64_t choices = hi_level - lo_level + 2;
  int64_t total = 1;
  for (int i = 0; i < p; ++i) total *= choices;
  std::set<NormalFn> out;
  for (int64_t code = 0; code < total; ++code) {
    NormalFn fn(p);
    int64_t x = code;
    for (int i = 0; i < p; ++i) {
      const int64_t digit = x % choices;
      x /= choices;
      fn[i] = digit == choices - 1 ? kInfLevel : lo_level + digit;
    }
    bool ok = true;
    for (int i = 0; i < p && ok; ++i) {
      for (int j = 0; j < p && ok; ++j) {
        if (fn[i] == kInfLevel || fn[j] == kInfLevel) continue;
        const double gap = std::abs(static_cast<double>(fn[i] - fn[j])) * d;
        ok = gap <= dist(portals[i], portals[j]) + slack + 1e-9;
      }
    }
    if (ok) out.insert(fn);
  }
  return out;
}

SnapTally SampleSnap(const FaceStructure& fs, const DecompTree& tree,
                     const DistanceMatrix& dist, double spacing, int samples,
                     std::mt19937_64& rng) {
  SnapTally tally;
  const int num_nodes = static_cast<int>(tree.nodes.size());
  if (num_nodes < 2) return tally;
  // Vertices whose face lies in each region.
  std::vector<std::vector<int>> vertices(num_nodes);
  for (int t = 0; t < num_nodes; ++t) {
    const auto& faces = tree.nodes[t].faces;
    for (int u = 0; u < fs.graph.num_vertices(); ++u) {
      if (std::binary_search(faces.begin(), faces.end(), fs.xi[u])) vertices[t].push_back(u);
    }
  }
  auto is_ancestor = [&](int a, int b) {
    for (int x = b; x >= 0; x = tree.nodes[x].parent) {
      if (x == a) return true;
    }
    return false;
  };
  auto pick = [&](const std::vector<int>& xs) { return xs[rng() % xs.size()]; };
  // Unrelated node pairs, and pairs where s is a proper ancestor of t so u
  // is drawn from the portals of s.
  std::vector<std::pair<int, int>> unrelated;
  std::vector<std::pair<int, int>> ancestral;
  for (int s = 0; s < num_nodes; ++s) {
    for (int t = 0; t < num_nodes; ++t) {
      if (s == t || vertices[t].empty()) continue;
      if (is_ancestor(s, t)) {
        if (!tree.nodes[s].portals.empty()) ancestral.emplace_back(s, t);
      } else if (!is_ancestor(t, s) && !vertices[s].empty()) {
        unrelated.emplace_back(s, t);
      }
    }
  }
  if (unrelated.empty() && ancestral.empty()) return tally;
  while (tally.samples < samples) {
    const bool use_ancestral =
        unrelated.empty() || (!ancestral.empty() && tally.samples % 2 == 1);
    const auto& pairs = use_ancestral ? ancestral : unrelated;
    const auto [s, t] = pairs[rng() % pairs.size()];
    const int u = pick(use_ancestral ? tree.nodes[s].portals : vertices[s]);
    const int v = pick(vertices[t]);
    bool found = false;
    for (int rho : tree.nodes[t].portals) {
      found = found || dist(u, rho) + dist(rho, v) - 2.0 * spacing <= dist(u, v) + 1e-9;
    }
    ++tally.samples;
    if (!found) ++tally.violations;
  }
  return tally;
}

GenInstance RandomGen(std::mt19937_64& rng, const Problem& problem,
                      int client_vertices, int max_portals) {
  const int n = problem.instance().graph.num_vertices();
  GenInstance k;
  k.problem = &problem;
  std::vector<int> chosen;
  const int want = static_cast<int>(rng() % (client_vertices + 1));
  for (int i = 0; i < want; ++i) chosen.push_back(static_cast<int>(rng() % n));
  for (int c = 0; c < problem.num_clients(); ++c) {
    if (std::find(chosen.begin(), chosen.end(), problem.client(c).vertex) != chosen.end()) {
      k.clients.push_back(c);
    }
  }
  const int np = static_cast<int>(rng() % (max_portals + 1));
  for (int i = 0; i < np; ++i) {
    const int v = static_cast<int>(rng() % n);
    if (std::find(k.portals.begin(), k.portals.end(), v) != k.portals.end()) continue;
    k.portals.push_back(v);
    const double unit = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    k.pred.push_back(rng() % 3 == 0 ? kInfiniteLength : std::round(unit * 200.0) / 10.0);
    if (rng() % 2 == 0 || problem.num_facilities() == 0) {
      k.req.push_back(kInfiniteLength);
    } else {
      const int f = static_cast<int>(rng() % problem.num_facilities());
      const double base = problem.Dist(v, problem.facility(f).vertex);
      k.req.push_back(std::max(0.0, base + static_cast<double>(static_cast<int>(rng() % 5) - 2)));
    }
  }
  return k;
}

GenBrute BruteForceGen(const GenInstance& k, double lambda) {
  const Problem& p = *k.problem;
  const int nf = p.num_facilities();
  GenBrute best;
  for (uint32_t mask = 0; mask < (1u << nf); ++mask) {
    std::vector<int> r;
    for (int f = 0; f < nf; ++f) {
      if (mask >> f & 1) r.push_back(f);
    }
    bool ok = true;
    for (size_t i = 0; i < k.portals.size() && ok; ++i) {
      if (std::isinf(k.req[i])) continue;
      bool hit = false;
      for (int f : r) hit = hit || p.Dist(k.portals[i], p.facility(f).vertex) <= k.req[i] + lambda;
      ok = hit;
    }
    if (!ok) continue;
    double conn = 0.0;
    for (int c : k.clients) {
      double to = std::numeric_limits<double>::infinity();
      for (int f : r) to = std::min(to, p.ClientDist(c, f));
      for (size_t i = 0; i < k.portals.size(); ++i) {
        to = std::min(to, p.Dist(p.client(c).vertex, k.portals[i]) + k.pred[i]);
      }
      conn += static_cast<double>(p.client(c).multiplicity) * to;
    }
    double open = 0.0;
    for (int f : r) open += p.open_cost(f);
    const double cost = conn + open;
    if (!best.feasible || cost < best.cost) {
      best.feasible = true;
      best.cost = cost;
      best.facilities = r;
    }
  }
  return best;
}

}  // namespace planar_flp::test
