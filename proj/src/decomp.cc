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

#include "planar_flp/decomp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace planar_flp {
namespace {

constexpr double kLevelTolerance = 1e-9;

double Tolerance(double x) { return kLevelTolerance * std::max(1.0, std::abs(x)); }

int TailInEditor(const EmbeddingEditor& ed, int dart) {
  const Edge& e = ed.edge(dart >> 1);
  return (dart & 1) ? e.v : e.u;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool Unite(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

absl::StatusOr<FaceStructure> Triangulate(const PlaneGraph& graph) {
  if (graph.num_vertices() < 3) {
    return absl::InvalidArgumentError("triangulation needs at least 3 vertices");
  }
  if (CountComponents(graph) != 1) {
    return absl::InvalidArgumentError("triangulation needs a connected graph");
  }
  EmbeddingEditor ed(graph);
  const FaceSet initial = TraceFaces(graph);
  for (const std::vector<int>& face : initial.darts) {
    std::vector<int> walk = face;
    while (walk.size() > 3) {
      const int k = static_cast<int>(walk.size());
      int i = 0;
      while (i < k && TailInEditor(ed, walk[i]) == TailInEditor(ed, walk[(i + 2) % k])) ++i;
      if (i == k) return absl::InternalError("face walk alternates two vertices");
      const int wi = TailInEditor(ed, walk[i]);
      const int wi2 = TailInEditor(ed, walk[(i + 2) % k]);
      const int prev = walk[(i + k - 1) % k];
      const int c = ed.AddEdge(wi, prev >> 1, wi2, walk[(i + 1) % k] >> 1, kInfiniteLength);
      std::vector<int> next = {2 * c};
      for (int j = 2; j < k; ++j) next.push_back(walk[(i + j) % k]);
      walk = std::move(next);
    }
  }
  absl::StatusOr<EmbeddingEditor::Result> built = ed.Build();
  if (!built.ok()) return built.status();
  FaceStructure fs;
  fs.graph = std::move(built->graph);
  fs.num_original_edges = graph.num_edges();
  fs.faces = TraceFaces(fs.graph);
  for (const auto& face : fs.faces.darts) {
    if (face.size() != 3) return absl::InternalError("non-triangular face left");
  }
  if (!SatisfiesEulerFormula(fs.graph)) {
    return absl::InternalError("triangulation broke the Euler formula");
  }
  fs.xi.resize(fs.graph.num_vertices());
  for (int u = 0; u < fs.graph.num_vertices(); ++u) {
    fs.xi[u] = fs.faces.face_of_dart[fs.graph.DartFrom(fs.graph.rotation(u)[0], u)];
  }
  return fs;
}

int DualTrees::ArcTail(const FaceStructure& fs, int arc) const {
  const int e = dual_edges[arc / 2];
  return fs.faces.face_of_dart[2 * e + (arc & 1)];
}

int DualTrees::ArcHead(const FaceStructure& fs, int arc) const {
  const int e = dual_edges[arc / 2];
  return fs.faces.face_of_dart[2 * e + 1 - (arc & 1)];
}

bool DualTrees::InRegion(const FaceStructure& fs, int arc, int face) const {
  const int head = ArcHead(fs, arc);
  const int tail = ArcTail(fs, arc);
  const bool in_head_subtree = tin[head] <= tin[face] && tin[face] < tout[head];
  const bool in_tail_subtree = tin[tail] <= tin[face] && tin[face] < tout[tail];
  return parent_face[head] == tail ? in_head_subtree : !in_tail_subtree;
}

absl::StatusOr<DualTrees> BuildDualTrees(const FaceStructure& fs, int source,
                                         CheckLog* log) {
  const PlaneGraph& g = fs.graph;
  DualTrees dt;
  dt.source = source;
  dt.spt = Dijkstra(g, source);
  dt.in_tree.assign(g.num_edges(), 0);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == source) continue;
    if (dt.spt.parent[v] < 0) return absl::InvalidArgumentError("vertex unreachable from s");
    dt.in_tree[dt.spt.parent_edge[v]] = 1;
  }
  const int num_faces = fs.faces.size();
  dt.dual_adj.resize(num_faces);
  UnionFind uf(num_faces);
  bool acyclic = true;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (dt.in_tree[e]) continue;
    const int k = static_cast<int>(dt.dual_edges.size());
    dt.dual_edges.push_back(e);
    const int f = fs.faces.face_of_dart[2 * e];
    const int h = fs.faces.face_of_dart[2 * e + 1];
    acyclic = uf.Unite(f, h) && acyclic;
    dt.dual_adj[f].push_back(k);
    dt.dual_adj[h].push_back(k);
  }
  const bool spanning = static_cast<int>(dt.dual_edges.size()) == num_faces - 1;
  if (log != nullptr) {
    log->Record("dual-tree", acyclic && spanning,
                absl::StrFormat("S* has %d edges on %d faces, acyclic=%d",
                                dt.dual_edges.size(), num_faces, acyclic));
  }
  if (!acyclic || !spanning) return absl::InternalError("S* is not a spanning tree");

  dt.tin.assign(num_faces, -1);
  dt.tout.assign(num_faces, -1);
  dt.parent_face.assign(num_faces, -1);
  int clock = 0;
  std::vector<std::pair<int, int>> stack = {{0, 0}};
  dt.tin[0] = clock++;
  while (!stack.empty()) {
    auto& [f, idx] = stack.back();
    if (idx == static_cast<int>(dt.dual_adj[f].size())) {
      dt.tout[f] = clock;
      stack.pop_back();
      continue;
    }
    const int k = dt.dual_adj[f][idx++];
    const int e = dt.dual_edges[k];
    const int a = fs.faces.face_of_dart[2 * e];
    const int other = a == f ? fs.faces.face_of_dart[2 * e + 1] : a;
    if (dt.tin[other] >= 0) continue;
    dt.parent_face[other] = f;
    dt.tin[other] = clock++;
    stack.push_back({other, 0});
  }
  return dt;
}

bool DecompTree::IsAncestor(int a, int b) const {
  for (int x = b; x >= 0; x = nodes[x].parent) {
    if (x == a) return true;
  }
  return false;
}

namespace {

class Decomposer {
 public:
  Decomposer(const FaceStructure& fs, const DualTrees& dt)
      : fs_(fs), dt_(dt), stamp_(fs.faces.size(), -1) {}

  int Other(int k, int f) const {
    const int e = dt_.dual_edges[k];
    const int a = fs_.faces.face_of_dart[2 * e];
    return a == f ? fs_.faces.face_of_dart[2 * e + 1] : a;
  }

  int ArcInto(int k, int f) const {
    const int e = dt_.dual_edges[k];
    return fs_.faces.face_of_dart[2 * e + 1] == f ? 2 * k : 2 * k + 1;
  }

  void Mark(const std::vector<int>& xs) {
    ++epoch_;
    for (int f : xs) stamp_[f] = epoch_;
  }
  bool Marked(int f) const { return stamp_[f] == epoch_; }

  std::vector<int> Boundary(const std::vector<int>& block) {
    Mark(block);
    std::vector<int> beta;
    for (int f : block) {
      for (int k : dt_.dual_adj[f]) {
        if (!Marked(Other(k, f))) beta.push_back(ArcInto(k, f));
      }
    }
    std::sort(beta.begin(), beta.end());
    return beta;
  }

  // Components of block minus `removed`.
  std::vector<std::vector<int>> Components(const std::vector<int>& block,
                                           const std::vector<int>& removed) {
    Mark(block);
    for (int f : removed) stamp_[f] = -1;
    std::vector<std::vector<int>> comps;
    for (int start : block) {
      if (!Marked(start)) continue;
      std::vector<int> comp = {start};
      stamp_[start] = -1;
      for (size_t i = 0; i < comp.size(); ++i) {
        for (int k : dt_.dual_adj[comp[i]]) {
          const int g = Other(k, comp[i]);
          if (Marked(g)) {
            stamp_[g] = -1;
            comp.push_back(g);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    return comps;
  }

  // Parent pointers of a BFS over the block from `root`.
  std::vector<int> BfsOrder(const std::vector<int>& block, int root,
                            std::vector<int>* parent) {
    Mark(block);
    std::vector<int> order = {root};
    (*parent)[root] = -1;
    stamp_[root] = -1;
    for (size_t i = 0; i < order.size(); ++i) {
      for (int k : dt_.dual_adj[order[i]]) {
        const int g = Other(k, order[i]);
        if (Marked(g)) {
          stamp_[g] = -1;
          (*parent)[g] = order[i];
          order.push_back(g);
        }
      }
    }
    return order;
  }

  int Centroid(const std::vector<int>& block) {
    std::vector<int> parent(fs_.faces.size(), -1);
    const std::vector<int> order = BfsOrder(block, block[0], &parent);
    std::vector<int> size(fs_.faces.size(), 1);
    std::vector<int> largest(fs_.faces.size(), 0);
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i) {
      const int f = order[i];
      size[parent[f]] += size[f];
      largest[parent[f]] = std::max(largest[parent[f]], size[f]);
    }
    const int n = static_cast<int>(block.size());
    for (int f : order) {
      if (2 * std::max(largest[f], n - size[f]) <= n) return f;
    }
    return order[0];
  }

  int BoundaryHub(const std::vector<int>& block, const std::vector<int>& z, int y) {
    if (z.empty()) return y;
    if (z.size() <= 2) return z[0];
    std::vector<int> parent(fs_.faces.size(), -1);
    BfsOrder(block, z[0], &parent);
    auto path = [&](int target) {
      std::vector<int> p;
      for (int x = target; x >= 0; x = parent[x]) p.push_back(x);
      std::reverse(p.begin(), p.end());
      return p;
    };
    const std::vector<int> p1 = path(z[1]);
    const std::vector<int> p2 = path(z[2]);
    size_t i = 0;
    while (i + 1 < p1.size() && i + 1 < p2.size() && p1[i + 1] == p2[i + 1]) ++i;
    return p1[i];
  }

  DecompTree Run() {
    DecompTree tree;
    std::vector<int> all(fs_.faces.size());
    std::iota(all.begin(), all.end(), 0);
    tree.nodes.push_back(DecompNode{});
    tree.nodes[0].faces = std::move(all);
    for (size_t t = 0; t < tree.nodes.size(); ++t) {
      tree.nodes[t].beta = Boundary(tree.nodes[t].faces);
      if (tree.nodes[t].faces.size() < 2) continue;
      const std::vector<int> block = tree.nodes[t].faces;
      std::vector<int> z;
      Mark(block);
      for (int f : block) {
        for (int k : dt_.dual_adj[f]) {
          if (!Marked(Other(k, f))) {
            z.push_back(f);
            break;
          }
        }
      }
      const int y = Centroid(block);
      const int x = BoundaryHub(block, z, y);
      std::vector<int> removed = {x};
      if (y != x) removed.push_back(y);
      std::vector<std::vector<int>> parts = Components(block, removed);
      for (int f : removed) parts.push_back({f});
      std::sort(parts.begin(), parts.end());
      for (auto& part : parts) {
        const int child = static_cast<int>(tree.nodes.size());
        DecompNode node;
        node.faces = std::move(part);
        node.parent = static_cast<int>(t);
        node.depth = tree.nodes[t].depth + 1;
        tree.nodes.push_back(std::move(node));
        tree.nodes[t].children.push_back(child);
      }
    }
    for (int t = static_cast<int>(tree.nodes.size()) - 1; t >= 0; --t) {
      DecompNode& node = tree.nodes[t];
      tree.depth = std::max(tree.depth, node.depth);
      if (node.parent >= 0) {
        DecompNode& p = tree.nodes[node.parent];
        p.height = std::max(p.height, node.height + 1);
      }
    }
    return tree;
  }

 private:
  const FaceStructure& fs_;
  const DualTrees& dt_;
  std::vector<int> stamp_;
  int epoch_ = 0;
};

}  // namespace

absl::StatusOr<DecompTree> BuildDecomposition(const FaceStructure& fs,
                                              const DualTrees& dt, CheckLog* log) {
  Decomposer decomposer(fs, dt);
  DecompTree tree = decomposer.Run();
  const int num_faces = fs.faces.size();
  CheckLog local;
  CheckLog* out = log != nullptr ? log : &local;
  bool ok = out->Record("T1", tree.depth <= std::log2(std::max(num_faces, 1)) + 1e-9,
                        absl::StrFormat("depth %d with %d faces", tree.depth, num_faces));
  const DecompNode& root = tree.nodes[tree.root];
  ok &= out->Record("T3", static_cast<int>(root.faces.size()) == num_faces && root.beta.empty(),
                    "root region is not every face");
  std::vector<char> in_region(num_faces);
  for (int t = 0; t < static_cast<int>(tree.nodes.size()); ++t) {
    const DecompNode& node = tree.nodes[t];
    ok &= out->Record("T2", node.beta.size() <= 3,
                      absl::StrFormat("node %d has %d boundary arcs", t, node.beta.size()));
    // L(beta(t)) recomputed from the arcs must be exactly X_t.
    std::fill(in_region.begin(), in_region.end(), 0);
    for (int f : node.faces) in_region[f] = 1;
    bool region_ok = true;
    for (int f = 0; f < num_faces && region_ok; ++f) {
      bool in_all = true;
      for (int arc : node.beta) in_all = in_all && dt.InRegion(fs, arc, f);
      region_ok = in_all == static_cast<bool>(in_region[f]);
    }
    ok &= out->Record("region-beta", region_ok, absl::StrFormat("node %d", t));
    if (node.children.empty()) {
      ok &= out->Record("T4", node.faces.size() == 1,
                        absl::StrFormat("leaf %d has %d faces", t, node.faces.size()));
      continue;
    }
    std::vector<int> united;
    std::vector<int> child_beta;
    for (int c : node.children) {
      const DecompNode& child = tree.nodes[c];
      united.insert(united.end(), child.faces.begin(), child.faces.end());
      child_beta.insert(child_beta.end(), child.beta.begin(), child.beta.end());
    }
    std::sort(united.begin(), united.end());
    std::sort(child_beta.begin(), child_beta.end());
    const bool covered = std::includes(child_beta.begin(), child_beta.end(),
                                       node.beta.begin(), node.beta.end());
    ok &= out->Record("T5",
                      node.children.size() <= 7 && united == node.faces && covered,
                      absl::StrFormat("node %d: %d children, partition=%d, beta covered=%d",
                                      t, node.children.size(), united == node.faces,
                                      covered));
  }
  if (!ok) return absl::InternalError("decomposition property violated");
  return tree;
}

std::vector<int> PlacePortals(const ShortestPathTree& spt, int v, double spacing) {
  const std::vector<int> path = spt.PathToSource(v);
  std::vector<int> portals = {spt.source};
  if (path.size() >= 2) {
    const int first = path[path.size() - 2];
    int64_t last_interval = -1;
    for (int i = static_cast<int>(path.size()) - 2; i >= 0; --i) {
      const int w = path[i];
      const int64_t interval =
          static_cast<int64_t>(std::floor((spt.dist[w] - spt.dist[first]) / spacing));
      if (interval != last_interval) {
        portals.push_back(w);
        last_interval = interval;
      }
    }
  }
  std::sort(portals.begin(), portals.end());
  portals.erase(std::unique(portals.begin(), portals.end()), portals.end());
  return portals;
}

void AttachToNodes(const FaceStructure& fs, const DualTrees& dt,
                   const Problem& problem, double spacing, DecompTree* tree) {
  const int n = fs.graph.num_vertices();
  std::vector<std::vector<int>> path_portals(n);
  std::vector<char> placed(n, 0);
  auto portals_of = [&](int v) -> const std::vector<int>& {
    if (!placed[v]) {
      path_portals[v] = PlacePortals(dt.spt, v, spacing);
      placed[v] = 1;
    }
    return path_portals[v];
  };
  std::vector<int> leaf_of_face(fs.faces.size(), -1);
  for (int t = 0; t < static_cast<int>(tree->nodes.size()); ++t) {
    DecompNode& node = tree->nodes[t];
    if (node.children.empty()) leaf_of_face[node.faces[0]] = t;
    std::vector<int> portals;
    for (int arc : node.beta) {
      const Edge& e = fs.graph.edge(dt.PrimalEdge(arc));
      for (int z : {e.u, e.v}) {
        const std::vector<int>& pz = portals_of(z);
        portals.insert(portals.end(), pz.begin(), pz.end());
      }
    }
    std::sort(portals.begin(), portals.end());
    portals.erase(std::unique(portals.begin(), portals.end()), portals.end());
    node.portals = std::move(portals);
    node.clients.clear();
    node.facilities.clear();
  }
  for (int c = 0; c < problem.num_clients(); ++c) {
    for (int t = leaf_of_face[fs.xi[problem.client(c).vertex]]; t >= 0;
         t = tree->nodes[t].parent) {
      tree->nodes[t].clients.push_back(c);
    }
  }
  for (int f = 0; f < problem.num_facilities(); ++f) {
    for (int t = leaf_of_face[fs.xi[problem.facility(f).vertex]]; t >= 0;
         t = tree->nodes[t].parent) {
      tree->nodes[t].facilities.push_back(f);
    }
  }
}

void CheckPortalSnap(const FaceStructure& fs, const DecompTree& tree,
                     const Problem& problem, double spacing, int samples,
                     uint64_t seed, CheckLog* log) {
  const int num_nodes = static_cast<int>(tree.nodes.size());
  if (num_nodes < 2 || log == nullptr) return;
  std::vector<int> leaf_of_face(fs.faces.size(), -1);
  for (int t = 0; t < num_nodes; ++t) {
    if (tree.nodes[t].children.empty()) leaf_of_face[tree.nodes[t].faces[0]] = t;
  }
  std::vector<std::vector<int>> vertices(num_nodes);
  for (int u = 0; u < fs.graph.num_vertices(); ++u) {
    for (int t = leaf_of_face[fs.xi[u]]; t >= 0; t = tree.nodes[t].parent) {
      vertices[t].push_back(u);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_node(0, num_nodes - 1);
  auto pick = [&](const std::vector<int>& xs) {
    return xs[std::uniform_int_distribution<size_t>(0, xs.size() - 1)(rng)];
  };
  int done = 0;
  for (int attempt = 0; attempt < 50 * samples && done < samples; ++attempt) {
    const int s = pick_node(rng);
    const int t = pick_node(rng);
    if (s == t || tree.IsAncestor(t, s) || vertices[t].empty()) continue;
    const bool ancestor = tree.IsAncestor(s, t);
    const std::vector<int>& source_pool = ancestor ? tree.nodes[s].portals : vertices[s];
    if (source_pool.empty()) continue;
    const int u = pick(source_pool);
    const int v = pick(vertices[t]);
    const Length duv = problem.Dist(u, v);
    bool found = false;
    for (int rho : tree.nodes[t].portals) {
      const Length via = problem.Dist(u, rho) + problem.Dist(rho, v) - 2.0 * spacing;
      if (via <= duv + Tolerance(duv)) {
        found = true;
        break;
      }
    }
    log->Record("portal-snap", found,
                absl::StrFormat("u=%d v=%d nodes %d,%d", u, v, s, t));
    ++done;
  }
}

int64_t NormalParams::LowLevel() const {
  return static_cast<int64_t>(std::ceil(lo / d - kLevelTolerance));
}

int64_t NormalParams::HighLevel() const {
  return static_cast<int64_t>(std::floor(hi / d + kLevelTolerance));
}

double LevelValue(int64_t level, double d) {
  return level == kInfLevel ? kInfiniteLength : static_cast<double>(level) * d;
}

bool LipschitzPair(int64_t a, int64_t b, double d, double dist, double slack) {
  if (a == kInfLevel || b == kInfLevel) return true;
  const double gap = static_cast<double>(a > b ? a - b : b - a) * d;
  return gap <= dist + slack + Tolerance(dist + slack);
}

bool IsNormal(const NormalFn& fn, const std::vector<int>& portals,
              const DistanceMatrix& dist, const NormalParams& params) {
  if (fn.size() != portals.size()) return false;
  const int64_t low = params.LowLevel();
  const int64_t high = params.HighLevel();
  for (size_t i = 0; i < fn.size(); ++i) {
    if (fn[i] == kInfLevel) continue;
    if (fn[i] < low || fn[i] > high) return false;
    for (size_t j = 0; j < i; ++j) {
      if (!LipschitzPair(fn[i], fn[j], params.d, dist(portals[i], portals[j]),
                         params.slack)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<NormalFn> EnumerateNormal(const std::vector<int>& portals,
                                      const DistanceMatrix& dist,
                                      const NormalParams& params) {
  std::vector<NormalFn> out;
  const int p = static_cast<int>(portals.size());
  const int64_t low = params.LowLevel();
  const int64_t high = params.HighLevel();
  NormalFn current(p, kInfLevel);
  // Depth-first; each position takes its finite levels ascending, then +inf.
  auto recurse = [&](auto&& self, int i) -> void {
    if (i == p) {
      out.push_back(current);
      return;
    }
    int64_t from = low;
    int64_t to = high;
    for (int j = 0; j < i; ++j) {
      if (current[j] == kInfLevel) continue;
      const double reach = dist(portals[i], portals[j]) + params.slack;
      const int64_t span =
          static_cast<int64_t>(std::floor((reach + Tolerance(reach)) / params.d)) + 1;
      from = std::max(from, current[j] - span);
      to = std::min(to, current[j] + span);
    }
    for (int64_t level = from; level <= to; ++level) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        ok = LipschitzPair(level, current[j], params.d, dist(portals[i], portals[j]),
                           params.slack);
      }
      if (!ok) continue;
      current[i] = level;
      self(self, i + 1);
    }
    current[i] = kInfLevel;
    self(self, i + 1);
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace planar_flp
