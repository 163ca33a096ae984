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

#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "planar_flp/decomp.h"
#include "planar_flp/io.h"
#include "test_util.h"

namespace planar_flp {
namespace {

PlaneGraph ParseGraph(const char* text) {
  auto inst = ParseInstance(text);
  EXPECT_TRUE(inst.ok()) << inst.status();
  return inst->graph;
}

constexpr char kSquare[] =
    "planar-fl v1\nv 0 0 0\nv 1 1 0\nv 2 1 1\nv 3 0 1\n"
    "e 0 1 1\ne 1 2 1\ne 2 3 1\ne 3 0 1\n";
constexpr char kTriangle[] =
    "planar-fl v1\nv 0 0 0\nv 1 1 0\nv 2 0 1\ne 0 1 1\ne 1 2 1\ne 2 0 1\n";

TEST(TriangulateTest, TriangleUnchanged) {
  const auto fs = Triangulate(ParseGraph(kTriangle));
  ASSERT_TRUE(fs.ok());
  EXPECT_EQ(fs->graph.num_edges(), 3);
  EXPECT_EQ(fs->faces.size(), 2);
}

TEST(TriangulateTest, SquareGetsDiagonals) {
  const auto fs = Triangulate(ParseGraph(kSquare));
  ASSERT_TRUE(fs.ok());
  // One diagonal per side of the cycle: inner and outer face.
  EXPECT_EQ(fs->graph.num_edges(), 6);
  EXPECT_EQ(fs->faces.size(), 4);
  for (int e = fs->num_original_edges; e < fs->graph.num_edges(); ++e) {
    EXPECT_FALSE(fs->graph.edge(e).traversable());
  }
}

TEST(TriangulateTest, RejectsTinyOrDisconnected) {
  EXPECT_FALSE(Triangulate(ParseGraph("planar-fl v1\nv 0\nv 1\ne 0 1 1\n")).ok());
  EXPECT_FALSE(
      Triangulate(ParseGraph("planar-fl v1\nv 0\nv 1\nv 2\nv 3\ne 0 1 1\ne 2 3 1\n")).ok());
}

TEST(TriangulateTest, RandomGraphsBecomeTriangulations) {
  std::mt19937_64 rng(71);
  test::RandomSpec spec;
  spec.min_vertices = 3;
  spec.max_vertices = 60;
  for (int i = 0; i < 100; ++i) {
    const FlInstance inst = test::RandomInstance(rng, spec);
    if (inst.graph.num_vertices() < 3) continue;
    const auto fs = Triangulate(inst.graph);
    ASSERT_TRUE(fs.ok()) << inst.label;
    const int n = fs->graph.num_vertices();
    EXPECT_EQ(n - fs->graph.num_edges() + fs->faces.size(), 2);
    for (const auto& face : fs->faces.darts) EXPECT_EQ(face.size(), 3u);
    // Original distances survive: chords are not traversable.
    EXPECT_EQ(DistanceMatrix::Compute(fs->graph).values(),
              DistanceMatrix::Compute(inst.graph).values());
    for (int u = 0; u < n; ++u) {
      const int f = fs->xi[u];
      bool incident = false;
      for (int d : fs->faces.darts[f]) incident = incident || fs->graph.Tail(d) == u;
      EXPECT_TRUE(incident);
    }
  }
}

TEST(DualTreesTest, TriangleHasOneDualEdge) {
  const auto fs = Triangulate(ParseGraph(kTriangle));
  CheckLog log;
  const auto dt = BuildDualTrees(*fs, 0, &log);
  ASSERT_TRUE(dt.ok());
  EXPECT_EQ(dt->dual_edges.size(), 1u);
  EXPECT_EQ(log.failed("dual-tree"), 0);
}

TEST(DualTreesTest, RegionsMatchExplicitComponents) {
  std::mt19937_64 rng(72);
  for (int i = 0; i < 30; ++i) {
    const test::Decomposed d = test::RandomDecomposed(rng, 4 + i % 12, nullptr);
    const int nf = d.fs.faces.size();
    for (int arc = 0; arc < d.dt.num_arcs(); ++arc) {
      // Faces reached from the head without crossing the arc's dual edge.
      std::vector<char> seen(nf, 0);
      std::vector<int> stack = {d.dt.ArcHead(d.fs, arc)};
      seen[stack[0]] = 1;
      while (!stack.empty()) {
        const int f = stack.back();
        stack.pop_back();
        for (int k : d.dt.dual_adj[f]) {
          if (k == arc / 2) continue;
          const int e = d.dt.dual_edges[k];
          const int a = d.fs.faces.face_of_dart[2 * e];
          const int g = a == f ? d.fs.faces.face_of_dart[2 * e + 1] : a;
          if (!seen[g]) {
            seen[g] = 1;
            stack.push_back(g);
          }
        }
      }
      for (int f = 0; f < nf; ++f) {
        EXPECT_EQ(d.dt.InRegion(d.fs, arc, f), static_cast<bool>(seen[f]));
      }
      EXPECT_FALSE(d.dt.InRegion(d.fs, arc, d.dt.ArcTail(d.fs, arc)));
    }
  }
}

TEST(DecompositionTest, SingleFaceRegionIsALeaf) {
  const auto fs = Triangulate(ParseGraph(kTriangle));
  const auto dt = BuildDualTrees(*fs, 0, nullptr);
  const auto tree = BuildDecomposition(*fs, *dt, nullptr);
  ASSERT_TRUE(tree.ok());
  // Two faces: the root splits into two singleton leaves.
  EXPECT_EQ(tree->nodes.size(), 3u);
  EXPECT_EQ(tree->nodes[0].children.size(), 2u);
  for (int c : tree->nodes[0].children) EXPECT_TRUE(tree->nodes[c].children.empty());
  EXPECT_EQ(test::VerifyDecomposition(*fs, *dt, *tree), "");
}

TEST(DecompositionTest, PropertiesOnRandomGraphs) {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 100; ++i) {
    CheckLog log;
    const test::Decomposed d = test::RandomDecomposed(rng, 3 + i, &log);
    EXPECT_EQ(log.total_failed(), 0);
    EXPECT_EQ(test::VerifyDecomposition(d.fs, d.dt, d.tree), "");
  }
}

TEST(PortalsTest, ShortPathGetsFirstVertexAndSource) {
  // Path 0 - 1 - 2 - 3 with unit weights, spacing beyond its length.
  const auto inst = ParseInstance(
      "planar-fl v1\nv 0\nv 1\nv 2\nv 3\ne 0 1 1\ne 1 2 1\ne 2 3 1\n");
  const ShortestPathTree spt = Dijkstra(inst->graph, 0);
  EXPECT_EQ(PlacePortals(spt, 3, 5.0), (std::vector<int>{0, 1}));
}

TEST(PortalsTest, UnitPathOfLengthTen) {
  std::string text = "planar-fl v1\n";
  for (int v = 0; v <= 10; ++v) text += "v " + std::to_string(v) + "\n";
  for (int v = 0; v < 10; ++v) {
    text += "e " + std::to_string(v) + " " + std::to_string(v + 1) + " 1\n";
  }
  const auto inst = ParseInstance(text);
  ASSERT_TRUE(inst.ok());
  const ShortestPathTree spt = Dijkstra(inst->graph, 0);
  const std::vector<int> portals = PlacePortals(spt, 10, 1.0);
  EXPECT_LE(portals.size(), 12u);
  EXPECT_TRUE(test::PortalsCover(spt, 10, 1.0, portals));
}

TEST(PortalsTest, CoverRandomShortestPaths) {
  std::mt19937_64 rng(74);
  for (int i = 0; i < 100; ++i) {
    const test::Decomposed d = test::RandomDecomposed(rng, 10 + i % 40, nullptr);
    const int v = static_cast<int>(rng() % d.fs.graph.num_vertices());
    const double spacing = 0.5 + static_cast<double>(rng() % 100) / 10.0;
    const std::vector<int> portals = PlacePortals(d.dt.spt, v, spacing);
    EXPECT_TRUE(test::PortalsCover(d.dt.spt, v, spacing, portals));
  }
}

TEST(PortalsTest, SnapInequalityHolds) {
  std::mt19937_64 rng(75);
  for (int i = 0; i < 10; ++i) {
    const test::Decomposed dec = test::RandomDecomposed(rng, 20 + 3 * i, nullptr);
    DecompTree tree = dec.tree;
    FlInstance inst;
    inst.graph = dec.fs.graph;
    const Problem p = Problem::Build(std::move(inst));
    const double spacing = 2.0;
    AttachToNodes(dec.fs, dec.dt, p, spacing, &tree);
    const test::SnapTally tally = test::SampleSnap(dec.fs, tree, p.dist(), spacing, 300, rng);
    EXPECT_GT(tally.samples, 0);
    EXPECT_EQ(tally.violations, 0);
    CheckLog log;
    CheckPortalSnap(dec.fs, tree, p, spacing, 300, i, &log);
    EXPECT_EQ(log.failed("portal-snap"), 0);
  }
}

DistanceMatrix LineDistances(const std::vector<double>& positions) {
  const int n = static_cast<int>(positions.size());
  std::vector<Length> values(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) values[i * n + j] = std::abs(positions[i] - positions[j]);
  }
  return DistanceMatrix(n, values);
}

TEST(NormalTest, OnePortalFourFunctions) {
  const DistanceMatrix dist = LineDistances({0.0});
  NormalParams params{1.0, 0.0, 2.0, 1.0};
  const std::vector<NormalFn> fns = EnumerateNormal({0}, dist, params);
  EXPECT_EQ(fns.size(), 4u);
  EXPECT_EQ(fns.back(), NormalFn{kInfLevel});
}

TEST(NormalTest, EmptyPortalSetHasOneFunction) {
  const DistanceMatrix dist = LineDistances({0.0});
  EXPECT_EQ(EnumerateNormal({}, dist, NormalParams{1.0, 0.0, 2.0, 1.0}).size(), 1u);
}

TEST(NormalTest, MatchesBruteForce) {
  std::mt19937_64 rng(76);
  for (int i = 0; i < 200; ++i) {
    const int p = static_cast<int>(rng() % 4);
    const int levels = 1 + static_cast<int>(rng() % 6);
    std::vector<double> pos;
    std::vector<int> portals;
    for (int k = 0; k < p; ++k) {
      pos.push_back(static_cast<double>(rng() % 60) / 10.0);
      portals.push_back(k);
    }
    const DistanceMatrix dist = LineDistances(pos.empty() ? std::vector<double>{0} : pos);
    const double d = 0.5 + static_cast<double>(rng() % 4) / 4.0;
    const int64_t lo = -static_cast<int64_t>(rng() % 3);
    NormalParams params{d, static_cast<double>(lo) * d,
                        static_cast<double>(lo + levels - 1) * d, d};
    const std::vector<NormalFn> fns = EnumerateNormal(portals, dist, params);
    const std::set<NormalFn> got(fns.begin(), fns.end());
    EXPECT_EQ(got.size(), fns.size());
    EXPECT_EQ(got, test::BruteNormal(portals, dist, lo, lo + levels - 1, d, d));
    for (const NormalFn& fn : fns) EXPECT_TRUE(IsNormal(fn, portals, dist, params));
  }
}

TEST(NormalTest, TwoPortalsAtDistanceD) {
  const DistanceMatrix dist = LineDistances({0.0, 1.0});
  NormalParams params{1.0, 0.0, 4.0, 1.0};
  const std::vector<NormalFn> fns = EnumerateNormal({0, 1}, dist, params);
  // Finite pairs differ by at most 2 levels; one or both may be infinite.
  int finite_pairs = 0;
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) finite_pairs += std::abs(a - b) <= 2 ? 1 : 0;
  }
  EXPECT_EQ(fns.size(), static_cast<size_t>(finite_pairs + 5 + 5 + 1));
}

}  // namespace
}  // namespace planar_flp
