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
#include <vector>

#include "gtest/gtest.h"
#include "planar_flp/io.h"
#include "planar_flp/plane_graph.h"
#include "planar_flp/shortest_paths.h"
#include "test_util.h"

namespace planar_flp {
namespace {

PlaneGraph PathGraph() {
  // a - b - c with weights 1 and 2.
  std::vector<Edge> edges = {{0, 1, 1.0}, {1, 2, 2.0}};
  auto g = PlaneGraph::Create(3, edges, {{0}, {0, 1}, {1}});
  EXPECT_TRUE(g.ok());
  return *g;
}

TEST(PlaneGraphTest, RejectsBadRotations) {
  std::vector<Edge> edges = {{0, 1, 1.0}};
  EXPECT_FALSE(PlaneGraph::Create(2, edges, {{0}, {}}).ok());
  EXPECT_FALSE(PlaneGraph::Create(2, edges, {{0, 0}, {0}}).ok());
  EXPECT_FALSE(PlaneGraph::Create(2, {{0, 0, 1.0}}, {{0, 0}, {}}).ok());
  EXPECT_FALSE(PlaneGraph::Create(2, {{0, 1, -1.0}}, {{0}, {0}}).ok());
}

TEST(PlaneGraphTest, TriangleHasTwoFaces) {
  auto inst = ParseInstance(
      "planar-fl v1\nv 0 0 0\nv 1 1 0\nv 2 0 1\ne 0 1 1\ne 1 2 1\ne 2 0 1\n");
  ASSERT_TRUE(inst.ok()) << inst.status();
  EXPECT_EQ(TraceFaces(inst->graph).size(), 2);
  EXPECT_TRUE(SatisfiesEulerFormula(inst->graph));
}

TEST(PlaneGraphTest, EulerHoldsOnGeneratedGraphs) {
  std::mt19937_64 rng(11);
  test::RandomSpec spec;
  spec.max_vertices = 40;
  for (int i = 0; i < 100; ++i) {
    const FlInstance inst = test::RandomInstance(rng, spec);
    const PlaneGraph& g = inst.graph;
    EXPECT_EQ(g.num_vertices() - g.num_edges() + TraceFaces(g).size(), 2) << inst.label;
  }
}

TEST(PlaneGraphTest, EditorContractAndSubdivideKeepPlanarity) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const FlInstance inst = test::RandomInstance(rng, {});
    if (inst.graph.num_edges() == 0) continue;
    EmbeddingEditor ed(inst.graph);
    const int e = static_cast<int>(rng() % inst.graph.num_edges());
    ed.SubdivideEdge(e, inst.graph.edge(e).weight / 2);
    auto sub = ed.Build();
    ASSERT_TRUE(sub.ok());
    EXPECT_TRUE(SatisfiesEulerFormula(sub->graph));
    EXPECT_EQ(sub->graph.num_vertices(), inst.graph.num_vertices() + 1);

    EmbeddingEditor ed2(inst.graph);
    ed2.ContractEdge(e);
    auto con = ed2.Build();
    ASSERT_TRUE(con.ok());
    EXPECT_TRUE(SatisfiesEulerFormula(con->graph));
    EXPECT_EQ(con->graph.num_vertices(), inst.graph.num_vertices() - 1);
  }
}

TEST(ShortestPathsTest, PathExample) {
  const DistanceMatrix d = DistanceMatrix::Compute(PathGraph());
  EXPECT_EQ(d(0, 2), 3.0);
  for (int v = 0; v < 3; ++v) EXPECT_EQ(d(v, v), 0.0);
}

TEST(ShortestPathsTest, MatchesFloydWarshall) {
  std::mt19937_64 rng(3);
  test::RandomSpec spec;
  spec.min_vertices = 8;
  spec.max_vertices = 8;
  for (int i = 0; i < 50; ++i) {
    const FlInstance inst = test::RandomInstance(rng, spec);
    const DistanceMatrix d = DistanceMatrix::Compute(inst.graph);
    const std::vector<double> fw = test::FloydWarshall(inst.graph);
    const int n = inst.graph.num_vertices();
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        EXPECT_NEAR(d(u, v), fw[u * n + v], 1e-9) << inst.label;
      }
    }
  }
}

TEST(ShortestPathsTest, ParallelMatchesSerial) {
  std::mt19937_64 rng(4);
  test::RandomSpec spec;
  spec.max_vertices = 60;
  for (int i = 0; i < 20; ++i) {
    const FlInstance inst = test::RandomInstance(rng, spec);
    EXPECT_EQ(DistanceMatrix::Compute(inst.graph).values(),
              DistanceMatrix::ComputeSerial(inst.graph).values());
  }
}

TEST(ShortestPathsTest, TreePathsHaveTreeLength) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const FlInstance inst = test::RandomInstance(rng, {});
    const ShortestPathTree t = Dijkstra(inst.graph, 0);
    for (int v = 0; v < inst.graph.num_vertices(); ++v) {
      const std::vector<int> path = t.PathToSource(v);
      ASSERT_EQ(path.front(), v);
      ASSERT_EQ(path.back(), 0);
      double len = 0.0;
      for (size_t k = 0; k + 1 < path.size(); ++k) {
        len += inst.graph.edge(t.parent_edge[path[k]]).weight;
      }
      EXPECT_NEAR(len, t.dist[v], 1e-9);
    }
  }
}

TEST(ShortestPathsTest, MultiSource) {
  const std::vector<Length> d = MultiSourceDistances(PathGraph(), {0, 2});
  EXPECT_EQ(d[0], 0.0);
  EXPECT_EQ(d[1], 1.0);
  EXPECT_EQ(d[2], 0.0);
}

}  // namespace
}  // namespace planar_flp
