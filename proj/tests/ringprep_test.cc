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

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "planar_flp/io.h"
#include "planar_flp/oracles.h"
#include "planar_flp/ringprep.h"
#include "test_util.h"

namespace planar_flp {
namespace {

Problem Parse(const char* text) {
  auto inst = ParseInstance(text);
  EXPECT_TRUE(inst.ok()) << inst.status();
  return Problem::Build(*std::move(inst));
}

TEST(TrimToReachTest, EverythingWithinReachIsKept) {
  const RingInstance ring = test::RingFromProblem(
      Parse("planar-fl v1\nv 0\nv 1\nv 2\ne 0 1 1\ne 1 2 1\nc 1\nc 2\nf 0 1\n"));
  CheckLog log;
  const auto trimmed = TrimToReach(ring, &log);
  ASSERT_TRUE(trimmed.ok());
  EXPECT_EQ(trimmed->problem.instance().graph.num_vertices(), 3);
  EXPECT_EQ(log.total_failed(), 0);
}

TEST(TrimToReachTest, FarFacilityIsDropped) {
  // Facility 1 serves nobody and sits 1000 away.
  const RingInstance ring = test::RingFromProblem(
      Parse("planar-fl v1\nv 0\nv 1\nv 2\ne 0 1 1\ne 1 2 1000\nc 1\nf 0 1\nf 2 1\n"));
  ASSERT_EQ(ring.designated, std::vector<int>{0});
  const auto trimmed = TrimToReach(ring, nullptr);
  ASSERT_TRUE(trimmed.ok());
  EXPECT_EQ(trimmed->problem.num_facilities(), 1);
  EXPECT_EQ(trimmed->facility_origin, std::vector<int>{0});
}

TEST(TrimToReachTest, OptimumUnchanged) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 40; ++i) {
    const RingInstance ring = test::StretchedRing(rng, 12);
    const auto trimmed = TrimToReach(ring, nullptr);
    ASSERT_TRUE(trimmed.ok());
    const double before = ExactOpt(ring.problem)->cost;
    // Components of G' are independent; the optimum is the sum of theirs.
    const auto parts = SplitComponents(*trimmed);
    ASSERT_TRUE(parts.ok());
    double after = 0.0;
    for (const RingInstance& part : *parts) {
      if (part.problem.num_clients() == 0) continue;
      after += ExactOpt(part.problem)->cost;
    }
    EXPECT_NEAR(after, before, 1e-9 * before);
  }
}

TEST(DistanceRingsTest, SmallDiameterGivesOneLayer) {
  const RingInstance ring = test::RingFromProblem(
      Parse("planar-fl v1\nv 0\nv 1\nv 2\ne 0 1 1\ne 1 2 1\nc 1\nc 2\nf 0 1\n"));
  CheckLog log;
  const DistanceRings dr = ComputeDistanceRings(ring, 0.5, &log);
  for (int layer : dr.layer_of_vertex) EXPECT_EQ(layer, 0);
  // Classes: residue 0 carries everything, residue 1 nothing.
  EXPECT_EQ(dr.a, 1);
  EXPECT_TRUE(dr.bought.empty());
  EXPECT_EQ(dr.ring_designated.size(), 1u);
  EXPECT_EQ(log.total_failed(), 0);
}

TEST(DistanceRingsTest, EqualClassSumsPickLowestResidue) {
  const RingInstance ring = test::RingFromProblem(
      Parse("planar-fl v1\nv 0\nv 1\ne 0 1 1\nc 1\nf 0 0\n"));
  // Residue 0 carries the only cluster; residues 1 to 3 tie at zero.
  const DistanceRings dr = ComputeDistanceRings(ring, 0.25, nullptr);
  EXPECT_EQ(dr.q, 4);
  EXPECT_EQ(dr.a, 1);
}

TEST(RingGraphTest, SingleRingKeepsTheGraph) {
  const RingInstance ring = test::RingFromProblem(
      Parse("planar-fl v1\nv 0\nv 1\nv 2\ne 0 1 1\ne 1 2 1\nc 1\nc 2\nf 0 1\n"));
  const DistanceRings dr = ComputeDistanceRings(ring, 0.5, nullptr);
  const auto rg = BuildRingGraph(ring, dr, dr.ring_designated.begin()->first, nullptr);
  ASSERT_TRUE(rg.ok());
  EXPECT_EQ(rg->problem.instance().graph.num_vertices(), 3);
  EXPECT_EQ(rg->problem.instance().graph.num_edges(), 2);
  EXPECT_EQ(rg->problem.num_clients(), 2);
}

// P1-P3 from independent all-pairs tables on both graphs.
TEST(RingGraphTest, DistancePropertiesAllPairs) {
  std::mt19937_64 rng(62);
  int multi = 0;
  for (int i = 0; i < 60; ++i) {
    const RingInstance base = test::StretchedRing(rng, 12);
    const auto trimmed = TrimToReach(base, nullptr);
    const auto parts = SplitComponents(*trimmed);
    for (const RingInstance& comp : *parts) {
      if (comp.problem.num_clients() == 0) continue;
      const double eps = 1.0 / (2 + static_cast<int>(rng() % 3));
      const DistanceRings dr = ComputeDistanceRings(comp, eps, nullptr);
      if (dr.ring_designated.size() > 1) ++multi;
      const PlaneGraph& g = comp.problem.instance().graph;
      const std::vector<double> dg = test::FloydWarshall(g);
      const int gn = g.num_vertices();
      for (const auto& [j, ds] : dr.ring_designated) {
        const auto rg = BuildRingGraph(comp, dr, j, nullptr);
        ASSERT_TRUE(rg.ok());
        const PlaneGraph& h = rg->problem.instance().graph;
        EXPECT_TRUE(SatisfiesEulerFormula(h));
        const std::vector<double> dh = test::FloydWarshall(h);
        const int hn = h.num_vertices();
        const int lo = j * dr.q + dr.a;
        const int hi = (j + 1) * dr.q + dr.a;
        for (int u = 0; u < hn; ++u) {
          const int pu = rg->to_parent[u];
          EXPECT_NEAR(dh[u * hn + rg->source], dg[pu * gn + dr.source], 1e-9);
          for (int v = 0; v < hn; ++v) {
            const int pv = rg->to_parent[v];
            const double in_g = dg[pu * gn + pv];
            const double in_h = dh[u * hn + v];
            EXPECT_GE(in_h, in_g - 1e-9);
            const int layer = dr.layer_of_vertex[pu];
            if (layer > lo && layer < hi && in_g <= 3.0 * comp.r) {
              EXPECT_NEAR(in_h, in_g, 1e-9);
            }
          }
        }
      }
    }
  }
  EXPECT_GT(multi, 5);
}

TEST(MergeTest, OneRingWithoutSIsThatRing) {
  const RingInstance ring = test::RingFromProblem(
      Parse("planar-fl v1\nv 0\nv 1\nv 2\ne 0 1 1\ne 1 2 1\nc 1\nc 2\nf 0 1\nf 2 1\n"));
  const DistanceRings dr = ComputeDistanceRings(ring, 0.5, nullptr);
  ASSERT_TRUE(dr.bought.empty());
  std::map<int, RingDpResult> per_ring;
  const int j = dr.ring_clients.begin()->first;
  per_ring[j] = RingDpResult{{1}, SolutionCost(ring.problem, {1})};
  CheckLog log;
  const auto merged = MergeRingDpSolutions(ring, dr, per_ring, &log);
  ASSERT_TRUE(merged.ok());
  EXPECT_EQ(*merged, std::vector<int>{1});
  EXPECT_EQ(log.total_failed(), 0);
  EXPECT_FALSE(MergeRingDpSolutions(ring, dr, {}, nullptr).ok());
}

TEST(MergeTest, ExactRingOptimaMeetSeparationBound) {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 40; ++i) {
    const RingInstance base = test::StretchedRing(rng, 12);
    const auto parts = SplitComponents(*TrimToReach(base, nullptr));
    for (const RingInstance& comp : *parts) {
      if (comp.problem.num_clients() == 0) continue;
      const DistanceRings dr = ComputeDistanceRings(comp, 0.5, nullptr);
      std::map<int, RingDpResult> per_ring;
      for (const auto& [j, clients] : dr.ring_clients) {
        if (clients.empty()) continue;
        const auto rg = BuildRingGraph(comp, dr, j, nullptr);
        const auto opt = ExactOpt(rg->problem);
        ASSERT_TRUE(opt.ok());
        RingDpResult r;
        for (int f : opt->open_set) r.facilities.push_back(rg->facility_origin[f]);
        r.cost = opt->cost;
        per_ring[j] = r;
      }
      CheckLog log;
      ASSERT_TRUE(MergeRingDpSolutions(comp, dr, per_ring, &log).ok());
      EXPECT_EQ(log.failed("layering-separation"), 0);
    }
  }
}

}  // namespace
}  // namespace planar_flp
