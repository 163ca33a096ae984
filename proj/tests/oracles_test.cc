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
#include "planar_flp/baseline.h"
#include "planar_flp/instance.h"
#include "planar_flp/io.h"
#include "planar_flp/oracles.h"
#include "test_util.h"

namespace planar_flp {
namespace {

Problem Parse(const char* text) {
  auto inst = ParseInstance(text);
  EXPECT_TRUE(inst.ok()) << inst.status();
  return Problem::Build(*std::move(inst));
}

TEST(ExactOptTest, SingleFacility) {
  const Problem p = Parse("planar-fl v1\nv 0\nv 1\ne 0 1 2\nc 1\nc 1 3\nf 0 4\n");
  auto r = ExactOpt(p);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->open_set, std::vector<int>{0});
  EXPECT_EQ(r->cost, 4.0 + 2.0 + 6.0);
}

TEST(ExactOptTest, FreeDominatingFacility) {
  const Problem p =
      Parse("planar-fl v1\nv 0\nv 1\nv 2\ne 0 1 5\ne 1 2 5\nc 0\nc 1\nf 2 3\nf 1 0\n");
  EXPECT_EQ(ExactOpt(p)->open_set, std::vector<int>{1});
}

TEST(ExactOptTest, GuardRejectsLargeInstances) {
  GeneratorParams params;
  params.rows = 5;
  params.cols = 6;
  params.num_facilities = kExactFacilityGuard + 1;
  const Problem p = Problem::Build(*Generate(params));
  const auto r = ExactOpt(p);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().message(), "instance too large for exact oracle");
}

TEST(ExactOptTest, MatchesBruteForceAndBeatsRandomSubsets) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Problem p = Problem::Build(test::RandomInstance(rng, {}));
    const auto r = ExactOpt(p);
    ASSERT_TRUE(r.ok());
    const test::BruteResult brute = test::BruteForceOpt(p);
    EXPECT_EQ(r->cost, brute.cost);
    const int nf = p.num_facilities();
    for (int t = 0; t < 1000; ++t) {
      std::vector<int> set;
      for (int f = 0; f < nf; ++f) {
        if (rng() % 2) set.push_back(f);
      }
      if (set.empty()) set.push_back(static_cast<int>(rng() % nf));
      EXPECT_LE(r->cost, test::ScanCost(p, set));
    }
  }
}

TEST(ExactOptTest, ParallelMatchesSerial) {
  std::mt19937_64 rng(32);
  test::RandomSpec spec;
  spec.max_vertices = 30;
  spec.max_facilities = 14;
  spec.max_clients = 20;
  for (int i = 0; i < 20; ++i) {
    const Problem p = Problem::Build(test::RandomInstance(rng, spec));
    const auto a = ExactOpt(p);
    const auto b = ExactOptSerial(p);
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_EQ(a->open_set, b->open_set);
    EXPECT_EQ(a->cost, b->cost);
  }
}

TEST(LocalSearchTest, FindsSingletonOptimum) {
  const Problem p =
      Parse("planar-fl v1\nv 0\nv 1\nv 2\ne 0 1 1\ne 1 2 1\nc 0\nc 2\nf 0 9\nf 1 1\nf 2 9\n");
  EXPECT_EQ(LocalSearch(p, 1).open_set, std::vector<int>{1});
}

TEST(LocalSearchTest, OptimalStartIsFixed) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 20; ++i) {
    const Problem p = Problem::Build(test::RandomInstance(rng, {}));
    const auto opt = ExactOpt(p);
    const Solution s = LocalSearchFrom(p, opt->open_set, 2);
    EXPECT_EQ(s.cost(), opt->cost);
  }
}

TEST(LocalSearchTest, NeverBelowOptimum) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 50; ++i) {
    const Problem p = Problem::Build(test::RandomInstance(rng, {}));
    const double opt = ExactOpt(p)->cost;
    const Solution s = LocalSearch(p, 2);
    EXPECT_GE(s.cost(), opt);
    EXPECT_LE(s.cost(), 3.0 * opt);
  }
}

TEST(BaselineTest, SingleFacilityIsOptimal) {
  const Problem p = Parse("planar-fl v1\nv 0\nv 1\ne 0 1 2\nc 1\nf 0 4\n");
  const auto s = ConstantFactorApprox(p);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->open_set, std::vector<int>{0});
  EXPECT_EQ(s->cost(), ExactOpt(p)->cost);
}

TEST(BaselineTest, WithinFactorThree) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const Problem p = Problem::Build(test::RandomInstance(rng, {}));
    const auto s = ConstantFactorApprox(p);
    ASSERT_TRUE(s.ok());
    EXPECT_LE(s->cost(), kPrimalDualFactor * ExactOpt(p)->cost * (1 + 1e-12));
  }
}

TEST(BaselineTest, ClosureFixedPoints) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 30; ++i) {
    const Problem p = Problem::Build(test::RandomInstance(rng, {}));
    std::vector<int> all;
    for (int f = 0; f < p.num_facilities(); ++f) all.push_back(f);
    const Solution full = *EvalSolution(p, all);
    EXPECT_EQ(OneOptClosure(p, full).open_set, all);
    const Solution start = *EvalSolution(p, {0});
    const Solution closed = OneOptClosure(p, start);
    EXPECT_LE(closed.cost(), start.cost());
    // Full post-scan: no single addition helps.
    for (int f = 0; f < p.num_facilities(); ++f) {
      std::vector<int> plus = closed.open_set;
      plus.push_back(f);
      EXPECT_GE(test::ScanCost(p, plus), closed.cost() * (1 - 1e-12));
    }
    EXPECT_EQ(OneOptClosure(p, closed).open_set, closed.open_set);
  }
}

TEST(BaselineTest, PruneDropsShadowedDuplicate) {
  // Facility 1 sits on the same vertex as facility 0 and never wins a tie.
  const Problem p = Parse("planar-fl v1\nv 0\nv 1\ne 0 1 1\nc 1\nf 0 1\nf 0 1\n");
  const Solution s = PruneUnserved(p, *EvalSolution(p, {0, 1}));
  EXPECT_EQ(s.open_set, std::vector<int>{0});
  EXPECT_LE(s.cost(), 3.0);
}

TEST(BaselineTest, RobustSolutionProperties) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    const Problem p = Problem::Build(test::RandomInstance(rng, {}));
    const double eps = 0.09;
    CheckLog log;
    const auto robust = BuildRobust(p, eps, &log);
    ASSERT_TRUE(robust.ok());
    EXPECT_EQ(log.total_failed(), 0);
    std::vector<double> scaled_costs;
    for (int f = 0; f < p.num_facilities(); ++f) scaled_costs.push_back(eps * p.open_cost(f));
    const Problem scaled = p.WithOpenCosts(scaled_costs);
    const double base = test::ScanCost(scaled, robust->open_set);
    for (int f = 0; f < p.num_facilities(); ++f) {
      std::vector<int> plus = robust->open_set;
      plus.push_back(f);
      EXPECT_GE(test::ScanCost(scaled, plus), base * (1 - 1e-12));
    }
    for (int64_t s : robust->clusters.size) EXPECT_GT(s, 0);
    EXPECT_LE(robust->original_cost, kPrimalDualFactor / eps * ExactOpt(p)->cost);
  }
}

TEST(BaselineTest, RobustRejectsBadEps) {
  const Problem p = Parse("planar-fl v1\nv 0\nv 1\ne 0 1 2\nc 1\nf 0 4\n");
  EXPECT_FALSE(BuildRobust(p, 0.0).ok());
  EXPECT_FALSE(BuildRobust(p, 1.5).ok());
  EXPECT_EQ(BuildRobust(p, 0.05)->open_set, std::vector<int>{0});
}

}  // namespace
}  // namespace planar_flp
