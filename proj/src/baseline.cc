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

#include "planar_flp/baseline.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace planar_flp {
namespace {

bool Reached(double paid, double cost) {
  return paid >= cost - 1e-12 * std::max(1.0, cost);
}

}  // namespace

absl::StatusOr<Solution> ConstantFactorApprox(const Problem& problem) {
  const int nc = problem.num_clients();
  const int nf = problem.num_facilities();
  if (nc == 0) return absl::InvalidArgumentError("instance has no clients");
  if (nf == 0) return absl::InvalidArgumentError("no facility serves clients");

  std::vector<double> alpha(nc, 0.0);
  std::vector<char> active(nc, 1);
  std::vector<char> tentative(nf, 0);
  std::vector<double> open_time(nf, 0.0);
  int num_active = nc;
  double t = 0.0;

  auto paid = [&](int f) {
    double total = 0.0;
    for (int c = 0; c < nc; ++c) {
      const double a = active[c] ? t : alpha[c];
      const double d = problem.ClientDist(c, f);
      if (a > d) total += static_cast<double>(problem.client(c).multiplicity) * (a - d);
    }
    return total;
  };

  while (num_active > 0) {
    // Settle everything that happens at the current time.
    for (int f = 0; f < nf; ++f) {
      if (!tentative[f] && Reached(paid(f), problem.open_cost(f))) {
        tentative[f] = 1;
        open_time[f] = t;
      }
    }
    for (int c = 0; c < nc; ++c) {
      if (!active[c]) continue;
      for (int f = 0; f < nf; ++f) {
        if (tentative[f] && problem.ClientDist(c, f) <= t) {
          active[c] = 0;
          alpha[c] = t;
          --num_active;
          break;
        }
      }
    }
    if (num_active == 0) break;

    double next = kInfiniteLength;
    bool stalled = false;
    for (int c = 0; c < nc; ++c) {
      if (!active[c]) continue;
      for (int f = 0; f < nf; ++f) {
        const double d = problem.ClientDist(c, f);
        if (d > t) next = std::min(next, d);
      }
    }
    for (int f = 0; f < nf; ++f) {
      if (tentative[f]) continue;
      double rate = 0.0;
      for (int c = 0; c < nc; ++c) {
        if (active[c] && problem.ClientDist(c, f) <= t) {
          rate += static_cast<double>(problem.client(c).multiplicity);
        }
      }
      if (rate > 0.0) {
        const double when = t + (problem.open_cost(f) - paid(f)) / rate;
        if (when <= t) {
          // The remaining deficit is below the resolution of t.
          tentative[f] = 1;
          open_time[f] = t;
          stalled = true;
        }
        next = std::min(next, when);
      }
    }
    if (stalled) continue;
    if (!(next < kInfiniteLength)) {
      return absl::FailedPreconditionError("some client reaches no facility");
    }
    t = std::max(next, t);
  }

  std::vector<int> order;
  for (int f = 0; f < nf; ++f) {
    if (tentative[f]) order.push_back(f);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int f, int g) { return open_time[f] < open_time[g]; });
  auto contributes = [&](int c, int f) { return alpha[c] > problem.ClientDist(c, f); };
  std::vector<int> chosen;
  for (int f : order) {
    bool conflict = false;
    for (int g : chosen) {
      for (int c = 0; c < nc && !conflict; ++c) {
        conflict = contributes(c, f) && contributes(c, g);
      }
      if (conflict) break;
    }
    if (!conflict) chosen.push_back(f);
  }
  return EvalSolution(problem, chosen);
}

Solution OneOptClosure(const Problem& problem, const Solution& start) {
  std::vector<int> open = start.open_set;
  double cost = SolutionCost(problem, open);
  bool added = true;
  while (added) {
    added = false;
    for (int f = 0; f < problem.num_facilities(); ++f) {
      if (std::binary_search(open.begin(), open.end(), f)) continue;
      std::vector<int> trial = open;
      trial.insert(std::upper_bound(trial.begin(), trial.end(), f), f);
      const double c = SolutionCost(problem, trial);
      if (c < cost) {
        open = std::move(trial);
        cost = c;
        added = true;
      }
    }
  }
  return *EvalSolution(problem, open);
}

Solution PruneUnserved(const Problem& problem, const Solution& solution) {
  std::vector<char> serves(problem.num_facilities(), 0);
  for (int f : solution.assignment) serves[f] = 1;
  std::vector<int> kept;
  for (int f : solution.open_set) {
    if (serves[f]) kept.push_back(f);
  }
  if (kept.empty()) return solution;
  return *EvalSolution(problem, kept);
}

bool IsOneOptClosed(const Problem& problem, const std::vector<int>& open_set) {
  const double cost = SolutionCost(problem, open_set);
  for (int f = 0; f < problem.num_facilities(); ++f) {
    if (std::binary_search(open_set.begin(), open_set.end(), f)) continue;
    std::vector<int> trial = open_set;
    trial.insert(std::upper_bound(trial.begin(), trial.end(), f), f);
    if (SolutionCost(problem, trial) < cost) return false;
  }
  return true;
}

absl::StatusOr<RobustSolution> BuildRobust(const Problem& problem, double eps,
                                           CheckLog* log) {
  if (!(eps > 0.0 && eps < 0.1)) {
    return absl::InvalidArgumentError("eps must lie in (0, 1/10)");
  }
  std::vector<double> scaled_costs(problem.num_facilities());
  for (int f = 0; f < problem.num_facilities(); ++f) {
    scaled_costs[f] = eps * problem.open_cost(f);
  }
  const Problem scaled = problem.WithOpenCosts(scaled_costs);
  absl::StatusOr<Solution> approx = ConstantFactorApprox(scaled);
  if (!approx.ok()) return approx.status();
  const Solution closed = OneOptClosure(scaled, *approx);
  const Solution pruned = PruneUnserved(scaled, closed);

  RobustSolution robust;
  robust.open_set = pruned.open_set;
  robust.scaled_cost = pruned.cost();
  absl::StatusOr<Solution> original = EvalSolution(problem, pruned.open_set);
  if (!original.ok()) return original.status();
  robust.original_cost = original->cost();
  robust.clusters = ClustersOf(problem, *original);
  if (log != nullptr) {
    log->Record("local-add", IsOneOptClosed(scaled, robust.open_set),
                "a single addition lowers cost(D~; I~)");
    bool all_serve = true;
    for (int64_t s : robust.clusters.size) all_serve = all_serve && s > 0;
    log->Record("robust-serves", all_serve, "a facility of D~ serves no client");
  }
  return robust;
}

}  // namespace planar_flp
