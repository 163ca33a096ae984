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

#include "planar_flp/instance.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"

namespace planar_flp {

int64_t FlInstance::TotalMultiplicity() const {
  int64_t total = 0;
  for (const ClientSite& c : clients) total += c.multiplicity;
  return total;
}

absl::Status ValidateInstance(const FlInstance& instance) {
  const int n = instance.graph.num_vertices();
  if (!instance.coords.empty() && static_cast<int>(instance.coords.size()) != n) {
    return absl::InvalidArgumentError("coordinates missing for some vertices");
  }
  for (int c = 0; c < instance.num_clients(); ++c) {
    const ClientSite& site = instance.clients[c];
    if (site.vertex < 0 || site.vertex >= n) {
      return absl::InvalidArgumentError(
          absl::StrFormat("client %d sits on unknown vertex %d", c, site.vertex));
    }
    if (site.multiplicity <= 0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("client %d has nonpositive multiplicity", c));
    }
  }
  for (int f = 0; f < instance.num_facilities(); ++f) {
    const FacilitySite& site = instance.facilities[f];
    if (site.vertex < 0 || site.vertex >= n) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "facility %d sits on unknown vertex %d", f, site.vertex));
    }
    if (!(site.open_cost >= 0.0) || std::isinf(site.open_cost)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("facility %d has an invalid opening cost", f));
    }
  }
  if (!SatisfiesEulerFormula(instance.graph)) {
    return absl::InvalidArgumentError("rotation system is not planar");
  }
  return absl::OkStatus();
}

Problem Problem::Build(FlInstance instance) {
  auto dist = std::make_shared<const DistanceMatrix>(
      DistanceMatrix::Compute(instance.graph));
  return WithDistances(std::move(instance), std::move(dist));
}

Problem Problem::WithDistances(FlInstance instance,
                               std::shared_ptr<const DistanceMatrix> dist) {
  Problem p;
  p.instance_ = std::move(instance);
  p.dist_ = std::move(dist);
  return p;
}

Problem Problem::WithOpenCosts(const std::vector<double>& open_costs) const {
  FlInstance copy = instance_;
  for (int f = 0; f < copy.num_facilities(); ++f) {
    copy.facilities[f].open_cost = open_costs[f];
  }
  return WithDistances(std::move(copy), dist_);
}

int NearestFacility(const Problem& problem, int c,
                    const std::vector<int>& open_set) {
  int best = -1;
  Length best_dist = kInfiniteLength;
  for (int f : open_set) {
    const Length d = problem.ClientDist(c, f);
    if (best == -1 || d < best_dist || (d == best_dist && f < best)) {
      best = f;
      best_dist = d;
    }
  }
  return best;
}

Length DistToSet(const Problem& problem, int c,
                 const std::vector<int>& open_set) {
  Length best = kInfiniteLength;
  for (int f : open_set) best = std::min(best, problem.ClientDist(c, f));
  return best;
}

absl::StatusOr<Solution> EvalSolution(const Problem& problem,
                                      std::vector<int> open_set) {
  std::sort(open_set.begin(), open_set.end());
  open_set.erase(std::unique(open_set.begin(), open_set.end()), open_set.end());
  for (int f : open_set) {
    if (f < 0 || f >= problem.num_facilities()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("unknown facility id %d", f));
    }
  }
  if (open_set.empty() && problem.num_clients() > 0) {
    return absl::InvalidArgumentError("no facility serves clients");
  }
  Solution sol;
  sol.open_set = std::move(open_set);
  sol.assignment.resize(problem.num_clients());
  for (int c = 0; c < problem.num_clients(); ++c) {
    const int f = NearestFacility(problem, c, sol.open_set);
    sol.assignment[c] = f;
    sol.conn_cost +=
        static_cast<double>(problem.client(c).multiplicity) *
        problem.ClientDist(c, f);
  }
  for (int f : sol.open_set) sol.open_cost += problem.open_cost(f);
  return sol;
}

double SolutionCost(const Problem& problem, const std::vector<int>& open_set) {
  if (open_set.empty()) {
    return problem.num_clients() > 0 ? kInfiniteLength : 0.0;
  }
  double conn = 0.0;
  for (int c = 0; c < problem.num_clients(); ++c) {
    conn += static_cast<double>(problem.client(c).multiplicity) *
            DistToSet(problem, c, open_set);
  }
  double open = 0.0;
  for (int f : open_set) open += problem.open_cost(f);
  return conn + open;
}

int ClusterMap::IndexOf(int facility) const {
  const auto it = std::lower_bound(facilities.begin(), facilities.end(), facility);
  if (it == facilities.end() || *it != facility) return -1;
  return static_cast<int>(it - facilities.begin());
}

ClusterMap ClustersOf(const Problem& problem, const Solution& solution) {
  ClusterMap map;
  map.facilities = solution.open_set;
  const int k = static_cast<int>(map.facilities.size());
  map.members.assign(k, {});
  map.size.assign(k, 0);
  map.avgcost.assign(k, std::numeric_limits<double>::quiet_NaN());
  std::vector<double> conn(k, 0.0);
  for (int c = 0; c < problem.num_clients(); ++c) {
    const int i = map.IndexOf(solution.assignment[c]);
    map.members[i].push_back(c);
    map.size[i] += problem.client(c).multiplicity;
    conn[i] += static_cast<double>(problem.client(c).multiplicity) *
               problem.ClientDist(c, map.facilities[i]);
  }
  for (int i = 0; i < k; ++i) {
    if (map.size[i] == 0) continue;
    map.avgcost[i] = (problem.open_cost(map.facilities[i]) + conn[i]) /
                     static_cast<double>(map.size[i]);
  }
  return map;
}

absl::StatusOr<bool> ImprovementWitness(const Problem& problem,
                                        const std::vector<int>& open_set,
                                        int f, const std::vector<int>& k) {
  if (k.empty()) return absl::InvalidArgumentError("client set K is empty");
  Length to_set = kInfiniteLength;
  for (int g : open_set) to_set = std::min(to_set, problem.FacilityDist(f, g));
  double weight = 0.0;
  double sum = problem.open_cost(f);
  for (int c : k) {
    weight += static_cast<double>(problem.client(c).multiplicity);
    sum += static_cast<double>(problem.client(c).multiplicity) *
           problem.ClientDist(c, f);
  }
  return to_set > 2.0 * sum / weight;
}

bool NearlyLessEqual(double a, double b, double rel) {
  if (a <= b) return true;
  return a - b <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

bool NearlyEqual(double a, double b, double rel) {
  return NearlyLessEqual(a, b, rel) && NearlyLessEqual(b, a, rel);
}

}  // namespace planar_flp
