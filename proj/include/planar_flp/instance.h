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

// Facility location instances on embedded planar graphs, solutions and the
// cluster accounting shared by every stage.

#ifndef PLANAR_FLP_INSTANCE_H_
#define PLANAR_FLP_INSTANCE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "planar_flp/plane_graph.h"
#include "planar_flp/shortest_paths.h"

namespace planar_flp {

struct ClientSite {
  int vertex = -1;
  int64_t multiplicity = 1;
};

struct FacilitySite {
  int vertex = -1;
  double open_cost = 0.0;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct FlInstance {
  PlaneGraph graph;
  std::vector<Point> coords;  // Empty or one entry per vertex.
  std::vector<ClientSite> clients;
  std::vector<FacilitySite> facilities;
  std::string label;

  int num_clients() const { return static_cast<int>(clients.size()); }
  int num_facilities() const { return static_cast<int>(facilities.size()); }
  int64_t TotalMultiplicity() const;
};

absl::Status ValidateInstance(const FlInstance& instance);

// An instance together with its distance table. Variants that only change
// costs or clients share the table.
class Problem {
 public:
  static Problem Build(FlInstance instance);
  static Problem WithDistances(FlInstance instance,
                               std::shared_ptr<const DistanceMatrix> dist);

  const FlInstance& instance() const { return instance_; }
  const DistanceMatrix& dist() const { return *dist_; }
  std::shared_ptr<const DistanceMatrix> shared_dist() const { return dist_; }

  int num_clients() const { return instance_.num_clients(); }
  int num_facilities() const { return instance_.num_facilities(); }
  const ClientSite& client(int c) const { return instance_.clients[c]; }
  const FacilitySite& facility(int f) const { return instance_.facilities[f]; }
  double open_cost(int f) const { return instance_.facilities[f].open_cost; }

  Length Dist(int u, int v) const { return (*dist_)(u, v); }
  Length ClientDist(int c, int f) const {
    return (*dist_)(instance_.clients[c].vertex,
                    instance_.facilities[f].vertex);
  }
  Length FacilityDist(int f, int g) const {
    return (*dist_)(instance_.facilities[f].vertex,
                    instance_.facilities[g].vertex);
  }
  // Copy of this problem with different opening costs, same distances.
  Problem WithOpenCosts(const std::vector<double>& open_costs) const;

 private:
  FlInstance instance_;
  std::shared_ptr<const DistanceMatrix> dist_;
};

struct Solution {
  std::vector<int> open_set;    // Sorted facility ids.
  std::vector<int> assignment;  // Serving facility per client.
  double conn_cost = 0.0;
  double open_cost = 0.0;
  double cost() const { return conn_cost + open_cost; }
};

// Index of the nearest facility of `open_set` to client c, ties to lower id.
int NearestFacility(const Problem& problem, int c,
                    const std::vector<int>& open_set);
Length DistToSet(const Problem& problem, int c,
                 const std::vector<int>& open_set);

absl::StatusOr<Solution> EvalSolution(const Problem& problem,
                                      std::vector<int> open_set);
// Same arithmetic as EvalSolution without building the assignment.
double SolutionCost(const Problem& problem, const std::vector<int>& open_set);

struct ClusterMap {
  std::vector<int> facilities;            // The evaluated open set.
  std::vector<std::vector<int>> members;  // Client ids served, per facility.
  std::vector<int64_t> size;              // Multiplicity served.
  std::vector<double> avgcost;            // NaN for facilities serving nobody.

  int IndexOf(int facility) const;
};

ClusterMap ClustersOf(const Problem& problem, const Solution& solution);

// Whether dist(f, D) > (2/|K|) (open(f) + sum_{c in K} dist(c, f)).
absl::StatusOr<bool> ImprovementWitness(const Problem& problem,
                                        const std::vector<int>& open_set,
                                        int f, const std::vector<int>& k);

// Relative comparison used by invariant checks on float sums that follow
// different addition orders.
bool NearlyLessEqual(double a, double b, double rel = 1e-9);
bool NearlyEqual(double a, double b, double rel = 1e-9);

}  // namespace planar_flp

#endif  // PLANAR_FLP_INSTANCE_H_
