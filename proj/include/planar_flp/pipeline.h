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

// End-to-end solver runs and their reports.

#ifndef PLANAR_FLP_PIPELINE_H_
#define PLANAR_FLP_PIPELINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "planar_flp/check_log.h"
#include "planar_flp/instance.h"

namespace planar_flp {

enum class SolverMode { kExact, kBaseline, kLocalSearch, kPtas };

absl::StatusOr<SolverMode> ParseSolverMode(std::string_view name);
std::string SolverModeName(SolverMode mode);

struct RunOptions {
  SolverMode mode = SolverMode::kPtas;
  double eps = 0.09;
  uint64_t seed = 1;
  std::optional<double> portal_spacing;
  std::optional<int> value_levels;
  bool strict_constants = false;
  CheckLevel check_level = CheckLevel::kStandard;
  int swap_size = 2;
  // Exact optimum for the ratio: computed when |F| is at most this.
  int oracle_limit = 16;
  bool check_metric = false;
};

struct RingSummary {
  int j = 0;
  double r = 0.0;
  double scale = 1.0;
  bool power_scale = false;
  bool full_radius = false;
  double delta = 0.0;
  double len_bound_l = 0.0;
  int distance_q = 0;
  int distance_a = 0;
  int components = 0;
  int ring_graphs = 0;
  int fallbacks = 0;
  int64_t dp_keys = 0;
};

struct RunReport {
  std::string label;
  SolverMode mode = SolverMode::kPtas;
  double eps = 0.0;
  double alpha = 0.0;
  int q = 0;
  int a = 0;
  double preprocess_scale = 1.0;
  std::vector<RingSummary> rings;
  Solution solution;
  std::optional<double> baseline_cost;
  std::optional<double> oracle_cost;
  std::optional<double> ratio;
  std::string note;
  std::map<std::string, CheckLog::Tally> checks;
  int failed_checks = 0;
  std::map<std::string, double> timings_ms;
};

// Symmetry, zero diagonal and the triangle inequality (all triples up to 40
// vertices or at full level, sampled otherwise). Tag "metric".
void CheckMetric(const DistanceMatrix& dist, uint64_t seed, CheckLog* log);

absl::StatusOr<RunReport> Run(const Problem& problem, const RunOptions& options);

std::string ReportJson(const RunReport& report, bool with_timings);
std::string ReportCsvHeader();
std::string ReportCsvRow(const RunReport& report);

}  // namespace planar_flp

#endif  // PLANAR_FLP_PIPELINE_H_
