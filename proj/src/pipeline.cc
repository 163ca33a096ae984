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

#include "planar_flp/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "planar_flp/baseline.h"
#include "planar_flp/dp.h"
#include "planar_flp/io.h"
#include "planar_flp/oracles.h"
#include "planar_flp/reduce.h"

namespace planar_flp {
namespace {

constexpr int kAllTriplesVertices = 40;
constexpr int kSampledTriples = 20000;

class StageTimer {
 public:
  explicit StageTimer(std::map<std::string, double>* out) : out_(out) { Reset(); }
  void Reset() { start_ = std::chrono::steady_clock::now(); }
  void Stop(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    (*out_)[stage] += std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
  }

 private:
  std::map<std::string, double>* out_;
  std::chrono::steady_clock::time_point start_;
};

absl::Status RunPtas(const Problem& problem, const RunOptions& options, CheckLog* log,
                     RunReport* report) {
  StageTimer timer(&report->timings_ms);
  absl::StatusOr<Solution> baseline = ConstantFactorApprox(problem);
  if (!baseline.ok()) return baseline.status();
  report->baseline_cost = baseline->cost();
  timer.Stop("baseline");

  absl::StatusOr<PreprocessResult> pre =
      PreprocessScale(problem, options.eps, baseline->cost());
  if (!pre.ok()) return pre.status();
  report->preprocess_scale = pre->scale;
  if (pre->degenerate) {
    // A zero-cost baseline is optimal.
    report->solution = *baseline;
    report->note = "baseline cost is zero; returned as optimal";
    return absl::OkStatus();
  }
  timer.Stop("preprocess");

  absl::StatusOr<RobustSolution> robust = BuildRobust(pre->problem, options.eps, log);
  if (!robust.ok()) return robust.status();
  report->alpha = robust->alpha;
  timer.Stop("robust");

  ReductionOptions red_options;
  red_options.strict_constants = options.strict_constants;
  absl::StatusOr<Reduction> red =
      RunReduction(pre->problem, *robust, options.eps, red_options, log);
  if (!red.ok()) return red.status();
  report->q = red->params.q;
  report->a = red->params.a;
  timer.Stop("reduction");

  DpOptions dp_options;
  dp_options.eps = options.eps * options.eps;
  dp_options.portal_spacing = options.portal_spacing;
  dp_options.value_levels = options.value_levels;
  std::map<int, std::vector<int>> per_ring;
  for (const RingTask& task : red->tasks) {
    SolveRingStats stats;
    absl::StatusOr<std::vector<int>> solved =
        SolveRing(task.ring, dp_options, log, &stats);
    if (!solved.ok()) {
      return absl::Status(solved.status().code(),
                          absl::StrCat("ring ", task.j, ": ", solved.status().message()));
    }
    std::vector<int>& ids = per_ring[task.j];
    for (int f : *solved) ids.push_back(task.ring.facility_origin[f]);
    RingSummary summary;
    summary.j = task.j;
    summary.r = task.ring.r;
    summary.scale = task.scale;
    summary.power_scale = task.power_scale;
    summary.full_radius = task.full_radius;
    summary.delta = stats.delta;
    summary.len_bound_l = stats.len_bound_l;
    summary.distance_q = stats.distance_q;
    summary.distance_a = stats.distance_a;
    summary.components = stats.components;
    summary.ring_graphs = stats.ring_graphs;
    summary.fallbacks = stats.fallbacks;
    summary.dp_keys = stats.keys;
    report->rings.push_back(summary);
  }
  timer.Stop("rings");

  absl::StatusOr<CombineResult> combined =
      CombineRingSolutions(red->conc, red->layering, per_ring, log);
  if (!combined.ok()) return combined.status();
  timer.Stop("combine");

  absl::StatusOr<Solution> final_solution =
      EvalSolution(problem, combined->solution.open_set);
  if (!final_solution.ok()) return final_solution.status();
  report->solution = *std::move(final_solution);
  timer.Stop("evaluate");
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<SolverMode> ParseSolverMode(std::string_view name) {
  if (name == "exact") return SolverMode::kExact;
  if (name == "baseline") return SolverMode::kBaseline;
  if (name == "local-search") return SolverMode::kLocalSearch;
  if (name == "ptas") return SolverMode::kPtas;
  return absl::InvalidArgumentError(absl::StrCat("unknown mode '", std::string(name), "'"));
}

std::string SolverModeName(SolverMode mode) {
  switch (mode) {
    case SolverMode::kExact:
      return "exact";
    case SolverMode::kBaseline:
      return "baseline";
    case SolverMode::kLocalSearch:
      return "local-search";
    case SolverMode::kPtas:
      return "ptas";
  }
  return "unknown";
}

void CheckMetric(const DistanceMatrix& dist, uint64_t seed, CheckLog* log) {
  const int n = dist.size();
  for (int u = 0; u < n; ++u) {
    log->Record("metric", dist(u, u) == 0.0, absl::StrFormat("dist(%d,%d) != 0", u, u));
    for (int v = u + 1; v < n; ++v) {
      if (dist(u, v) != dist(v, u)) {
        log->Record("metric", false, absl::StrFormat("asymmetric pair %d,%d", u, v));
      }
    }
  }
  auto triple = [&](int u, int v, int w) {
    if (!NearlyLessEqual(dist(u, w), dist(u, v) + dist(v, w))) {
      log->Record("metric", false,
                  absl::StrFormat("triangle %d-%d-%d: %g > %g", u, v, w, dist(u, w),
                                  dist(u, v) + dist(v, w)));
    }
  };
  if (n <= kAllTriplesVertices || log->enabled(CheckLevel::kFull)) {
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) triple(u, v, w);
      }
    }
  } else if (n > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < kSampledTriples; ++i) triple(pick(rng), pick(rng), pick(rng));
  }
  log->Record("metric", true);
}

absl::StatusOr<RunReport> Run(const Problem& problem, const RunOptions& options) {
  RunReport report;
  report.label = problem.instance().label;
  report.mode = options.mode;
  report.eps = options.eps;
  report.alpha = kPrimalDualFactor;
  CheckLog log(options.check_level);
  if (options.check_metric) CheckMetric(problem.dist(), options.seed, &log);
  StageTimer timer(&report.timings_ms);

  if (problem.num_clients() == 0 && options.mode != SolverMode::kExact) {
    report.note = "no clients; nothing to open";
  } else {
    switch (options.mode) {
      case SolverMode::kExact: {
        absl::StatusOr<ExactResult> exact = ExactOpt(problem);
        if (!exact.ok()) return exact.status();
        absl::StatusOr<Solution> sol = EvalSolution(problem, exact->open_set);
        if (!sol.ok()) return sol.status();
        report.solution = *std::move(sol);
        timer.Stop("exact");
        break;
      }
      case SolverMode::kBaseline: {
        absl::StatusOr<Solution> sol = ConstantFactorApprox(problem);
        if (!sol.ok()) return sol.status();
        report.solution = *std::move(sol);
        report.baseline_cost = report.solution.cost();
        timer.Stop("baseline");
        break;
      }
      case SolverMode::kLocalSearch:
        report.solution = LocalSearch(problem, options.swap_size);
        timer.Stop("local-search");
        break;
      case SolverMode::kPtas: {
        if (!(options.eps > 0.0 && options.eps < 0.1)) {
          return absl::InvalidArgumentError("eps must lie in (0, 0.1)");
        }
        absl::Status status = RunPtas(problem, options, &log, &report);
        if (!status.ok()) return status;
        break;
      }
    }
  }

  if (problem.num_facilities() <= std::min(options.oracle_limit, kExactFacilityGuard)) {
    timer.Reset();
    absl::StatusOr<ExactResult> exact = ExactOpt(problem);
    if (exact.ok()) {
      report.oracle_cost = exact->cost;
      const double cost = report.solution.cost();
      report.ratio = exact->cost > 0.0 ? cost / exact->cost : (cost == 0.0 ? 1.0 : kInfiniteLength);
    }
    timer.Stop("oracle");
  }
  report.checks = log.tallies();
  report.failed_checks = log.total_failed();
  return report;
}

std::string ReportJson(const RunReport& report, bool with_timings) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["label"] = report.label;
  j["mode"] = SolverModeName(report.mode);
  j["eps"] = report.eps;
  ordered_json derived;
  derived["alpha"] = report.alpha;
  derived["q"] = report.q;
  derived["a"] = report.a;
  derived["preprocess_scale"] = report.preprocess_scale;
  derived["ring_eps"] = report.eps * report.eps;
  ordered_json rings = ordered_json::array();
  for (const RingSummary& r : report.rings) {
    ordered_json x;
    x["j"] = r.j;
    x["r"] = r.r;
    x["scale"] = r.scale;
    x["power_scale"] = r.power_scale;
    x["full_radius"] = r.full_radius;
    x["delta"] = r.delta;
    x["len_bound_l"] = r.len_bound_l;
    x["distance_q"] = r.distance_q;
    x["distance_a"] = r.distance_a;
    x["components"] = r.components;
    x["ring_graphs"] = r.ring_graphs;
    x["fallbacks"] = r.fallbacks;
    x["dp_keys"] = r.dp_keys;
    rings.push_back(std::move(x));
  }
  derived["rings"] = std::move(rings);
  j["derived"] = std::move(derived);
  j["open_set"] = report.solution.open_set;
  j["cost"] = report.solution.cost();
  j["conn_cost"] = report.solution.conn_cost;
  j["open_cost"] = report.solution.open_cost;
  j["baseline_cost"] = report.baseline_cost.has_value() ? ordered_json(*report.baseline_cost)
                                                        : ordered_json(nullptr);
  j["oracle_cost"] = report.oracle_cost.has_value() ? ordered_json(*report.oracle_cost)
                                                    : ordered_json(nullptr);
  j["ratio"] = report.ratio.has_value() ? ordered_json(*report.ratio) : ordered_json(nullptr);
  if (!report.note.empty()) j["note"] = report.note;
  ordered_json checks = ordered_json::object();
  for (const auto& [tag, tally] : report.checks) {
    ordered_json t;
    t["passed"] = tally.passed;
    t["failed"] = tally.failed;
    if (!tally.failures.empty()) t["failures"] = tally.failures;
    checks[tag] = std::move(t);
  }
  j["checks"] = std::move(checks);
  j["failed_checks"] = report.failed_checks;
  if (with_timings) {
    ordered_json t = ordered_json::object();
    for (const auto& [stage, ms] : report.timings_ms) t[stage] = ms;
    j["timings_ms"] = std::move(t);
  }
  return j.dump(2) + "\n";
}

std::string ReportCsvHeader() {
  return "label,mode,eps,cost,baseline_cost,oracle_cost,ratio,open_count,failed_checks\n";
}

std::string ReportCsvRow(const RunReport& report) {
  auto opt = [](const std::optional<double>& x) {
    return x.has_value() ? FormatNumber(*x) : std::string();
  };
  return absl::StrCat(report.label, ",", SolverModeName(report.mode), ",",
                      FormatNumber(report.eps), ",", FormatNumber(report.solution.cost()),
                      ",", opt(report.baseline_cost), ",", opt(report.oracle_cost), ",",
                      opt(report.ratio), ",", report.solution.open_set.size(), ",",
                      report.failed_checks, "\n");
}

}  // namespace planar_flp
