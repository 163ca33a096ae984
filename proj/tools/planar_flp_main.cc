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

// Command line front end: run, verify and generate.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "planar_flp/check_log.h"
#include "planar_flp/instance.h"
#include "planar_flp/io.h"
#include "planar_flp/pipeline.h"

namespace {

using planar_flp::CheckLevel;

std::optional<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

struct RunFlags {
  std::string input;
  std::string mode = "ptas";
  double eps = 0.09;
  uint64_t seed = 1;
  std::optional<double> portal_spacing;
  std::optional<int> value_levels;
  bool strict_constants = false;
  std::string verify_level;
  std::string output;
  std::string csv;
  bool timings = false;
  int oracle_limit = 16;
};

void AddRunFlags(CLI::App* cmd, RunFlags* flags, bool with_mode) {
  cmd->add_option("input", flags->input, "planar-fl v1 instance file")->required();
  if (with_mode) {
    cmd->add_option("--mode", flags->mode, "exact | baseline | local-search | ptas");
  }
  cmd->add_option("--eps", flags->eps, "accuracy, in (0, 0.1)");
  cmd->add_option("--seed", flags->seed, "seed for sampled checks");
  cmd->add_option("--portal-spacing", flags->portal_spacing, "portal interval width");
  cmd->add_option("--value-levels", flags->value_levels,
                  "number of value levels across the normal range");
  cmd->add_flag("--strict-constants", flags->strict_constants,
                "use the unscaled radius whenever it is finite");
  cmd->add_option("--verify-level", flags->verify_level, "fast | full");
  cmd->add_option("-o,--output", flags->output, "report path (default stdout)");
  cmd->add_option("--csv", flags->csv, "append a CSV summary row to this file");
  cmd->add_flag("--timings", flags->timings, "include stage timings in the report");
  cmd->add_option("--oracle-limit", flags->oracle_limit,
                  "compute the exact optimum when |F| is at most this");
}

int Execute(const RunFlags& flags, bool verify) {
  const std::optional<std::string> text = ReadFile(flags.input);
  if (!text) {
    std::cerr << "cannot read " << flags.input << "\n";
    return 2;
  }
  absl::StatusOr<planar_flp::FlInstance> inst = planar_flp::ParseInstance(*text);
  if (!inst.ok()) {
    std::cerr << flags.input << ": " << inst.status().message() << "\n";
    return 2;
  }
  planar_flp::RunOptions options;
  absl::StatusOr<planar_flp::SolverMode> mode = planar_flp::ParseSolverMode(flags.mode);
  if (!mode.ok()) {
    std::cerr << mode.status().message() << "\n";
    return 2;
  }
  options.mode = *mode;
  options.eps = flags.eps;
  options.seed = flags.seed;
  options.portal_spacing = flags.portal_spacing;
  options.value_levels = flags.value_levels;
  options.strict_constants = flags.strict_constants;
  options.oracle_limit = flags.oracle_limit;
  options.check_level = planar_flp::CheckLevelFromEnv();
  if (flags.verify_level == "fast") {
    options.check_level = CheckLevel::kStandard;
  } else if (flags.verify_level == "full") {
    options.check_level = CheckLevel::kFull;
  } else if (!flags.verify_level.empty()) {
    std::cerr << "unknown verify level '" << flags.verify_level << "'\n";
    return 2;
  }
  if (verify) {
    if (options.check_level == CheckLevel::kOff) options.check_level = CheckLevel::kStandard;
    options.check_metric = true;
  }
  const planar_flp::Problem problem = planar_flp::Problem::Build(*std::move(inst));
  absl::StatusOr<planar_flp::RunReport> report = planar_flp::Run(problem, options);
  if (!report.ok()) {
    std::cerr << "run failed: " << report.status().message() << "\n";
    return 1;
  }
  if (!WriteOutput(flags.output, planar_flp::ReportJson(*report, flags.timings))) {
    std::cerr << "cannot write " << flags.output << "\n";
    return 2;
  }
  if (!flags.csv.empty()) {
    const bool fresh = !std::ifstream(flags.csv).good();
    std::ofstream csv(flags.csv, std::ios::app);
    if (fresh) csv << planar_flp::ReportCsvHeader();
    csv << planar_flp::ReportCsvRow(*report);
  }
  return verify && report->failed_checks > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Facility location on planar graphs"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "solve an instance and print a JSON report");
  AddRunFlags(run, &run_flags, /*with_mode=*/true);

  RunFlags verify_flags;
  CLI::App* verify =
      app.add_subcommand("verify", "run the pipeline with every invariant check enabled");
  AddRunFlags(verify, &verify_flags, /*with_mode=*/false);

  planar_flp::GeneratorParams gen;
  std::string kind = "grid";
  std::string gen_output;
  CLI::App* generate = app.add_subcommand("generate", "write a random planar instance");
  generate->add_option("--kind", kind, "grid | wheel | delaunay-like");
  generate->add_option("--rows", gen.rows);
  generate->add_option("--cols", gen.cols);
  generate->add_option("--spokes", gen.spokes);
  generate->add_option("--points", gen.points);
  generate->add_option("--clients", gen.num_clients);
  generate->add_option("--facilities", gen.num_facilities);
  generate->add_option("--max-multiplicity", gen.max_multiplicity);
  generate->add_option("--min-weight", gen.min_weight);
  generate->add_option("--max-weight", gen.max_weight);
  generate->add_option("--min-open", gen.min_open);
  generate->add_option("--max-open", gen.max_open);
  generate->add_option("--seed", gen.seed);
  generate->add_option("-o,--output", gen_output, "instance path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return Execute(run_flags, /*verify=*/false);
  if (verify->parsed()) return Execute(verify_flags, /*verify=*/true);

  absl::StatusOr<planar_flp::GraphKind> parsed_kind = planar_flp::ParseGraphKind(kind);
  if (!parsed_kind.ok()) {
    std::cerr << parsed_kind.status().message() << "\n";
    return 2;
  }
  gen.kind = *parsed_kind;
  absl::StatusOr<planar_flp::FlInstance> inst = planar_flp::Generate(gen);
  if (!inst.ok()) {
    std::cerr << "generate failed: " << inst.status().message() << "\n";
    return 2;
  }
  return WriteOutput(gen_output, planar_flp::SerializeInstance(*inst)) ? 0 : 2;
}
