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

// The planar-fl v1 text format and synthetic instance generators.
//
//   planar-fl v1
//   # label: <free text>
//   v <id> [x y]
//   e <u> <v> <weight>
//   rot <id> <neighbor...>      counter-clockwise, optional
//   c <vertex> [multiplicity]
//   f <vertex> <open-cost>
//
// Without rot lines the rotation comes from the coordinates; without either
// a planar embedding is computed.

#ifndef PLANAR_FLP_IO_H_
#define PLANAR_FLP_IO_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "planar_flp/instance.h"

namespace planar_flp {

absl::StatusOr<FlInstance> ParseInstance(std::string_view text);
std::string SerializeInstance(const FlInstance& instance);

// Shortest decimal text that parses back to the same double.
std::string FormatNumber(double value);

enum class GraphKind { kGrid, kWheel, kDelaunayLike };
absl::StatusOr<GraphKind> ParseGraphKind(std::string_view name);

struct GeneratorParams {
  GraphKind kind = GraphKind::kGrid;
  int rows = 3;        // kGrid
  int cols = 3;        // kGrid
  int spokes = 6;      // kWheel
  int points = 10;     // kDelaunayLike
  int num_clients = 6;
  int num_facilities = 3;
  int max_multiplicity = 1;
  double min_weight = 1.0;
  double max_weight = 10.0;
  double min_open = 1.0;
  double max_open = 20.0;
  uint64_t seed = 1;
};

absl::StatusOr<FlInstance> Generate(const GeneratorParams& params);

}  // namespace planar_flp

#endif  // PLANAR_FLP_IO_H_
