// Copyright 2026 The eitsim Authors
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

// Scenario documents: strict JSON parsing into typed run points.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "eitsim/model.hpp"

namespace eitsim::cli {

using Json = nlohmann::json;

/// Malformed scenario; what() starts with the offending field path.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class TaskKind { Evolve, Steady, Spectrum, GateMetrics, KerrOverlap, Dressed, Milestones };

std::string to_string(TaskKind k);

struct TaskParams {
  TaskKind kind = TaskKind::Steady;

  // evolve
  double t_end = 0.0;
  double step = 0.0;
  std::size_t stride = 100;
  bool adaptive = false;
  double tolerance = 1e-10;
  bool dual_rail_start = false;
  std::vector<std::pair<std::size_t, std::size_t>> elements;

  // steady, dressed
  std::vector<double> times{0.0};

  // spectrum
  std::vector<double> nu_a;
  bool kerr_shape = false;
  double eta_scale = 1.0;

  // gate-metrics
  double target_phase = 0.0;
  double margin = 10.0;

  // kerr-overlap
  long long n_a = 1;
  long long n_c = 1;
  std::vector<double> phi;
  std::vector<double> alpha_sq;

  // milestones
  double omega_a = 0.0;
  std::vector<int> q{1, 2, 3, 4};
};

/// One fully parsed point of a (possibly swept) scenario.
struct RunPoint {
  std::optional<SystemSpec> system;
  TaskParams task;
  std::optional<double> sweep_value;
};

enum class OutputFormat { Csv, Json };

struct Scenario {
  std::string name;
  TaskKind kind = TaskKind::Steady;
  std::optional<std::string> sweep_parameter;
  std::vector<RunPoint> points;  // in sweep order
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  // empty: standard output
};

/// Parses and validates a scenario document, expanding any sweep.
Scenario parse_scenario(const Json& doc);

/// Grid syntax shared by sweeps and task axes: a number, an array of numbers,
/// or {"start", "stop", and one of "step" or "count"} with optional
/// "spacing": "linear" | "log".
std::vector<double> parse_grid(const Json& j, const std::string& path);

}  // namespace eitsim::cli
