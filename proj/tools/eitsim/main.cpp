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

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "eitsim/version.hpp"
#include "runner.hpp"
#include "tasks.hpp"

int main(int argc, char** argv) {
  using namespace eitsim::cli;

  CLI::App app{"eitsim: scenario runner for multilevel-atom master equations"};
  app.set_version_flag("--version", std::string(eitsim::kVersion));
  app.require_subcommand(1);
  app.footer(task_columns_help());

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "Worker threads for sweeps (default: available cores)")
      ->check(CLI::PositiveNumber);
  // No stochastic paths exist yet; the flag keeps scripts forward compatible.
  app.add_option("--seed", seed, "Random seed (currently unused)");

  RunOptions run_opts;
  std::string scenario_file;
  auto* run = app.add_subcommand("run", "Evaluate a scenario file and write its result table");
  run->add_option("file", scenario_file, "Scenario JSON file")->required();
  run->add_option("--output,-o", run_opts.output, "Output path, overriding output.path");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a built-in check suite");
  verify->add_option("suite", suite, "invariants | paper-anchors | oracle")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  if (*run) {
    run_opts.threads = threads;
    return run_scenario_file(scenario_file, run_opts, std::cout, std::cerr);
  }
  return run_verify(suite, std::cout, std::cerr);
}
