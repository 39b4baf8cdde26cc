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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scenario.hpp"
#include "table.hpp"

namespace eitsim::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kValidation = 2,
  kNumerical = 3,
  kIo = 4,
};

struct RunOptions {
  std::string output;  // overrides output.path when non-empty
  unsigned threads = 1;
};

/// Evaluates every point on a pool of `threads` workers and concatenates the
/// tables in sweep order, prefixed by sweep_index and sweep_value. The first
/// failing point (in sweep order) rethrows.
Table run_points(const std::vector<RunPoint>& points, unsigned threads);

/// Full `run` subcommand. Returns the process exit code; diagnostics go to
/// `err`, and table output to `out` when no path is configured.
int run_scenario_file(const std::string& file, const RunOptions& options, std::ostream& out,
                      std::ostream& err);

/// `verify` subcommand: prints one line per check, returns kOk iff all pass
/// and kValidation for an unknown suite.
int run_verify(const std::string& suite, std::ostream& out, std::ostream& err);

}  // namespace eitsim::cli
