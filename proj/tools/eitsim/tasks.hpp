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

#include <string>

#include "scenario.hpp"
#include "table.hpp"

namespace eitsim::cli {

/// Evaluates one run point. Throws ScenarioError for parameter combinations
/// the task cannot use, and lets ValidationError / NumericalError from the
/// core propagate.
Table run_task(const RunPoint& point);

/// Column reference for every task, shown by --help.
std::string task_columns_help();

}  // namespace eitsim::cli
