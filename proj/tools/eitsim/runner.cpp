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

#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "eitsim/error.hpp"
#include "eitsim/version.hpp"
#include "tasks.hpp"

namespace eitsim::cli {
namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Table run_points(const std::vector<RunPoint>& points, unsigned threads) {
  std::vector<Table> tables(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        tables[i] = run_task(points[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(points.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Table out;
  out.add_column("sweep_index");
  out.add_column("sweep_value");
  for (const auto& c : tables.front().columns) out.add_column(c);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (tables[i].columns != tables.front().columns) {
      throw NumericalError("sweep point " + std::to_string(i) + " changed the column layout");
    }
    const double value = points[i].sweep_value.value_or(std::numeric_limits<double>::quiet_NaN());
    for (auto& row : tables[i].rows) {
      std::vector<double> full;
      full.reserve(row.size() + 2);
      full.push_back(static_cast<double>(i));
      full.push_back(value);
      full.insert(full.end(), row.begin(), row.end());
      out.rows.push_back(std::move(full));
    }
  }
  return out;
}

int run_scenario_file(const std::string& file, const RunOptions& options, std::ostream& out,
                      std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string timestamp = utc_timestamp();

  std::string bytes;
  {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      err << "error: cannot read scenario '" << file << "'\n";
      return kIo;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    bytes = ss.str();
  }

  Scenario sc;
  try {
    sc = parse_scenario(Json::parse(bytes));
  } catch (const Json::parse_error& e) {
    err << "error: scenario: invalid JSON: " << e.what() << "\n";
    return kValidation;
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  Table table;
  try {
    table = run_points(sc.points, options.threads);
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const ValidationError& e) {
    err << "error: invalid parameters: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << "\n";
    return kNumerical;
  }

  Manifest m;
  m.version = kVersion;
  m.scenario = sc.name;
  m.task = to_string(sc.kind);
  m.input_sha256 = sha256_hex(bytes);
  m.sweep_parameter = sc.sweep_parameter;
  m.timestamp = timestamp;
  m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text =
      sc.format == OutputFormat::Json ? render_json(table, m) : render_csv(table, m);

  const std::string path = options.output.empty() ? sc.output_path : options.output;
  if (path.empty()) {
    out << text;
    out.flush();
    return out ? kOk : kIo;
  }
  try {
    write_atomic(path, text);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}

}  // namespace eitsim::cli
