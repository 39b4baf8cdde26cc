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

// Result tables, their CSV/JSON renderings and atomic file output.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eitsim/model.hpp"

namespace eitsim::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real-valued columns; complex quantities occupy a _re/_im pair.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_column(std::string name) { columns.push_back(std::move(name)); }
  void add_complex_column(const std::string& name) {
    columns.push_back(name + "_re");
    columns.push_back(name + "_im");
  }
};

/// Appends values to a row in column order.
class RowWriter {
 public:
  explicit RowWriter(std::vector<double>& row) : row_(row) {}
  RowWriter& operator<<(double v) {
    row_.push_back(v);
    return *this;
  }
  RowWriter& operator<<(Complex z) {
    row_.push_back(z.real());
    row_.push_back(z.imag());
    return *this;
  }
  RowWriter& operator<<(bool b) { return *this << (b ? 1.0 : 0.0); }

 private:
  std::vector<double>& row_;
};

struct Manifest {
  std::string version;
  std::string scenario;
  std::string task;
  std::string input_sha256;
  std::optional<std::string> sweep_parameter;
  std::string timestamp;  // UTC, ISO 8601
  double wall_time_s = 0.0;
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_number(double v);

std::string render_csv(const Table& table, const Manifest& manifest);
std::string render_json(const Table& table, const Manifest& manifest);

/// Hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

/// Writes through a temporary sibling file and renames it into place.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace eitsim::cli
