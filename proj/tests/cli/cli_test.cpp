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

// End-to-end checks of the eitsim binary plus in-process scenario parsing.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "runner.hpp"
#include "scenario.hpp"
#include "table.hpp"

namespace eitsim::cli {
namespace {

namespace fs = std::filesystem;

const char* kSpectrum = R"({
  "name": "spectrum sweep",
  "system": {
    "scheme": "three-level",
    "drives": {"a": {"rabi": 0.01}, "b": {"rabi": 0.5}},
    "decoherence": {"depop": {"2": 2.0}, "dephase": {"3": 0.005}}
  },
  "task": {"kind": "spectrum", "nu_a": {"start": -2, "stop": 2, "step": 0.05}},
  "sweep": {"parameter": "system.drives.b.rabi", "values": [0, 0.25, 0.5, 1, 1.5, 2, 3, 4]}
})";

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("eitsim_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Runs the binary; returns its exit status and captures stdout/stderr.
  int run(const std::string& args) {
    const std::string cmd = std::string(EITSIM_EXE) + " " + args + " > " + (dir_ / "stdout").string() +
                            " 2> " + (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    out_ = slurp(dir_ / "stdout");
    err_ = slurp(dir_ / "stderr");
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
  std::string out_, err_;
};

// Drops the two run-timing manifest lines.
std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.starts_with("# timestamp:") || line.starts_with("# wall_time_s:")) continue;
    kept += line + "\n";
  }
  return kept;
}

TEST_F(Cli, SpectrumRunIsByteIdenticalAcrossThreadCounts) {
  const auto scenario = write("s.json", kSpectrum);
  const auto a = dir_ / "a.csv", b = dir_ / "b.csv";
  ASSERT_EQ(run("--threads 1 run " + scenario.string() + " --output " + a.string()), 0) << err_;
  ASSERT_EQ(run("--threads 5 run " + scenario.string() + " --output " + b.string()), 0) << err_;
  const std::string ta = slurp(a), tb = slurp(b);
  EXPECT_EQ(without_timing(ta), without_timing(tb));
  EXPECT_EQ(ta.find('\r'), std::string::npos);
  EXPECT_NE(ta.find("# input_sha256: " + sha256_hex(slurp(scenario)) + "\n"), std::string::npos);
  for (const auto& e : fs::directory_iterator(dir_)) {
    EXPECT_EQ(e.path().string().find(".tmp."), std::string::npos) << e.path();
  }
}

TEST_F(Cli, RowsFollowSweepOrderThenGridOrder) {
  const auto scenario = write("s.json", kSpectrum);
  ASSERT_EQ(run("--threads 8 run " + scenario.string()), 0) << err_;
  std::istringstream in(out_);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) continue;
    if (!header) {
      EXPECT_EQ(line, "sweep_index,sweep_value,nu_a,chi_re,chi_im,eta,kappa,deta_dnu");
      header = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  ASSERT_EQ(rows.size(), 8u * 81u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool same = rows[i][0] == rows[i - 1][0];
    EXPECT_TRUE(same ? rows[i][2] > rows[i - 1][2] : rows[i][0] == rows[i - 1][0] + 1) << i;
  }
  EXPECT_EQ(rows[81][1], 0.25);
}

TEST_F(Cli, JsonOutputCarriesManifestAsSiblingField) {
  std::string text = kSpectrum;
  text.insert(text.rfind('}'), R"(, "output": {"format": "json", "path": ")" +
                                   (dir_ / "out.json").string() + "\"}");
  ASSERT_EQ(run("run " + write("s.json", text).string()), 0) << err_;
  const auto doc = nlohmann::json::parse(slurp(dir_ / "out.json"));
  EXPECT_EQ(doc.at("manifest").at("task"), "spectrum");
  EXPECT_EQ(doc.at("manifest").at("input_sha256").get<std::string>().size(), 64u);
  EXPECT_TRUE(doc.at("manifest").contains("wall_time_s"));
  EXPECT_EQ(doc.at("columns").size(), 8u);
  EXPECT_EQ(doc.at("rows").size(), 8u * 81u);
}

TEST_F(Cli, UnknownFieldExitsTwoNamingThePath) {
  const auto p = write("bad.json", R"({"name": "x", "system": {"scheme": "two-level",
      "drives": {"a": {"rabi": 0.1, "detunning": 2}}}, "task": {"kind": "steady"}})");
  EXPECT_EQ(run("run " + p.string()), 2);
  EXPECT_NE(err_.find("system.drives.a.detunning"), std::string::npos) << err_;

  const auto top = write("top.json", R"({"name": "x", "task": {"kind": "milestones",
      "omega_a": 0.1}, "colour": 1})");
  EXPECT_EQ(run("run " + top.string()), 2);
  EXPECT_NE(err_.find("colour: unknown field"), std::string::npos) << err_;
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("run " + (dir_ / "missing.json").string()), 4);
  EXPECT_EQ(run("run " + write("broken.json", "{\"name\": ").string()), 2);

  const auto diverge = write("d.json", R"({"name": "d", "system": {"scheme": "two-level",
      "drives": {"a": {"rabi": 0.1}}, "decoherence": {"depop": {"2": 2}}},
      "task": {"kind": "evolve", "t_end": 100000, "step": 100}})");
  EXPECT_EQ(run("run " + diverge.string()), 3);
  EXPECT_NE(err_.find("diverged"), std::string::npos) << err_;

  const auto ok = write("m.json", R"({"name": "m", "task": {"kind": "milestones", "omega_a": 0.1}})");
  EXPECT_EQ(run("run " + ok.string() + " --output " + (dir_ / "no/such/dir/x.csv").string()), 4);
  EXPECT_EQ(run("run " + ok.string()), 0);
  EXPECT_NE(out_.find("sweep_index,sweep_value,q,nu_a,t_q,phi_q\n"), std::string::npos);

  EXPECT_EQ(run("verify no-such-suite"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(Cli, VerifyPaperAnchorsPasses) {
  EXPECT_EQ(run("verify paper-anchors"), 0) << out_ << err_;
  EXPECT_EQ(out_.find("FAIL"), std::string::npos) << out_;
  EXPECT_NE(out_.find("0.9503"), std::string::npos);
}

TEST_F(Cli, HelpDocumentsEveryTasksColumns) {
  EXPECT_EQ(run("--help"), 0);
  for (const char* word : {"evolve", "steady", "spectrum", "gate-metrics", "kerr-overlap", "dressed",
                           "milestones", "chi", "gate_error", "excited_population", "phi_q",
                           "_re", "_im"}) {
    EXPECT_NE(out_.find(word), std::string::npos) << word;
  }
}

TEST(ScenarioParsing, GridForms) {
  using nlohmann::json;
  EXPECT_EQ(parse_grid(json(2.5), "g"), std::vector<double>{2.5});
  EXPECT_EQ(parse_grid(json::parse("[1, 2, 3]"), "g"), (std::vector<double>{1, 2, 3}));
  const auto lin = parse_grid(json::parse(R"({"start": -1, "stop": 1, "count": 5})"), "g");
  EXPECT_EQ(lin, (std::vector<double>{-1, -0.5, 0, 0.5, 1}));
  const auto lg = parse_grid(json::parse(R"({"start": 10, "stop": 1e6, "count": 6, "spacing": "log"})"), "g");
  ASSERT_EQ(lg.size(), 6u);
  EXPECT_EQ(lg.front(), 10.0);
  EXPECT_EQ(lg.back(), 1e6);
  EXPECT_NEAR(lg[2], 1e3, 1e-9);
  EXPECT_EQ(parse_grid(json::parse(R"({"start": 0, "stop": 1, "step": 0.25})"), "g").size(), 5u);
  EXPECT_THROW(parse_grid(json::parse(R"({"start": 0, "stop": 1})"), "g"), ScenarioError);
  EXPECT_THROW(parse_grid(json::parse(R"({"start": 0, "stop": 1, "step": 0.1, "count": 3})"), "g"),
               ScenarioError);
  EXPECT_THROW(parse_grid(json::parse(R"({"start": 0, "stop": 1, "count": 3, "spacing": "log"})"), "g"),
               ScenarioError);
  EXPECT_THROW(parse_grid(json::parse("[]"), "g"), ScenarioError);
  EXPECT_THROW(parse_grid(json::parse(R"(["a"])"), "g"), ScenarioError);
}

TEST(ScenarioParsing, ErrorsNameTheFieldPath) {
  using nlohmann::json;
  const auto path_of = [](const char* text) {
    try {
      parse_scenario(json::parse(text));
    } catch (const ScenarioError& e) {
      return e.path();
    }
    return std::string("<no error>");
  };
  EXPECT_EQ(path_of(R"({"task": {"kind": "steady"}})"), "name");
  EXPECT_EQ(path_of(R"({"name": "x", "task": {"kind": "nap"}})"), "task.kind");
  EXPECT_EQ(path_of(R"({"name": "x", "task": {"kind": "steady"}})"), "system");
  EXPECT_EQ(path_of(R"({"name": "x", "system": {"scheme": "five-level"}, "task": {"kind": "steady"}})"),
            "system.scheme");
  EXPECT_EQ(path_of(R"({"name": "x", "system": {"scheme": "two-level", "decoherence": {"depop": {"7": 1}}},
      "task": {"kind": "steady"}})"),
            "system.decoherence.depop.7");
  EXPECT_EQ(path_of(R"({"name": "x", "task": {"kind": "milestones", "omega_a": 0.1, "q": [1.5]}})"),
            "task.q");
  EXPECT_EQ(path_of(R"({"name": "x", "task": {"kind": "milestones", "omega_a": 0.1},
      "sweep": {"parameter": "task.q", "values": [1]}})"),
            "sweep.parameter");
  EXPECT_EQ(path_of(R"({"name": "x", "task": {"kind": "milestones", "omega_a": 0.1},
      "output": {"format": "xml"}})"),
            "output.format");
  EXPECT_EQ(path_of(R"({"name": "x", "system": {"scheme": "two-level", "drives": {"a": {"rabi": [1]}}},
      "task": {"kind": "steady"}})"),
            "system.drives.a.rabi");
}

TEST(ScenarioParsing, SweepRewritesTheNamedField) {
  const auto sc = parse_scenario(nlohmann::json::parse(R"({"name": "x",
      "system": {"scheme": "two-level", "atoms": 1, "drives": {"a": {"rabi": 0.1, "detuning": 1}}},
      "task": {"kind": "steady"},
      "sweep": {"parameter": "system.atoms", "values": [1, 2, 3]}})"));
  ASSERT_EQ(sc.points.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(sc.points[static_cast<std::size_t>(i)].system->atom_count, i + 1);
    EXPECT_EQ(sc.points[static_cast<std::size_t>(i)].sweep_value, i + 1.0);
  }
  EXPECT_EQ(sc.sweep_parameter, "system.atoms");
  EXPECT_EQ(sc.kind, TaskKind::Steady);
}

TEST(ScenarioOutput, NumbersRoundTrip) {
  for (double v : {0.1, -2.5e-300, 1.0 / 3.0, 6.02214076e23, -0.0}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(ScenarioOutput, RunPointsMatchesSerialOrder) {
  const auto sc = parse_scenario(nlohmann::json::parse(R"({"name": "k",
      "task": {"kind": "kerr-overlap", "n_a": 1, "n_c": 5, "phi": 1.0,
               "alpha_sq": {"start": 10, "stop": 1e5, "count": 7, "spacing": "log"}},
      "sweep": {"parameter": "task.phi", "values": {"start": 0.2, "stop": 3.2, "count": 13}}})"));
  const Table serial = run_points(sc.points, 1);
  const Table pooled = run_points(sc.points, 6);
  EXPECT_EQ(serial.columns, pooled.columns);
  EXPECT_EQ(serial.rows, pooled.rows);
  EXPECT_EQ(serial.rows.size(), 13u * 7u);
}

}  // namespace
}  // namespace eitsim::cli
