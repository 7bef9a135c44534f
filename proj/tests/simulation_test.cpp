// Copyright 2026 The gsns Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gsns/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <doctest.h>

#include "gsns/log.hpp"
#include "gsns/scenario.hpp"
#include "test_support.hpp"

namespace gsns {
namespace {

Scenario shortened(const std::string& name, double duration) {
  Scenario s = loadScenarioFile(testing::scenarioPath(name));
  s.duration = duration;
  return s;
}

std::string render(const Scenario& s, const std::vector<TickLog>& log) {
  std::ostringstream out;
  writeLog(s, log, out);
  return out.str();
}

std::size_t lineCount(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::size_t expectedColumns(const Scenario& s) {
  std::size_t d = 0;
  for (const auto& c : s.constraints) d += static_cast<std::size_t>(c.dimension());
  return 1 + 2 * static_cast<std::size_t>(s.robot.jointCount()) + 2 * static_cast<std::size_t>(s.task_axes.size()) +
         3 + 2 * d;
}

TEST_CASE("tick count") {
  CHECK(tickCount(0.0, 1e-3) == 0);
  CHECK(tickCount(-1.0, 1e-3) == 0);
  CHECK(tickCount(10.0, 1e-3) == 10000);
  CHECK(tickCount(9.0, 5e-3) == 1800);
  CHECK(tickCount(1e-3, 1e-3) == 1);
  CHECK(tickCount(0.0025, 1e-3) == 2);
}

TEST_CASE("zero duration gives an empty log and a header-only CSV") {
  const Scenario s = shortened("planar6r.scn", 0.0);
  const auto log = run(s);
  CHECK(log.empty());
  const std::string csv = render(s, log);
  CHECK(lineCount(csv) == 1);
  CHECK(csv.rfind("t,q_1,", 0) == 0);
}

TEST_CASE("one tick gives one data row with the documented column count") {
  for (const char* name : {"planar6r.scn", "lwr7r_window.scn"}) {
    const Scenario s = loadScenarioFile(testing::scenarioPath(name));
    Scenario one = s;
    one.duration = s.sample_time;
    const auto log = run(one);
    REQUIRE(log.size() == 1);
    const std::string csv = render(one, log);
    CHECK(lineCount(csv) == 2);
    std::istringstream in(csv);
    const CsvTable table = readCsv(in);
    CHECK(table.header.size() == expectedColumns(s));
    CHECK(table.header == logHeader(s));
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].size() == expectedColumns(s));
    CHECK(table.number(0, "t") == 0.0);
  }
  const Scenario s6 = loadScenarioFile(testing::scenarioPath("planar6r.scn"));
  CHECK(expectedColumns(s6) == 1 + 12 + 4 + 3 + 10);
  const auto header = logHeader(s6);
  CHECK(header[13] == "ee_x");
  CHECK(header[16] == "err_y");
  CHECK(header[17] == "s_star");
  CHECK(header[18] == "status");
  CHECK(header[19] == "sat_tags");
  CHECK(header[20] == "cp_cp1_y");
  CHECK(header[25] == "cpd_cp1_y");
}

TEST_CASE("ticks advance monotonically and integrate the command") {
  const Scenario s = shortened("planar6r.scn", 0.2);
  const auto log = run(s);
  REQUIRE(log.size() == 200);
  CHECK(testing::maxAbs(log[0].q - s.initial_q) == 0.0);
  for (std::size_t k = 1; k < log.size(); ++k) {
    CHECK(log[k].t > log[k - 1].t);
    CHECK(log[k].t == doctest::Approx(static_cast<double>(k) * s.sample_time).epsilon(1e-12));
    CHECK(testing::maxAbs(log[k].q - (log[k - 1].q + s.sample_time * log[k - 1].q_dot)) < 1e-15);
  }
}

TEST_CASE("observer sees the solved system of every tick") {
  const Scenario s = shortened("planar6r.scn", 0.05);
  int calls = 0;
  const auto log = run(s, [&](const TickLog& tick, const TickContext& ctx) {
    ++calls;
    CHECK(ctx.system.rows() == 11);
    CHECK(ctx.task.jacobian.rows() == 2);
    CHECK(testing::maxAbs(ctx.solution.q_dot - tick.q_dot) == 0.0);
  });
  CHECK(calls == static_cast<int>(log.size()));
}

TEST_CASE("CSV round trip within 1e-9 relative") {
  const Scenario s = shortened("lwr7r_window.scn", 0.5);
  const auto log = run(s);
  const std::string csv = render(s, log);
  std::istringstream in(csv);
  const CsvTable table = readCsv(in);
  REQUIRE(table.rows.size() == log.size());
  double worst = 0;
  for (std::size_t k = 0; k < log.size(); ++k) {
    for (Eigen::Index j = 0; j < log[k].q.size(); ++j) {
      const double back = table.number(k, "q_" + std::to_string(j + 1));
      const double orig = log[k].q(j);
      worst = std::max(worst, std::abs(back - orig) / std::max(1.0, std::abs(orig)));
      const double back_v = table.number(k, "qd_" + std::to_string(j + 1));
      worst = std::max(worst, std::abs(back_v - log[k].q_dot(j)) / std::max(1.0, std::abs(log[k].q_dot(j))));
    }
    CHECK(table.rows[k][table.column("status")] == std::string(toString(log[k].status)));
  }
  CHECK(worst < 1e-9);
  CHECK(std::stod(formatNumber(0.1234567891234)) == doctest::Approx(0.1234567891234).epsilon(1e-9));
  CHECK(formatNumber(0.0) == "0");
}

TEST_CASE("saturation tags are joined in record order") {
  const Scenario s = loadScenarioFile(testing::scenarioPath("planar6r.scn"));
  const auto log = run(s);
  bool found = false;
  for (const auto& tick : log) {
    if (tick.saturated.size() > 1) {
      found = true;
      std::istringstream in(render(s, {tick}));
      const CsvTable table = readCsv(in);
      std::string joined;
      for (const auto& tag : tick.saturated) joined += (joined.empty() ? "" : ";") + tag;
      CHECK(table.rows[0][table.column("sat_tags")] == joined);
      break;
    }
  }
  CHECK(found);
}

TEST_CASE("runs are deterministic") {
  const Scenario s = shortened("lwr7r_window.scn", 1.0);
  CHECK(render(s, run(s)) == render(s, run(s)));
}

TEST_CASE("windowed rows only appear inside the window") {
  const Scenario s = loadScenarioFile(testing::scenarioPath("lwr7r_window.scn"));
  const auto& window = *s.constraints[1].window;
  run(s, [&](const TickLog& tick, const TickContext& ctx) {
    const bool inside = tick.t >= window.start && tick.t <= window.end;
    CHECK(ctx.system.rows() == 7 + 2 + (inside ? 1 : 0));
  });
}

TEST_CASE("unwritable output raises an I/O failure") {
  const Scenario s = shortened("planar6r.scn", 0.0);
  CHECK_THROWS_AS(writeLogFile(s, {}, "/nonexistent/dir/out.csv"), std::ios_base::failure);
}

#ifdef GSNS_CLI_PATH
int runCli(const std::string& args) {
  const std::string command = std::string(GSNS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

TEST_CASE("command-line exit codes") {
  const std::string scn = testing::scenarioPath("planar6r.scn");
  const auto tmp = std::filesystem::temp_directory_path() / "gsns_cli_test";
  std::filesystem::create_directories(tmp);
  CHECK(runCli("version") == 0);
  CHECK(runCli("check " + scn) == 0);
  CHECK(runCli("run " + scn + " --duration-override 0.01 --out " + (tmp / "a.csv").string()) == 0);
  CHECK(runCli("run " + scn + " --duration-override 0.01 --seed 7 --out " + (tmp / "b.csv").string()) == 0);
  CHECK(runCli("run " + scn + " --duration-override 0.01 --seed 7 --out " + (tmp / "c.csv").string()) == 0);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(tmp / "b.csv") == slurp(tmp / "c.csv"));
  CHECK(slurp(tmp / "a.csv") != slurp(tmp / "b.csv"));
  CHECK(lineCount(slurp(tmp / "a.csv")) == 11);

  std::ofstream(tmp / "bad.scn") << "sample_time = -1\nduration = 1\n";
  CHECK(runCli("check " + (tmp / "bad.scn").string()) == 1);
  CHECK(runCli("run " + scn + " --duration-override -1") == 1);
  CHECK(runCli("frobnicate") == 1);
  CHECK(runCli("check /nonexistent/none.scn") == 3);
  CHECK(runCli("run " + scn + " --duration-override 0.01 --out /nonexistent/dir/out.csv") == 3);

  std::ofstream(tmp / "cap.scn") << slurp(scn) << "\n[solver]\niteration_cap_multiplier = 1\n";
  CHECK(runCli("check " + (tmp / "cap.scn").string()) == 0);

  std::ofstream(tmp / "toy.inst") << "jacobian = 1 0\nx_dot = 1\na = 1 0; 0 1\nb_min = -0.4 -1\nb_max = 0.4 1\n";
  CHECK(runCli("oracle " + (tmp / "toy.inst").string()) == 0);
  std::filesystem::remove_all(tmp);
}
#endif

}  // namespace
}  // namespace gsns
