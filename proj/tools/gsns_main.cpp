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

// Command-line front end: run, check, oracle, version.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "gsns/log.hpp"
#include "gsns/oracle.hpp"
#include "gsns/scenario.hpp"
#include "gsns/simulation.hpp"
#include "gsns/version.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kDivergence = 2, kIo = 3 };

// Perturbs the initial configuration by up to 1e-3 rad per joint, staying
// inside the joint position limits.
void jitterInitialState(gsns::Scenario& scenario, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
  auto& q = scenario.initial_q;
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    q(j) = std::clamp(q(j) + noise(rng), scenario.joint_limits.q_min(j), scenario.joint_limits.q_max(j));
  }
}

int runCommand(const std::string& path, const std::string& out_path,
               std::optional<double> duration, std::optional<unsigned long long> seed) {
  gsns::Scenario scenario = gsns::loadScenarioFile(path);
  if (duration) {
    if (!(*duration >= 0)) throw std::invalid_argument("--duration-override must be non-negative");
    scenario.duration = *duration;
  }
  if (seed) jitterInitialState(scenario, *seed);
  const auto log = gsns::run(scenario);
  if (out_path.empty() || out_path == "-") {
    gsns::writeLog(scenario, log, std::cout);
  } else {
    gsns::writeLogFile(scenario, log, out_path);
    std::cerr << scenario.name << ": " << log.size() << " ticks written to " << out_path << '\n';
  }
  return kOk;
}

int checkCommand(const std::string& path) {
  const gsns::Scenario scenario = gsns::loadScenarioFile(path);
  std::cout << path << ": ok (" << scenario.robot.jointCount() << " joints, "
            << scenario.constraints.size() << " constraints, "
            << gsns::tickCount(scenario.duration, scenario.sample_time) << " ticks)\n";
  return kOk;
}

int oracleCommand(const std::string& path) {
  const gsns::SingleTickInstance inst = gsns::loadInstanceFile(path);
  const auto sol = gsns::snsSolve(inst.task, inst.system, inst.solver);
  const gsns::OracleVerdict verdict = gsns::oracleSolve(inst.task, inst.system);

  const Eigen::IOFormat row_format(Eigen::FullPrecision, Eigen::DontAlignCols, " ", " ", "", "", "", "");
  std::cout << "sns.status = " << gsns::toString(sol.status) << '\n'
            << "sns.scale = " << gsns::formatNumber(sol.scale) << '\n'
            << "sns.q_dot = " << sol.q_dot.transpose().format(row_format) << '\n'
            << "oracle.feasible_exact = " << (verdict.feasible_exact ? "true" : "false") << '\n'
            << "oracle.best_scale = " << gsns::formatNumber(verdict.best_scale) << '\n';
  if (verdict.witness.size() > 0) {
    std::cout << "oracle.witness = " << verdict.witness.transpose().format(row_format) << '\n';
  }
  const bool sns_exact = sol.scale == 1;
  std::cout << "agree = " << (sns_exact == verdict.feasible_exact ? "true" : "false") << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Velocity-level inverse kinematics with hard limits (SNS)"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::optional<double> duration;
  std::optional<unsigned long long> seed;
  auto* run = app.add_subcommand("run", "Simulate a scenario and write the CSV log");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_path, "CSV destination (default: stdout)");
  run->add_option("--duration-override", duration, "Simulated time in seconds");
  run->add_option("--seed", seed, "Perturb the initial configuration with this seed");

  std::string check_path;
  auto* check = app.add_subcommand("check", "Validate a scenario file");
  check->add_option("scenario", check_path, "Scenario file")->required();

  std::string instance_path;
  auto* oracle = app.add_subcommand("oracle", "Compare SNS with the exhaustive oracle on one tick");
  oracle->add_option("instance", instance_path, "Instance file")->required();

  auto* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*run) return runCommand(scenario_path, out_path, duration, seed);
    if (*check) return checkCommand(check_path);
    if (*oracle) return oracleCommand(instance_path);
    if (*version) {
      std::cout << "gsns " << gsns::kVersion << '\n';
      return kOk;
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const gsns::SimulationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDivergence;
  } catch (const gsns::SolverDivergence<double>& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}
