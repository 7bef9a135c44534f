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

#ifndef GSNS_SCENARIO_HPP_
#define GSNS_SCENARIO_HPP_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gsns/constraints.hpp"
#include "gsns/document.hpp"
#include "gsns/kinematics.hpp"
#include "gsns/solver.hpp"
#include "gsns/trajectory.hpp"

namespace gsns {

/// Everything needed to simulate one closed-loop run.
struct Scenario {
  std::string name;
  RobotModel<double> robot;
  AxisSelector task_axes = AxisSelector::xyz();
  Eigen::VectorXd initial_q;
  JointLimits<double> joint_limits;
  std::vector<CartesianConstraint<double>> constraints;
  PathSpec<double> path;
  TimingLaw<double> timing;
  FeedbackLaw<double> feedback;
  double sample_time = 1e-3;
  double duration = 1.0;
  SolverSettings<double> solver;
};

/// Parses and validates a scenario document. Every error carries the line
/// of the offending entry (or of its section when a key is missing).
Scenario loadScenario(std::string_view text, std::string source = "<scenario>");
Scenario loadScenarioFile(const std::string& path);

/// Structural checks shared by the loader and by programmatic callers.
/// Throws std::invalid_argument naming the offending field.
void validateScenario(const Scenario& scenario);

/// Copy of `scenario` with every position, velocity and acceleration limit
/// (joint and Cartesian) moved `factor` times further from zero.
Scenario widenLimits(const Scenario& scenario, double factor);

/// A single control tick: task plus augmented system, as read from an
/// instance document (see README for the keys).
struct SingleTickInstance {
  TaskRef<double> task;
  AugmentedSystem<double> system;
  SolverSettings<double> solver;
};

SingleTickInstance loadInstance(std::string_view text, std::string source = "<instance>");
SingleTickInstance loadInstanceFile(const std::string& path);

}  // namespace gsns

#endif  // GSNS_SCENARIO_HPP_
