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

#ifndef GSNS_SIMULATION_HPP_
#define GSNS_SIMULATION_HPP_

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsns/scenario.hpp"
#include "gsns/solver.hpp"

namespace gsns {

/// State and command of one control tick. Control-point columns cover every
/// constraint of the scenario (active or not), each over its own axes.
struct TickLog {
  double t = 0;
  Eigen::VectorXd q;
  Eigen::VectorXd q_dot;
  Eigen::VectorXd ee_pos;  // task axes
  Eigen::VectorXd ee_err;  // desired minus actual, task axes
  double s_star = 1;
  SolveStatus status = SolveStatus::kExact;
  std::vector<std::string> saturated;  // row tags from the saturation record
  Eigen::VectorXd cp_pos;
  Eigen::VectorXd cp_vel;
  int iterations = 0;
};

/// Solver divergence at a given tick.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, long tick, double t)
      : std::runtime_error(what), tick_(tick), t_(t) {}
  long tick() const { return tick_; }
  double time() const { return t_; }

 private:
  long tick_;
  double t_;
};

/// Per-tick hook, called with the command before integration. Used by the
/// acceptance suite to compare against reference commands.
struct TickContext {
  const TaskRef<double>& task;
  const AugmentedSystem<double>& system;
  const SnsSolution<double>& solution;
};
using TickObserver = std::function<void(const TickLog&, const TickContext&)>;

/// Number of ticks simulated for `duration` at `sample_time`.
long tickCount(double duration, double sample_time);

/// Closed loop: reference, augmented box, SNS command, explicit Euler step.
std::vector<TickLog> run(const Scenario& scenario, const TickObserver& observer = {});

}  // namespace gsns

#endif  // GSNS_SIMULATION_HPP_
