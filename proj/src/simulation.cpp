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

#include "gsns/constraints.hpp"
#include "gsns/kinematics.hpp"
#include "gsns/trajectory.hpp"

namespace gsns {

long tickCount(double duration, double sample_time) {
  if (!(duration > 0)) return 0;
  return static_cast<long>(std::floor(duration / sample_time + 1e-9));
}

std::vector<TickLog> run(const Scenario& scenario, const TickObserver& observer) {
  const long ticks = tickCount(scenario.duration, scenario.sample_time);
  const double dt = scenario.sample_time;
  const RobotModel<double>& robot = scenario.robot;

  Eigen::Index cp_rows = 0;
  for (const auto& c : scenario.constraints) cp_rows += c.dimension();

  std::vector<TickLog> log;
  log.reserve(static_cast<std::size_t>(ticks));
  Eigen::VectorXd q = scenario.initial_q;
  for (long k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * dt;
    const TaskSample<double> sample = sampleTask(scenario.path, scenario.timing, scenario.feedback, q,
                                                 robot, scenario.task_axes, t);
    const TaskRef<double> task{sample.x_dot, jacobian(robot, q, robot.endEffector(), scenario.task_axes)};
    const AugmentedSystem<double> sys =
        buildAugmented(robot, q, scenario.joint_limits, scenario.constraints, t, dt);

    SnsSolution<double> sol;
    try {
      sol = snsSolve(task, sys, scenario.solver);
    } catch (const SolverDivergence<double>& err) {
      throw SimulationError(std::string(err.what()) + " at tick " + std::to_string(k) + " (t = " +
                                std::to_string(t) + " s)",
                            k, t);
    }

    TickLog rec;
    rec.t = t;
    rec.q = q;
    rec.q_dot = sol.q_dot;
    rec.ee_pos = sample.x_actual;
    rec.ee_err = sample.x_desired - sample.x_actual;
    rec.s_star = sol.scale;
    rec.status = sol.status;
    rec.iterations = sol.iterations;
    for (const auto& entry : sol.saturations) rec.saturated.push_back(entry.tag.str());
    rec.cp_pos.resize(cp_rows);
    rec.cp_vel.resize(cp_rows);
    Eigen::Index row = 0;
    for (const auto& c : scenario.constraints) {
      const Eigen::Index d = c.dimension();
      rec.cp_pos.segment(row, d) = forwardPosition(robot, q, c.point, c.axes);
      rec.cp_vel.segment(row, d) = jacobian(robot, q, c.point, c.axes) * sol.q_dot;
      row += d;
    }
    if (observer) observer(rec, TickContext{task, sys, sol});

    q += dt * sol.q_dot;
    log.push_back(std::move(rec));
  }
  return log;
}

}  // namespace gsns
