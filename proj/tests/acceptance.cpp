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

// Acceptance checks for the bundled scenarios and the solver. Prints one
// PASS or FAIL line per criterion and exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsns/kinematics.hpp"
#include "gsns/linalg.hpp"
#include "gsns/log.hpp"
#include "gsns/oracle.hpp"
#include "gsns/scenario.hpp"
#include "gsns/simulation.hpp"
#include "gsns/solver.hpp"
#include "test_support.hpp"

namespace gsns {
namespace {

using Clock = std::chrono::steady_clock;
using testing::maxAbs;
using testing::Rng;

int g_failures = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

bool hasFullScale(const TickLog& tick) {
  return tick.status == SolveStatus::kExact || tick.status == SolveStatus::kTaskSaturated;
}

void planarReproduction() {
  const Scenario s = loadScenarioFile(testing::scenarioPath("planar6r.scn"));
  const auto start = Clock::now();
  const auto log = run(s);
  const double elapsed = seconds(start);

  double q_excess = 0, v_excess = 0, p_excess = 0, pv_excess = 0, err_max = 0;
  int scaled_ticks = 0, scaled_without_record = 0, intervals = 0;
  bool previous_scaled = false;
  for (const auto& tick : log) {
    q_excess = std::max({q_excess, (tick.q - s.joint_limits.q_max).maxCoeff(),
                         (s.joint_limits.q_min - tick.q).maxCoeff()});
    v_excess = std::max({v_excess, (tick.q_dot - s.joint_limits.v_max).maxCoeff(),
                         (s.joint_limits.v_min - tick.q_dot).maxCoeff()});
    Eigen::Index row = 0;
    for (const auto& c : s.constraints) {
      for (Eigen::Index i = 0; i < c.dimension(); ++i, ++row) {
        p_excess = std::max({p_excess, tick.cp_pos(row) - c.p_max(i), c.p_min(i) - tick.cp_pos(row)});
        pv_excess = std::max({pv_excess, tick.cp_vel(row) - c.v_max(i), c.v_min(i) - tick.cp_vel(row)});
      }
    }
    if (hasFullScale(tick) && tick.t > 0.5) err_max = std::max(err_max, tick.ee_err.norm());
    const bool scaled = tick.s_star < 1;
    if (scaled) {
      ++scaled_ticks;
      if (tick.saturated.empty()) ++scaled_without_record;
      if (!previous_scaled) ++intervals;
    }
    previous_scaled = scaled;
  }
  report(log.size() == 10000 && elapsed < 60.0, "planar6r runtime",
         fmt("%zu ticks in %.3f s (limit 60 s)", log.size(), elapsed));
  report(q_excess <= 1e-6 && v_excess <= 1e-8 && p_excess <= 1e-4 && pv_excess <= 1e-8, "planar6r hard limits",
         fmt("max excess: q %.3g rad (tol 1e-6), qd %.3g rad/s (tol 1e-8), cp y %.3g m (tol 1e-4), cp ydot %.3g "
             "m/s (tol 1e-8)",
             q_excess, v_excess, p_excess, pv_excess));
  report(err_max < 1e-3, "planar6r tracking error",
         fmt("max |e| over s* = 1 ticks after 0.5 s: %.3g m (limit 1e-3)", err_max));
  report(intervals >= 1 && scaled_without_record == 0, "planar6r scaling interval",
         fmt("%d interval(s), %d scaled ticks, %d scaled ticks without saturations", intervals, scaled_ticks,
             scaled_without_record));
}

void unconstrainedEquivalence() {
  const Scenario s = widenLimits(loadScenarioFile(testing::scenarioPath("planar6r.scn")), 100.0);
  double worst = 0;
  int not_full = 0;
  const auto log = run(s, [&](const TickLog& tick, const TickContext& ctx) {
    if (tick.s_star != 1.0) ++not_full;
    const Eigen::VectorXd reference = pseudoInverse(ctx.task.jacobian) * ctx.task.x_dot;
    worst = std::max(worst, maxAbs(tick.q_dot - reference));
  });
  report(not_full == 0 && worst <= 1e-10, "unconstrained equivalence",
         fmt("%zu ticks, %d with s* < 1, max |qd - J# xd| = %.3g (limit 1e-10)", log.size(), not_full, worst));
}

void oracleSweep() {
  const auto start = Clock::now();
  Rng rng(20261017);
  const int instances = 1000;
  int verdict_mismatch = 0, missed_exact = 0, false_exact = 0, scale_over = 0, infeasible = 0, scaled = 0;
  double gap_sum = 0;
  for (int trial = 0; trial < instances; ++trial) {
    const int n = testing::uniformInt(rng, 2, 4);
    const int m = testing::uniformInt(rng, 1, n - 1);
    const int extra = testing::uniformInt(rng, 0, 8 - n);
    const TaskRef<double> task{testing::randomVector(rng, m, -1, 1) * testing::uniform(rng, 0.1, 4.0),
                               testing::randomMatrix(rng, m, n)};
    Eigen::MatrixXd a(n + extra, n);
    a.topRows(n).setIdentity();
    a.bottomRows(extra) = testing::randomMatrix(rng, extra, n);
    const auto sys = makeAugmentedSystem<double>(a, testing::randomVector(rng, n + extra, -1, -0.05),
                                                 testing::randomVector(rng, n + extra, 0.05, 1));
    const auto sol = snsSolve(task, sys);
    const OracleVerdict verdict = oracleSolve(task, sys);

    const bool sns_exact = sol.status == SolveStatus::kExact || sol.status == SolveStatus::kTaskSaturated;
    if (sns_exact != verdict.feasible_exact) {
      ++verdict_mismatch;
      (sns_exact ? false_exact : missed_exact) += 1;
    }
    if (sol.status == SolveStatus::kScaled || sol.status == SolveStatus::kBlocked) {
      ++scaled;
      if (sol.scale > verdict.best_scale + 1e-6) ++scale_over;
      gap_sum += verdict.best_scale - sol.scale;
    }
    const Eigen::VectorXd ad = sys.a * sol.q_dot;
    if (((ad - sys.b_max).array() > 1e-8).any() || ((sys.b_min - ad).array() > 1e-8).any()) ++infeasible;
  }
  const double elapsed = seconds(start);
  report(verdict_mismatch == 0, "oracle sweep feasibility verdict",
         fmt("%d/%d instances match (%.2f%%); solver scaled where the oracle found an exact solution in %d, "
             "solver exact where the oracle found none in %d",
             instances - verdict_mismatch, instances, 100.0 * (instances - verdict_mismatch) / instances,
             missed_exact, false_exact));
  report(scale_over == 0, "oracle sweep scale bound",
         fmt("%d/%d scaled outcomes exceed best_scale + 1e-6; mean gap below the oracle %.3g", scale_over, scaled,
             scaled ? gap_sum / scaled : 0.0));
  report(infeasible == 0, "oracle sweep box feasibility", fmt("%d/%d solutions outside the box by > 1e-8", infeasible, instances));
  report(elapsed < 300.0, "oracle sweep runtime", fmt("%.2f s for %d instances (limit 300 s)", elapsed, instances));
}

void scalingFactorProperties() {
  Rng rng(2);
  std::set<ScalingBranch> branches;
  int out_of_range = 0, critical_violations = 0;
  const int triples = 10000;
  for (int trial = 0; trial < triples; ++trial) {
    const double lo = testing::uniform(rng, -2, 0);
    const double hi = testing::uniform(rng, 0, 2);
    // Bias inside the box, sometimes on a bound; direction sometimes zero.
    double beta = testing::uniform(rng, lo, hi);
    const int pick = testing::uniformInt(rng, 0, 19);
    if (pick == 0) beta = lo;
    if (pick == 1) beta = hi;
    const double alpha = pick == 2 ? 0.0 : testing::uniform(rng, -4, 4);
    const auto r = rowScalingFactor(alpha, beta, lo, hi);
    branches.insert(r.branch);
    if (!(r.s >= 0 && r.s <= 1)) ++out_of_range;
    if (r.s > 0) {
      const double v = r.s * alpha + beta;
      if (v < lo - 1e-12 || v > hi + 1e-12) ++critical_violations;
    }
  }
  report(out_of_range == 0 && critical_violations == 0 && branches.size() == 5, "scaling factor properties",
         fmt("%d triples: %d with s outside [0, 1], %d critical rows outside the box by > 1e-12, %zu/5 branches",
             triples, out_of_range, critical_violations, branches.size()));
}

Eigen::MatrixXd randomRankDeficient(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  const Eigen::Index rank = testing::uniformInt(rng, 1, static_cast<int>(std::min(rows, cols)));
  return testing::randomMatrix(rng, rows, rank) * testing::randomMatrix(rng, rank, cols);
}

void numericalKernels() {
  Rng rng(3);
  double penrose = 0, projector = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index rows = testing::uniformInt(rng, 1, 12);
    const Eigen::Index cols = testing::uniformInt(rng, 1, 12);
    const Eigen::MatrixXd m = trial % 2 ? testing::randomMatrix(rng, rows, cols) : randomRankDeficient(rng, rows, cols);
    const Eigen::MatrixXd p = pseudoInverse(m);
    penrose = std::max({penrose, maxAbs(m * p * m - m), maxAbs(p * m * p - p),
                        maxAbs((m * p).transpose() - m * p), maxAbs((p * m).transpose() - p * m)});
    const Eigen::MatrixXd proj = nullSpaceProjector(m);
    projector = std::max({projector, maxAbs(proj * proj - proj), maxAbs(proj.transpose() - proj), maxAbs(m * proj)});
  }
  report(penrose < 1e-8, "pseudoinverse Penrose conditions", fmt("1000 matrices up to 12x12, max residual %.3g (limit 1e-8)", penrose));
  report(projector < 1e-8, "null-space projector", fmt("max idempotence/symmetry/annihilation residual %.3g (limit 1e-8)", projector));

  for (const char* name : {"planar6r.scn", "lwr7r_window.scn"}) {
    const Scenario s = loadScenarioFile(testing::scenarioPath(name));
    const auto& model = s.robot;
    const Eigen::Index n = model.jointCount();
    std::vector<FramePoint<double>> points{model.endEffector()};
    for (const auto& c : s.constraints) points.push_back(c.point);
    const double h = 1e-6;
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd q(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        q(j) = testing::uniform(rng, s.joint_limits.q_min(j), s.joint_limits.q_max(j));
      }
      for (const auto& point : points) {
        const Eigen::MatrixXd jac = jacobian(model, q, point, AxisSelector::xyz());
        for (Eigen::Index j = 0; j < n; ++j) {
          Eigen::VectorXd qp = q, qm = q;
          qp(j) += h;
          qm(j) -= h;
          const Eigen::VectorXd fd = (forwardPosition(model, qp, point, AxisSelector::xyz()) -
                                      forwardPosition(model, qm, point, AxisSelector::xyz())) /
                                     (2 * h);
          worst = std::max(worst, maxAbs(fd - jac.col(j)));
        }
      }
    }
    report(worst < 1e-5, std::string("Jacobian vs finite differences (") + s.name + ")",
           fmt("100 configurations, %zu points, max deviation %.3g (limit 1e-5)", points.size(), worst));
  }
}

void windowScenario() {
  const Scenario s = loadScenarioFile(testing::scenarioPath("lwr7r_window.scn"));
  const CartesianConstraint<double>* window = nullptr;
  for (const auto& c : s.constraints) {
    if (c.window) window = &c;
  }
  if (window == nullptr) {
    report(false, "lwr7r window", "scenario has no windowed constraint");
    return;
  }
  const Eigen::Index axis = 0;
  const Axis limited = window->axes[axis];
  double excess = -1e9, orth_err = 0;
  int inside = 0, limited_ticks = 0;
  run(s, [&](const TickLog& tick, const TickContext& ctx) {
    if (!window->activeAt(tick.t)) return;
    ++inside;
    const Eigen::Vector3d p = pointPosition(s.robot, tick.q, window->point);
    excess = std::max(excess, p(static_cast<int>(limited)) - window->p_max(axis));
    if (!ctx.solution.saturations.empty()) ++limited_ticks;
    for (Eigen::Index i = 0; i < s.task_axes.size(); ++i) {
      if (s.task_axes[i] != limited) orth_err = std::max(orth_err, std::abs(tick.ee_err(i)));
    }
  });
  report(inside > 0 && excess <= 1e-4, "lwr7r window bound",
         fmt("%d ticks in the window, max %c - limit = %.3g m (tol 1e-4)", inside, axisName(limited), excess));
  report(inside > 0 && orth_err < 5e-3, "lwr7r orthogonal tracking",
         fmt("max |error| on the other task axes inside the window %.3g m (limit 5e-3), %d ticks with saturations",
             orth_err, limited_ticks));
}

void determinism() {
  for (const char* name : {"planar6r.scn", "lwr7r_window.scn"}) {
    const Scenario s = loadScenarioFile(testing::scenarioPath(name));
    std::ostringstream a, b;
    writeLog(s, run(s), a);
    writeLog(s, run(s), b);
    report(a.str() == b.str(), std::string("determinism (") + s.name + ")",
           fmt("two runs, %zu bytes each, %s", a.str().size(), a.str() == b.str() ? "identical" : "different"));
  }
}

}  // namespace
}  // namespace gsns

int main() {
  gsns::planarReproduction();
  gsns::unconstrainedEquivalence();
  gsns::oracleSweep();
  gsns::scalingFactorProperties();
  gsns::numericalKernels();
  gsns::windowScenario();
  gsns::determinism();
  std::printf("%d criterion check(s) failed\n", gsns::g_failures);
  return gsns::g_failures == 0 ? 0 : 1;
}
