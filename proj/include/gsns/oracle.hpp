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

// Brute-force reference for small single-tick instances. It enumerates
// active sets of the velocity box and shares no numerical code with the
// null-space solver, so the two can be checked against each other.

#ifndef GSNS_ORACLE_HPP_
#define GSNS_ORACLE_HPP_

#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "gsns/constraints.hpp"
#include "gsns/solver.hpp"

namespace gsns {

struct OracleVerdict {
  /// Some qdot inside the box realizes J qdot = xdot.
  bool feasible_exact = false;
  /// Largest s in [0, 1] (to within the bisection tolerance) for which
  /// J qdot = s xdot is realizable inside the box.
  double best_scale = 0;
  /// Realizes best_scale; empty when not even s = 0 is feasible.
  Eigen::VectorXd witness;
};

struct OracleOptions {
  Eigen::Index max_joints = 6;
  Eigen::Index max_rows = 12;
  double tolerance = 1e-9;        // equality residual and box slack for witnesses
  double bisection_tolerance = 1e-6;
};

class OracleBudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A point with J qdot = scale * xdot inside the box, if one exists.
std::optional<Eigen::VectorXd> oracleFeasiblePoint(const TaskRef<double>& task,
                                                   const AugmentedSystem<double>& sys, double scale,
                                                   const OracleOptions& options = {});

OracleVerdict oracleSolve(const TaskRef<double>& task, const AugmentedSystem<double>& sys,
                          const OracleOptions& options = {});

}  // namespace gsns

#endif  // GSNS_ORACLE_HPP_
