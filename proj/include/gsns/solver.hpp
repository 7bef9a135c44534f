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

// Saturation in the null space over a generalized velocity box.
//
// One velocity task  J qdot = xdot  is executed subject to
//   b_min <= A qdot <= b_max,
// where A stacks the identity (joint rows) and control-point Jacobians
// (Cartesian rows). Each iteration saturates the single most critical row
// and re-solves the task in the null space of everything saturated so far.
// When redundancy runs out, the best scaled command seen so far is returned;
// it realizes s * xdot with the largest s observed.

#ifndef GSNS_SOLVER_HPP_
#define GSNS_SOLVER_HPP_

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gsns/constraints.hpp"
#include "gsns/linalg.hpp"

namespace gsns {

template <typename Scalar>
struct TaskRef {
  VectorX<Scalar> x_dot;     // m
  MatrixX<Scalar> jacobian;  // m x n
};

enum class SolveStatus {
  kExact,          // task met exactly, all rows inside the box
  kTaskSaturated,  // a task-coincident row was saturated; other components exact
  kScaled,         // task executed as s * xdot with 0 < s < 1
  kBlocked,        // no positive scale certified; safest feasible command
};

inline std::string_view toString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kExact: return "exact";
    case SolveStatus::kTaskSaturated: return "task_saturated";
    case SolveStatus::kScaled: return "scaled";
    case SolveStatus::kBlocked: return "blocked";
  }
  return "unknown";
}

enum class BoundSide { kMin, kMax };

template <typename Scalar>
struct SaturationEntry {
  Eigen::Index row = 0;
  RowTag tag;
  BoundSide side = BoundSide::kMax;
  Scalar value = 0;
};

template <typename Scalar>
using SaturationRecord = std::vector<SaturationEntry<Scalar>>;

template <typename Scalar>
struct SnsSolution {
  VectorX<Scalar> q_dot;
  Scalar scale = 0;
  /// Every row saturated during the solve, in saturation order.
  SaturationRecord<Scalar> saturations;
  /// Length of the prefix of `saturations` held by `q_dot`. Equal to the
  /// full record unless the command came from the rank fallback.
  std::size_t applied_saturations = 0;
  SolveStatus status = SolveStatus::kExact;
  int iterations = 0;
};

/// The five code paths of the per-row scaling rule.
enum class ScalingBranch {
  kLowerClipped,  // alpha < 0, L < 0, alpha < L : s = L / alpha
  kLowerFree,     // alpha < 0, L < 0, alpha >= L: s = 1
  kUpperClipped,  // alpha > 0, U > 0, alpha > U : s = U / alpha
  kUpperFree,     // alpha > 0, U > 0, alpha <= U: s = 1
  kBlocked,       // anything else: s = 0
};

template <typename Scalar>
struct RowScaling {
  Scalar s = 0;
  ScalingBranch branch = ScalingBranch::kBlocked;
};

template <typename Scalar>
struct ScalingResult {
  Scalar s = 1;
  Eigen::Index critical_row = -1;  // -1 only for empty input
  VectorX<Scalar> per_row_s;
  std::vector<ScalingBranch> branches;
};

template <typename Scalar>
struct SolverSettings {
  Scalar rel_tol = Scalar(kDefaultRelTol);
  Scalar epsilon = Scalar(1e-8);  // absolute slack on box membership
  int iteration_cap_multiplier = 2;
};

template <typename Scalar>
class SolverDivergence : public std::runtime_error {
 public:
  SolverDivergence(const std::string& what, SnsSolution<Scalar> fallback)
      : std::runtime_error(what), fallback_(std::move(fallback)) {}
  const SnsSolution<Scalar>& fallback() const { return fallback_; }

 private:
  SnsSolution<Scalar> fallback_;
};

class SingularTask : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Largest s such that s * alpha + beta stays inside [lo, hi], following the
/// scaling rule literally. Note the rule yields 0 for alpha == 0 even when
/// beta is strictly inside the box.
template <typename Scalar>
RowScaling<Scalar> rowScalingFactor(Scalar alpha, Scalar beta, Scalar lo, Scalar hi) {
  const Scalar lower = lo - beta;
  const Scalar upper = hi - beta;
  if (alpha < 0 && lower < 0) {
    if (alpha < lower) return {lower / alpha, ScalingBranch::kLowerClipped};
    return {Scalar(1), ScalingBranch::kLowerFree};
  }
  if (alpha > 0 && upper > 0) {
    if (alpha > upper) return {upper / alpha, ScalingBranch::kUpperClipped};
    return {Scalar(1), ScalingBranch::kUpperFree};
  }
  return {Scalar(0), ScalingBranch::kBlocked};
}

/// Per-row scaling factors and their minimum. Ties go to the lowest row.
template <typename Scalar>
ScalingResult<Scalar> taskScalingFactor(const VectorX<Scalar>& alpha, const VectorX<Scalar>& beta,
                                        const VectorX<Scalar>& b_min, const VectorX<Scalar>& b_max) {
  const Eigen::Index rows = alpha.size();
  if (beta.size() != rows || b_min.size() != rows || b_max.size() != rows) {
    throw std::invalid_argument("taskScalingFactor: length mismatch");
  }
  ScalingResult<Scalar> result;
  result.per_row_s.resize(rows);
  result.branches.resize(static_cast<std::size_t>(rows));
  for (Eigen::Index h = 0; h < rows; ++h) {
    const RowScaling<Scalar> r = rowScalingFactor(alpha(h), beta(h), b_min(h), b_max(h));
    result.per_row_s(h) = r.s;
    result.branches[static_cast<std::size_t>(h)] = r.branch;
    if (result.critical_row < 0 || r.s < result.s) {
      result.s = r.s;
      result.critical_row = h;
    }
  }
  return result;
}

/// xdot mapped through J^#; requires J to have full row rank.
template <typename Scalar>
VectorX<Scalar> minNormSolution(const TaskRef<Scalar>& task,
                                Scalar rel_tol = Scalar(kDefaultRelTol)) {
  if (task.x_dot.size() != task.jacobian.rows()) {
    throw std::invalid_argument("minNormSolution: task velocity does not match the Jacobian");
  }
  if (numericalRank(task.jacobian, rel_tol) < task.jacobian.rows()) {
    throw SingularTask("minNormSolution: task Jacobian is rank deficient");
  }
  return pseudoInverse(task.jacobian, rel_tol) * task.x_dot;
}

namespace internal {

template <typename Scalar>
bool insideBox(Scalar value, Scalar lo, Scalar hi, Scalar eps) {
  return value >= lo - eps && value <= hi + eps;
}

}  // namespace internal

template <typename Scalar>
SnsSolution<Scalar> snsSolve(const TaskRef<Scalar>& task, const AugmentedSystem<Scalar>& sys,
                             const SolverSettings<Scalar>& settings = {}) {
  const MatrixX<Scalar>& jac = task.jacobian;
  const VectorX<Scalar>& x_dot = task.x_dot;
  const Eigen::Index m = jac.rows();
  const Eigen::Index n = jac.cols();
  const Eigen::Index rows = sys.rows();
  if (x_dot.size() != m) throw std::invalid_argument("snsSolve: task velocity does not match the Jacobian");
  if (sys.cols() != n) throw std::invalid_argument("snsSolve: augmented matrix has the wrong column count");
  if (sys.b_min.size() != rows || sys.b_max.size() != rows ||
      static_cast<Eigen::Index>(sys.row_tags.size()) != rows) {
    throw std::invalid_argument("snsSolve: box or row tags do not match the augmented matrix");
  }
  if (!jac.allFinite() || !x_dot.allFinite() || !sys.a.allFinite()) {
    throw std::invalid_argument("snsSolve: non-finite input");
  }

  const Scalar tol = settings.rel_tol;
  const Scalar eps = settings.epsilon;
  const Scalar jac_scale = spectralNorm(jac);
  const long max_iter = static_cast<long>(settings.iteration_cap_multiplier) *
                        std::max<long>(1, static_cast<long>(rows));

  VectorX<Scalar> q_dot_null = VectorX<Scalar>::Zero(n);
  MatrixX<Scalar> projector = MatrixX<Scalar>::Identity(n, n);
  MatrixX<Scalar> a_lim(0, n);
  VectorX<Scalar> a_dot_null(0);
  std::vector<bool> saturated(static_cast<std::size_t>(rows), false);
  bool task_row_saturated = false;

  Scalar best_scale = 0;
  VectorX<Scalar> best_q_dot_null = q_dot_null;
  MatrixX<Scalar> best_projector = projector;
  std::size_t best_prefix = 0;

  SnsSolution<Scalar> out;

  auto fallback = [&](int iterations) {
    SnsSolution<Scalar> sol;
    sol.iterations = iterations;
    sol.saturations = out.saturations;
    sol.applied_saturations = best_prefix;
    if (best_scale > 0) {
      const MatrixX<Scalar> jp = jac * best_projector;
      sol.q_dot = best_q_dot_null +
                  pseudoInverse(jp, tol, jac_scale) * (best_scale * x_dot - jac * best_q_dot_null);
      sol.scale = best_scale;
      sol.status = SolveStatus::kScaled;
    } else {
      sol.q_dot = best_q_dot_null;
      sol.scale = 0;
      sol.status = SolveStatus::kBlocked;
    }
    return sol;
  };

  for (long iter = 1; iter <= max_iter; ++iter) {
    const int iterations = static_cast<int>(iter);
    const MatrixX<Scalar> jp = a_lim.rows() == 0 ? jac : MatrixX<Scalar>(jac * projector);
    const MatrixX<Scalar> jp_pinv = pseudoInverse(jp, tol, jac_scale);
    const VectorX<Scalar> q_dot = q_dot_null + jp_pinv * (x_dot - jac * q_dot_null);
    const VectorX<Scalar> a_dot = sys.a * q_dot;

    bool violated = false;
    for (Eigen::Index h = 0; h < rows && !violated; ++h) {
      violated = !internal::insideBox(a_dot(h), sys.b_min(h), sys.b_max(h), eps);
    }
    if (!violated) {
      out.q_dot = q_dot;
      out.scale = 1;
      out.applied_saturations = out.saturations.size();
      out.status = task_row_saturated ? SolveStatus::kTaskSaturated : SolveStatus::kExact;
      out.iterations = iterations;
      return out;
    }

    const VectorX<Scalar> alpha = sys.a * (jp_pinv * x_dot);
    const VectorX<Scalar> beta = a_dot - alpha;

    // Scaling is evaluated over free rows only: saturated rows are held at
    // their bound by construction. Two adjustments keep the recorded scale
    // certifiable: a row the task does not move (alpha ~ 0) with its bias in
    // the box never limits the scale, and a row whose bias already leaves
    // the box cannot certify any positive scale.
    Scalar iter_scale = 1;
    Eigen::Index critical = -1;
    Scalar critical_s = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index h = 0; h < rows; ++h) {
      if (saturated[static_cast<std::size_t>(h)]) continue;
      const Scalar lo = sys.b_min(h);
      const Scalar hi = sys.b_max(h);
      Scalar s_h;
      if (!internal::insideBox(beta(h), lo, hi, eps)) {
        s_h = 0;
      } else if (std::abs(alpha(h)) <= eps) {
        s_h = 1;
      } else {
        s_h = rowScalingFactor(alpha(h), beta(h), lo, hi).s;
      }
      iter_scale = std::min(iter_scale, s_h);
      if (!internal::insideBox(a_dot(h), lo, hi, eps) && s_h < critical_s) {
        critical_s = s_h;
        critical = h;
      }
    }
    if (critical < 0) {
      // Only saturated rows drift outside the box: the saturated set is
      // numerically inconsistent.
      return fallback(iterations);
    }

    if (iter_scale > best_scale) {
      best_scale = iter_scale;
      best_q_dot_null = q_dot_null;
      best_projector = projector;
      best_prefix = out.saturations.size();
    }

    const auto k = static_cast<std::size_t>(critical);
    SaturationEntry<Scalar> entry;
    entry.row = critical;
    entry.tag = sys.row_tags[k];
    entry.side = a_dot(critical) > sys.b_max(critical) ? BoundSide::kMax : BoundSide::kMin;
    entry.value = entry.side == BoundSide::kMax ? sys.b_max(critical) : sys.b_min(critical);
    out.saturations.push_back(entry);
    saturated[k] = true;
    task_row_saturated = task_row_saturated || entry.tag.coincides_with_task;

    a_lim.conservativeResize(a_lim.rows() + 1, Eigen::NoChange);
    a_lim.row(a_lim.rows() - 1) = sys.a.row(critical);
    a_dot_null.conservativeResize(a_dot_null.size() + 1);
    a_dot_null(a_dot_null.size() - 1) = entry.value;

    if (numericalRank(a_lim, tol) < a_lim.rows()) return fallback(iterations);

    projector = nullSpaceProjector(a_lim, tol);
    if (!entry.tag.coincides_with_task && numericalRank(MatrixX<Scalar>(jac * projector), tol, jac_scale) < m) {
      return fallback(iterations);
    }
    q_dot_null = pseudoInverse(a_lim, tol) * a_dot_null;
  }

  throw SolverDivergence<Scalar>("snsSolve: iteration cap of " + std::to_string(max_iter) +
                                     " exceeded",
                                 fallback(static_cast<int>(max_iter)));
}

}  // namespace gsns

#endif  // GSNS_SOLVER_HPP_
