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

// Hard position/velocity/acceleration limits, in joint space and on
// Cartesian control points, shaped into one velocity box per control tick.

#ifndef GSNS_CONSTRAINTS_HPP_
#define GSNS_CONSTRAINTS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gsns/kinematics.hpp"
#include "gsns/linalg.hpp"

namespace gsns {

template <typename Scalar>
struct JointLimits {
  VectorX<Scalar> q_min, q_max;
  VectorX<Scalar> v_min, v_max;
  VectorX<Scalar> a_max;  // symmetric: the lower acceleration bound is -a_max

  Eigen::Index size() const { return q_min.size(); }

  void validate(Eigen::Index n) const {
    if (q_min.size() != n || q_max.size() != n || v_min.size() != n || v_max.size() != n ||
        a_max.size() != n) {
      throw std::invalid_argument("JointLimits: every limit vector needs " + std::to_string(n) +
                                  " entries");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::string where = " (joint " + std::to_string(j + 1) + ")";
      if (!(q_min(j) < q_max(j))) throw std::invalid_argument("JointLimits: q_min < q_max violated" + where);
      if (!(v_min(j) < 0 && v_max(j) > 0)) {
        throw std::invalid_argument("JointLimits: need v_min < 0 < v_max" + where);
      }
      if (!(a_max(j) > 0)) throw std::invalid_argument("JointLimits: a_max must be positive" + where);
    }
  }
};

template <typename Scalar>
struct TimeWindow {
  Scalar start = 0;
  Scalar end = 0;
  bool contains(Scalar t) const { return t >= start && t <= end; }
};

/// Limits on a control point along selected world axes. Position bounds may
/// be +/-infinity for one-sided or velocity-only constraints.
template <typename Scalar>
struct CartesianConstraint {
  std::string id;
  FramePoint<Scalar> point;
  AxisSelector axes = AxisSelector::xyz();
  VectorX<Scalar> p_min, p_max;
  VectorX<Scalar> v_min, v_max;
  VectorX<Scalar> a_max;
  std::optional<TimeWindow<Scalar>> window;  // always active when empty
  bool coincides_with_task = false;

  Eigen::Index dimension() const { return axes.size(); }
  bool activeAt(Scalar t) const { return !window || window->contains(t); }

  void validate() const {
    const Eigen::Index d = dimension();
    const std::string where = " (constraint '" + id + "')";
    if (p_min.size() != d || p_max.size() != d || v_min.size() != d || v_max.size() != d ||
        a_max.size() != d) {
      throw std::invalid_argument("CartesianConstraint: limit vectors must match the " +
                                  std::to_string(d) + " selected axes" + where);
    }
    for (Eigen::Index i = 0; i < d; ++i) {
      if (std::isfinite(static_cast<double>(p_min(i))) &&
          std::isfinite(static_cast<double>(p_max(i))) && !(p_min(i) < p_max(i))) {
        throw std::invalid_argument("CartesianConstraint: p_min < p_max violated" + where);
      }
      if (!(v_min(i) < 0 && v_max(i) > 0)) {
        throw std::invalid_argument("CartesianConstraint: need v_min < 0 < v_max" + where);
      }
      if (!(a_max(i) > 0)) throw std::invalid_argument("CartesianConstraint: a_max must be positive" + where);
    }
    if (window && !(window->start <= window->end)) {
      throw std::invalid_argument("CartesianConstraint: window start after end" + where);
    }
  }
};

/// Provenance of one row of the augmented system.
struct RowTag {
  enum class Kind { kJoint, kCartesian, kGeneric };
  Kind kind = Kind::kJoint;
  int joint = 0;                 // 0-based; joint rows, or the row index of generic rows
  int constraint_index = -1;     // position in the scenario's constraint list
  std::string constraint_id;
  Axis axis = Axis::kX;
  bool coincides_with_task = false;

  /// "q3" for joint 3, "<id>.y" for a Cartesian row, "r3" for a generic row.
  std::string str() const {
    if (kind == Kind::kJoint) return "q" + std::to_string(joint + 1);
    if (kind == Kind::kGeneric) return "r" + std::to_string(joint + 1);
    return constraint_id + "." + std::string(1, axisName(axis));
  }

  friend bool operator==(const RowTag&, const RowTag&) = default;
};

template <typename Scalar>
struct AugmentedSystem {
  MatrixX<Scalar> a;  // (n + sum of active d_i) x n; the first n rows are I
  VectorX<Scalar> b_min, b_max;
  std::vector<RowTag> row_tags;

  Eigen::Index rows() const { return a.rows(); }
  Eigen::Index cols() const { return a.cols(); }
};

/// Wraps a hand-built system (tests, single-tick instances). Rows are tagged
/// as generic; `coincident` marks rows that coincide with the task.
template <typename Scalar>
AugmentedSystem<Scalar> makeAugmentedSystem(MatrixX<Scalar> a, VectorX<Scalar> b_min,
                                            VectorX<Scalar> b_max,
                                            const std::vector<bool>& coincident = {}) {
  if (b_min.size() != a.rows() || b_max.size() != a.rows()) {
    throw std::invalid_argument("makeAugmentedSystem: box does not match the matrix");
  }
  if (!coincident.empty() && static_cast<Eigen::Index>(coincident.size()) != a.rows()) {
    throw std::invalid_argument("makeAugmentedSystem: coincidence flags do not match the matrix");
  }
  AugmentedSystem<Scalar> sys{std::move(a), std::move(b_min), std::move(b_max), {}};
  for (Eigen::Index i = 0; i < sys.rows(); ++i) {
    RowTag tag;
    tag.kind = RowTag::Kind::kGeneric;
    tag.joint = static_cast<int>(i);
    tag.coincides_with_task = !coincident.empty() && coincident[static_cast<std::size_t>(i)];
    sys.row_tags.push_back(tag);
  }
  return sys;
}

/// Velocity interval for one scalar coordinate from its position, velocity
/// and braking limits. A coordinate already past a position bound can
/// produce an inverted interval; it is then collapsed to the point of
/// [hi, lo] nearest zero, clamped to the velocity limits.
template <typename Scalar>
std::pair<Scalar, Scalar> shapeScalarBox(Scalar pos, Scalar p_min, Scalar p_max, Scalar v_min,
                                         Scalar v_max, Scalar a_max, Scalar sample_time) {
  using std::max;
  using std::min;
  using std::sqrt;
  const Scalar zero(0);
  const Scalar lo = max({(p_min - pos) / sample_time, v_min,
                         -sqrt(Scalar(2) * a_max * max(zero, pos - p_min))});
  const Scalar hi = min({(p_max - pos) / sample_time, v_max,
                         sqrt(Scalar(2) * a_max * max(zero, p_max - pos))});
  if (lo <= hi) return {lo, hi};
  const Scalar point = std::clamp(std::clamp(zero, hi, lo), v_min, v_max);
  return {point, point};
}

template <typename Scalar>
std::pair<VectorX<Scalar>, VectorX<Scalar>> shapeJointBox(const VectorX<Scalar>& q,
                                                          const JointLimits<Scalar>& lim,
                                                          Scalar sample_time) {
  if (!(sample_time > 0)) throw std::invalid_argument("shapeJointBox: sample time must be positive");
  lim.validate(q.size());
  VectorX<Scalar> lo(q.size()), hi(q.size());
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    std::tie(lo(j), hi(j)) = shapeScalarBox(q(j), lim.q_min(j), lim.q_max(j), lim.v_min(j),
                                            lim.v_max(j), lim.a_max(j), sample_time);
  }
  return {lo, hi};
}

template <typename Scalar>
std::pair<VectorX<Scalar>, VectorX<Scalar>> shapeCartesianBox(const VectorX<Scalar>& p,
                                                              const CartesianConstraint<Scalar>& c,
                                                              Scalar sample_time) {
  if (!(sample_time > 0)) throw std::invalid_argument("shapeCartesianBox: sample time must be positive");
  if (p.size() != c.dimension()) {
    throw std::invalid_argument("shapeCartesianBox: position has " + std::to_string(p.size()) +
                                " entries, constraint '" + c.id + "' has " +
                                std::to_string(c.dimension()) + " axes");
  }
  VectorX<Scalar> lo(p.size()), hi(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    std::tie(lo(i), hi(i)) = shapeScalarBox(p(i), c.p_min(i), c.p_max(i), c.v_min(i), c.v_max(i),
                                            c.a_max(i), sample_time);
  }
  return {lo, hi};
}

/// Stacks the joint rows (identity) and the rows of every constraint active
/// at time t, in declaration order, with the matching velocity box.
template <typename Scalar>
AugmentedSystem<Scalar> buildAugmented(const RobotModel<Scalar>& model, const VectorX<Scalar>& q,
                                       const JointLimits<Scalar>& lim,
                                       const std::vector<CartesianConstraint<Scalar>>& constraints,
                                       Scalar t, Scalar sample_time) {
  const Eigen::Index n = model.jointCount();
  if (q.size() != n) throw std::invalid_argument("buildAugmented: q does not match the robot");
  lim.validate(n);

  Eigen::Index rows = n;
  for (const auto& c : constraints) {
    c.validate();
    model.checkPoint(c.point);
    if (c.activeAt(t)) rows += c.dimension();
  }

  AugmentedSystem<Scalar> sys;
  sys.a = MatrixX<Scalar>::Zero(rows, n);
  sys.b_min.resize(rows);
  sys.b_max.resize(rows);
  sys.row_tags.reserve(static_cast<std::size_t>(rows));

  sys.a.topRows(n).setIdentity();
  auto [q_lo, q_hi] = shapeJointBox(q, lim, sample_time);
  sys.b_min.head(n) = q_lo;
  sys.b_max.head(n) = q_hi;
  for (Eigen::Index j = 0; j < n; ++j) {
    RowTag tag;
    tag.kind = RowTag::Kind::kJoint;
    tag.joint = static_cast<int>(j);
    sys.row_tags.push_back(tag);
  }

  Eigen::Index row = n;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (!c.activeAt(t)) continue;
    const Eigen::Index d = c.dimension();
    const VectorX<Scalar> p = forwardPosition(model, q, c.point, c.axes);
    sys.a.middleRows(row, d) = jacobian(model, q, c.point, c.axes);
    auto [lo, hi] = shapeCartesianBox(p, c, sample_time);
    sys.b_min.segment(row, d) = lo;
    sys.b_max.segment(row, d) = hi;
    for (Eigen::Index k = 0; k < d; ++k) {
      RowTag tag;
      tag.kind = RowTag::Kind::kCartesian;
      tag.constraint_index = static_cast<int>(i);
      tag.constraint_id = c.id;
      tag.axis = c.axes[k];
      tag.coincides_with_task = c.coincides_with_task;
      sys.row_tags.push_back(tag);
    }
    row += d;
  }
  return sys;
}

}  // namespace gsns

#endif  // GSNS_CONSTRAINTS_HPP_
