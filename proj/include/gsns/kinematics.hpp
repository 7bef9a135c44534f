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

// Serial-chain kinematics for all-revolute arms: planar nR chains and
// spatial chains in standard Denavit-Hartenberg form. Only positional
// quantities are modelled; a "point" is a frame index plus a fixed offset.

#ifndef GSNS_KINEMATICS_HPP_
#define GSNS_KINEMATICS_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "gsns/linalg.hpp"

namespace gsns {

enum class Axis { kX = 0, kY = 1, kZ = 2 };

inline char axisName(Axis axis) { return "xyz"[static_cast<int>(axis)]; }

/// Ordered, duplicate-free subset of {x, y, z}.
class AxisSelector {
 public:
  explicit AxisSelector(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty() || axes_.size() > 3) {
      throw std::invalid_argument("AxisSelector: need 1 to 3 axes");
    }
    for (std::size_t i = 0; i < axes_.size(); ++i) {
      for (std::size_t j = i + 1; j < axes_.size(); ++j) {
        if (axes_[i] == axes_[j]) {
          throw std::invalid_argument("AxisSelector: duplicate axis");
        }
      }
    }
  }

  /// Parses strings such as "y", "xy" or "x z" (whitespace ignored).
  static AxisSelector parse(std::string_view text) {
    std::vector<Axis> axes;
    for (char c : text) {
      switch (c) {
        case 'x': case 'X': axes.push_back(Axis::kX); break;
        case 'y': case 'Y': axes.push_back(Axis::kY); break;
        case 'z': case 'Z': axes.push_back(Axis::kZ); break;
        case ' ': case '\t': case ',': break;
        default:
          throw std::invalid_argument("AxisSelector: unknown axis '" +
                                      std::string(1, c) + "'");
      }
    }
    return AxisSelector(std::move(axes));
  }

  static AxisSelector xyz() { return AxisSelector({Axis::kX, Axis::kY, Axis::kZ}); }

  Eigen::Index size() const { return static_cast<Eigen::Index>(axes_.size()); }
  Axis operator[](Eigen::Index i) const { return axes_[static_cast<std::size_t>(i)]; }
  const std::vector<Axis>& axes() const { return axes_; }

  std::string str() const {
    std::string out;
    for (Axis a : axes_) out.push_back(axisName(a));
    return out;
  }

  template <typename Scalar>
  VectorX<Scalar> select(const Vector3<Scalar>& v) const {
    VectorX<Scalar> out(size());
    for (Eigen::Index i = 0; i < size(); ++i) out(i) = v(static_cast<int>((*this)[i]));
    return out;
  }

  template <typename Derived>
  MatrixX<typename Derived::Scalar> selectRows(const Eigen::MatrixBase<Derived>& m) const {
    MatrixX<typename Derived::Scalar> out(size(), m.cols());
    for (Eigen::Index i = 0; i < size(); ++i) out.row(i) = m.row(static_cast<int>((*this)[i]));
    return out;
  }

  friend bool operator==(const AxisSelector&, const AxisSelector&) = default;

 private:
  std::vector<Axis> axes_;
};

/// A point rigidly attached to the distal frame of link `frame_index`
/// (1-based), at `local_offset` expressed in that frame.
template <typename Scalar>
struct FramePoint {
  int frame_index = 1;
  Vector3<Scalar> local_offset = Vector3<Scalar>::Zero();
};

template <typename Scalar>
struct DhRow {
  Scalar a = 0;
  Scalar alpha = 0;
  Scalar d = 0;
  Scalar theta_offset = 0;
};

enum class ChainKind { kPlanar, kDenavitHartenberg };

template <typename Scalar>
class RobotModel {
 public:
  using Isometry = Eigen::Transform<Scalar, 3, Eigen::Isometry>;

  /// Empty chain (no joints); use the named constructors below.
  RobotModel() = default;

  /// Planar chain in the world xy-plane; joint axes along world z.
  static RobotModel planar(std::vector<Scalar> link_lengths) {
    if (link_lengths.empty()) {
      throw std::invalid_argument("RobotModel: planar chain needs at least one link");
    }
    for (Scalar l : link_lengths) {
      if (!(l > Scalar(0)) || !std::isfinite(static_cast<double>(l))) {
        throw std::invalid_argument("RobotModel: link lengths must be positive");
      }
    }
    RobotModel model;
    model.kind_ = ChainKind::kPlanar;
    model.link_lengths_ = std::move(link_lengths);
    return model;
  }

  /// Spatial chain, standard DH: Rz(theta) Tz(d) Tx(a) Rx(alpha) per link.
  static RobotModel denavitHartenberg(std::vector<DhRow<Scalar>> rows) {
    if (rows.empty()) {
      throw std::invalid_argument("RobotModel: DH chain needs at least one row");
    }
    RobotModel model;
    model.kind_ = ChainKind::kDenavitHartenberg;
    model.dh_rows_ = std::move(rows);
    return model;
  }

  ChainKind kind() const { return kind_; }
  Eigen::Index jointCount() const {
    return static_cast<Eigen::Index>(kind_ == ChainKind::kPlanar ? link_lengths_.size()
                                                                 : dh_rows_.size());
  }
  const std::vector<Scalar>& linkLengths() const { return link_lengths_; }
  const std::vector<DhRow<Scalar>>& dhRows() const { return dh_rows_; }

  /// World poses of frames 0..n; frame 0 is the base.
  std::vector<Isometry> frames(const VectorX<Scalar>& q) const {
    const Eigen::Index n = jointCount();
    if (q.size() != n) {
      throw std::invalid_argument("RobotModel: expected " + std::to_string(n) +
                                  " joint values, got " + std::to_string(q.size()));
    }
    std::vector<Isometry> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    Isometry pose = Isometry::Identity();
    out.push_back(pose);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto k = static_cast<std::size_t>(j);
      if (kind_ == ChainKind::kPlanar) {
        pose.rotate(Eigen::AngleAxis<Scalar>(q(j), Vector3<Scalar>::UnitZ()));
        pose.translate(Vector3<Scalar>(link_lengths_[k], 0, 0));
      } else {
        const DhRow<Scalar>& row = dh_rows_[k];
        pose.rotate(Eigen::AngleAxis<Scalar>(q(j) + row.theta_offset, Vector3<Scalar>::UnitZ()));
        pose.translate(Vector3<Scalar>(row.a, 0, row.d));
        pose.rotate(Eigen::AngleAxis<Scalar>(row.alpha, Vector3<Scalar>::UnitX()));
      }
      out.push_back(pose);
    }
    return out;
  }

  void checkPoint(const FramePoint<Scalar>& point) const {
    if (point.frame_index < 1 || point.frame_index > jointCount()) {
      throw std::out_of_range("FramePoint: frame index " + std::to_string(point.frame_index) +
                              " outside [1, " + std::to_string(jointCount()) + "]");
    }
  }

  /// The end-effector: origin of the last frame.
  FramePoint<Scalar> endEffector() const {
    return FramePoint<Scalar>{static_cast<int>(jointCount()), Vector3<Scalar>::Zero()};
  }

 private:
  ChainKind kind_ = ChainKind::kPlanar;
  std::vector<Scalar> link_lengths_;
  std::vector<DhRow<Scalar>> dh_rows_;
};

/// World position of `point` (all three axes).
template <typename Scalar>
Vector3<Scalar> pointPosition(const RobotModel<Scalar>& model, const VectorX<Scalar>& q,
                              const FramePoint<Scalar>& point) {
  model.checkPoint(point);
  const auto frames = model.frames(q);
  return frames[static_cast<std::size_t>(point.frame_index)] * point.local_offset;
}

/// 3 x n positional Jacobian of `point`; columns of joints distal to the
/// attachment frame are exactly zero.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, Eigen::Dynamic> pointJacobian(const RobotModel<Scalar>& model,
                                                        const VectorX<Scalar>& q,
                                                        const FramePoint<Scalar>& point) {
  model.checkPoint(point);
  const auto frames = model.frames(q);
  const Vector3<Scalar> p = frames[static_cast<std::size_t>(point.frame_index)] * point.local_offset;
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> jac =
      Eigen::Matrix<Scalar, 3, Eigen::Dynamic>::Zero(3, model.jointCount());
  for (int j = 0; j < point.frame_index; ++j) {
    // Joint j+1 rotates about z of frame j, through the origin of frame j.
    const auto& frame = frames[static_cast<std::size_t>(j)];
    const Vector3<Scalar> axis = frame.linear().col(2);
    jac.col(j) = axis.cross(p - frame.translation());
  }
  return jac;
}

template <typename Scalar>
VectorX<Scalar> forwardPosition(const RobotModel<Scalar>& model, const VectorX<Scalar>& q,
                                const FramePoint<Scalar>& point, const AxisSelector& sel) {
  return sel.select(pointPosition(model, q, point));
}

template <typename Scalar>
MatrixX<Scalar> jacobian(const RobotModel<Scalar>& model, const VectorX<Scalar>& q,
                         const FramePoint<Scalar>& point, const AxisSelector& sel) {
  return sel.selectRows(pointJacobian(model, q, point));
}

}  // namespace gsns

#endif  // GSNS_KINEMATICS_HPP_
