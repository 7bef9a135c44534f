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

#ifndef GSNS_TRAJECTORY_HPP_
#define GSNS_TRAJECTORY_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <variant>

#include <Eigen/Dense>

#include "gsns/kinematics.hpp"
#include "gsns/linalg.hpp"

namespace gsns {

template <typename Scalar>
struct LinePath {
  Vector3<Scalar> start = Vector3<Scalar>::Zero();
  Vector3<Scalar> end = Vector3<Scalar>::UnitX();
};

/// Circle in the plane spanned by two world axes, traversed `laps` times
/// counter-clockwise (first axis towards second) from `start_angle`.
template <typename Scalar>
struct CirclePath {
  Vector3<Scalar> center = Vector3<Scalar>::Zero();
  Scalar radius = 1;
  Axis first_axis = Axis::kX;
  Axis second_axis = Axis::kY;
  int laps = 1;
  Scalar start_angle = 0;
};

template <typename Scalar>
using PathSpec = std::variant<LinePath<Scalar>, CirclePath<Scalar>>;

template <typename Scalar>
struct PathSample {
  Vector3<Scalar> position;
  Vector3<Scalar> tangent;  // d position / d sigma, unit norm
};

template <typename Scalar>
void validatePath(const PathSpec<Scalar>& path) {
  if (const auto* line = std::get_if<LinePath<Scalar>>(&path)) {
    if (!((line->end - line->start).norm() > Scalar(0))) {
      throw std::invalid_argument("LinePath: start and end coincide");
    }
  } else {
    const auto& circle = std::get<CirclePath<Scalar>>(path);
    if (!(circle.radius > Scalar(0))) throw std::invalid_argument("CirclePath: radius must be positive");
    if (circle.laps < 1) throw std::invalid_argument("CirclePath: laps must be at least 1");
    if (circle.first_axis == circle.second_axis) {
      throw std::invalid_argument("CirclePath: plane axes must differ");
    }
  }
}

/// Arc length of the whole path.
template <typename Scalar>
Scalar pathLength(const PathSpec<Scalar>& path) {
  if (const auto* line = std::get_if<LinePath<Scalar>>(&path)) {
    return (line->end - line->start).norm();
  }
  const auto& circle = std::get<CirclePath<Scalar>>(path);
  return Scalar(2) * std::numbers::pi_v<Scalar> * circle.radius * Scalar(circle.laps);
}

/// Point and unit tangent at arc length sigma (clamped to the path).
template <typename Scalar>
PathSample<Scalar> pathEval(const PathSpec<Scalar>& path, Scalar sigma) {
  const Scalar s = std::clamp(sigma, Scalar(0), pathLength(path));
  if (const auto* line = std::get_if<LinePath<Scalar>>(&path)) {
    const Vector3<Scalar> delta = line->end - line->start;
    const Vector3<Scalar> dir = delta / delta.norm();
    return {line->start + s * dir, dir};
  }
  const auto& circle = std::get<CirclePath<Scalar>>(path);
  const Scalar theta = circle.start_angle + s / circle.radius;
  const Vector3<Scalar> e1 = Vector3<Scalar>::Unit(static_cast<int>(circle.first_axis));
  const Vector3<Scalar> e2 = Vector3<Scalar>::Unit(static_cast<int>(circle.second_axis));
  const Scalar c = std::cos(theta);
  const Scalar sn = std::sin(theta);
  return {circle.center + circle.radius * (c * e1 + sn * e2), -sn * e1 + c * e2};
}

template <typename Scalar>
struct QuinticTiming {
  Scalar duration = 1;
  Scalar total_length = 1;
};

/// Accelerate at max_accel to cruise_velocity, cruise, then brake to rest
/// after total_length; triangular when the cruise speed is out of reach.
template <typename Scalar>
struct TrapezoidTiming {
  Scalar cruise_velocity = 1;
  Scalar max_accel = 1;
  Scalar total_length = 1;
};

template <typename Scalar>
using TimingLaw = std::variant<QuinticTiming<Scalar>, TrapezoidTiming<Scalar>>;

template <typename Scalar>
struct TimingSample {
  Scalar sigma = 0;
  Scalar sigma_dot = 0;
};

template <typename Scalar>
void validateTiming(const TimingLaw<Scalar>& law) {
  if (const auto* quintic = std::get_if<QuinticTiming<Scalar>>(&law)) {
    if (!(quintic->duration > 0)) throw std::invalid_argument("QuinticTiming: duration must be positive");
    if (!(quintic->total_length >= 0)) throw std::invalid_argument("QuinticTiming: negative length");
  } else {
    const auto& trap = std::get<TrapezoidTiming<Scalar>>(law);
    if (!(trap.cruise_velocity > 0) || !(trap.max_accel > 0)) {
      throw std::invalid_argument("TrapezoidTiming: cruise velocity and acceleration must be positive");
    }
    if (!(trap.total_length >= 0)) throw std::invalid_argument("TrapezoidTiming: negative length");
  }
}

/// Time at which the timing law comes to rest at the end of the path.
template <typename Scalar>
Scalar timingDuration(const TimingLaw<Scalar>& law) {
  if (const auto* quintic = std::get_if<QuinticTiming<Scalar>>(&law)) return quintic->duration;
  const auto& trap = std::get<TrapezoidTiming<Scalar>>(law);
  const Scalar ramp_length = trap.cruise_velocity * trap.cruise_velocity / (2 * trap.max_accel);
  if (2 * ramp_length >= trap.total_length) {
    return 2 * std::sqrt(trap.total_length / trap.max_accel);
  }
  return 2 * trap.cruise_velocity / trap.max_accel +
         (trap.total_length - 2 * ramp_length) / trap.cruise_velocity;
}

template <typename Scalar>
TimingSample<Scalar> timingEval(const TimingLaw<Scalar>& law, Scalar t) {
  if (const auto* quintic = std::get_if<QuinticTiming<Scalar>>(&law)) {
    const Scalar tau = std::clamp(t / quintic->duration, Scalar(0), Scalar(1));
    const Scalar tau2 = tau * tau;
    const Scalar tau3 = tau2 * tau;
    const Scalar length = quintic->total_length;
    const Scalar sigma = length * tau3 * (10 - 15 * tau + 6 * tau2);
    const Scalar sigma_dot = length / quintic->duration * 30 * tau2 * (1 - 2 * tau + tau2);
    return {sigma, sigma_dot};
  }

  const auto& trap = std::get<TrapezoidTiming<Scalar>>(law);
  const Scalar accel = trap.max_accel;
  const Scalar length = trap.total_length;
  Scalar peak = trap.cruise_velocity;
  if (peak * peak / accel >= length) peak = std::sqrt(accel * length);
  const Scalar ramp_time = peak / accel;
  const Scalar ramp_length = Scalar(0.5) * peak * ramp_time;
  const Scalar cruise_time = (length - 2 * ramp_length) / peak;
  const Scalar total = 2 * ramp_time + cruise_time;

  if (t <= 0) return {0, 0};
  if (t < ramp_time) return {Scalar(0.5) * accel * t * t, accel * t};
  if (t < ramp_time + cruise_time) return {ramp_length + peak * (t - ramp_time), peak};
  if (t < total) {
    const Scalar remaining = total - t;
    return {length - Scalar(0.5) * accel * remaining * remaining, accel * remaining};
  }
  return {length, 0};
}

template <typename Scalar>
struct FeedbackLaw {
  VectorX<Scalar> k_p;  // diagonal gains, 1/s
};

/// Desired end-effector quantities at one instant, restricted to the task axes.
template <typename Scalar>
struct TaskSample {
  VectorX<Scalar> x_desired;
  VectorX<Scalar> x_actual;
  VectorX<Scalar> x_dot;  // feed-forward plus proportional correction
};

template <typename Scalar>
TaskSample<Scalar> sampleTask(const PathSpec<Scalar>& path, const TimingLaw<Scalar>& law,
                              const FeedbackLaw<Scalar>& feedback, const VectorX<Scalar>& q,
                              const RobotModel<Scalar>& model, const AxisSelector& task_axes,
                              Scalar t) {
  if (feedback.k_p.size() != task_axes.size()) {
    throw std::invalid_argument("sampleTask: one gain per task axis expected");
  }
  const TimingSample<Scalar> timing = timingEval(law, t);
  const PathSample<Scalar> point = pathEval(path, timing.sigma);
  TaskSample<Scalar> out;
  out.x_desired = task_axes.select(point.position);
  out.x_actual = forwardPosition(model, q, model.endEffector(), task_axes);
  out.x_dot = timing.sigma_dot * task_axes.select(point.tangent) +
              feedback.k_p.cwiseProduct(out.x_desired - out.x_actual);
  return out;
}

/// xdot = sigma_dot * dx_d/dsigma + K_p (x_d - f_ee(q)).
template <typename Scalar>
VectorX<Scalar> taskReference(const PathSpec<Scalar>& path, const TimingLaw<Scalar>& law,
                              const FeedbackLaw<Scalar>& feedback, const VectorX<Scalar>& q,
                              const RobotModel<Scalar>& model, const AxisSelector& task_axes,
                              Scalar t) {
  return sampleTask(path, law, feedback, q, model, task_axes, t).x_dot;
}

}  // namespace gsns

#endif  // GSNS_TRAJECTORY_HPP_
