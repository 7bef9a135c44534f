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

#include "gsns/oracle.hpp"

#include <string>
#include <vector>

namespace gsns {
namespace {

bool insideBox(const Eigen::VectorXd& q, const AugmentedSystem<double>& sys, double tol) {
  const Eigen::VectorXd a_dot = sys.a * q;
  return ((a_dot - sys.b_min).array() >= -tol).all() && ((sys.b_max - a_dot).array() >= -tol).all();
}

// Every non-empty polyhedron has a minimal face: an affine set cut out by
// the task equations plus at most (n - rank J) independent active rows. Its
// minimum-norm point is found by a rank-revealing least-squares solve, so
// enumerating all such active sets with both bound sides is complete.
class ActiveSetSearch {
 public:
  ActiveSetSearch(const TaskRef<double>& task, const AugmentedSystem<double>& sys, double scale,
                  const OracleOptions& options)
      : task_(task), sys_(sys), scale_(scale), options_(options) {
    const Eigen::Index n = sys.cols();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(task.jacobian);
    qr.setThreshold(1e-12);
    max_active_ = n - (task.jacobian.rows() == 0 ? 0 : qr.rank());
  }

  std::optional<Eigen::VectorXd> run() {
    chosen_.clear();
    sides_.clear();
    return recurse(0);
  }

 private:
  std::optional<Eigen::VectorXd> tryActiveSet() const {
    const Eigen::Index m = task_.jacobian.rows();
    const Eigen::Index n = sys_.cols();
    const auto k = static_cast<Eigen::Index>(chosen_.size());
    Eigen::MatrixXd lhs(m + k, n);
    Eigen::VectorXd rhs(m + k);
    lhs.topRows(m) = task_.jacobian;
    rhs.head(m) = scale_ * task_.x_dot;
    for (Eigen::Index i = 0; i < k; ++i) {
      const Eigen::Index row = chosen_[static_cast<std::size_t>(i)];
      lhs.row(m + i) = sys_.a.row(row);
      rhs(m + i) = sides_[static_cast<std::size_t>(i)] ? sys_.b_max(row) : sys_.b_min(row);
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lhs);
    cod.setThreshold(1e-12);
    const Eigen::VectorXd q = cod.solve(rhs);
    const double tol = options_.tolerance;
    if ((lhs * q - rhs).lpNorm<Eigen::Infinity>() > tol) return std::nullopt;
    if (!insideBox(q, sys_, tol)) return std::nullopt;
    return q;
  }

  std::optional<Eigen::VectorXd> recurse(Eigen::Index next_row) {
    if (auto q = tryActiveSet()) return q;
    if (static_cast<Eigen::Index>(chosen_.size()) >= max_active_) return std::nullopt;
    for (Eigen::Index row = next_row; row < sys_.rows(); ++row) {
      for (bool upper : {false, true}) {
        chosen_.push_back(row);
        sides_.push_back(upper);
        auto q = recurse(row + 1);
        chosen_.pop_back();
        sides_.pop_back();
        if (q) return q;
      }
    }
    return std::nullopt;
  }

  const TaskRef<double>& task_;
  const AugmentedSystem<double>& sys_;
  double scale_;
  OracleOptions options_;
  Eigen::Index max_active_ = 0;
  std::vector<Eigen::Index> chosen_;
  std::vector<bool> sides_;
};

void checkInstance(const TaskRef<double>& task, const AugmentedSystem<double>& sys,
                   const OracleOptions& options) {
  if (task.jacobian.cols() != sys.cols() || task.x_dot.size() != task.jacobian.rows() ||
      sys.b_min.size() != sys.rows() || sys.b_max.size() != sys.rows()) {
    throw std::invalid_argument("oracle: inconsistent instance dimensions");
  }
  if (sys.cols() > options.max_joints || sys.rows() > options.max_rows) {
    throw OracleBudgetExceeded("oracle: instance with " + std::to_string(sys.cols()) + " joints and " +
                               std::to_string(sys.rows()) + " rows exceeds the budget of " +
                               std::to_string(options.max_joints) + " joints / " +
                               std::to_string(options.max_rows) + " rows");
  }
}

}  // namespace

std::optional<Eigen::VectorXd> oracleFeasiblePoint(const TaskRef<double>& task,
                                                   const AugmentedSystem<double>& sys, double scale,
                                                   const OracleOptions& options) {
  checkInstance(task, sys, options);
  return ActiveSetSearch(task, sys, scale, options).run();
}

OracleVerdict oracleSolve(const TaskRef<double>& task, const AugmentedSystem<double>& sys,
                          const OracleOptions& options) {
  checkInstance(task, sys, options);
  OracleVerdict verdict;
  if (auto q = ActiveSetSearch(task, sys, 1.0, options).run()) {
    verdict.feasible_exact = true;
    verdict.best_scale = 1.0;
    verdict.witness = *q;
    return verdict;
  }
  auto at_zero = ActiveSetSearch(task, sys, 0.0, options).run();
  if (!at_zero) return verdict;

  double lo = 0.0;
  double hi = 1.0;
  Eigen::VectorXd witness = *at_zero;
  while (hi - lo > options.bisection_tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (auto q = ActiveSetSearch(task, sys, mid, options).run()) {
      lo = mid;
      witness = *q;
    } else {
      hi = mid;
    }
  }
  verdict.best_scale = lo;
  verdict.witness = witness;
  return verdict;
}

}  // namespace gsns
