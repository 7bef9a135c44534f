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

#ifndef GSNS_TESTS_TEST_SUPPORT_HPP_
#define GSNS_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace gsns::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniformInt(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Eigen::MatrixXd randomMatrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double lo = -1,
                                    double hi = 1) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = uniform(rng, lo, hi);
  }
  return m;
}

inline Eigen::VectorXd randomVector(Rng& rng, Eigen::Index size, double lo = -1, double hi = 1) {
  return randomMatrix(rng, size, 1, lo, hi);
}

inline double maxAbs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline std::string scenarioPath(const std::string& name) {
  return std::string(GSNS_SCENARIO_DIR) + "/" + name;
}

}  // namespace gsns::testing

#endif  // GSNS_TESTS_TEST_SUPPORT_HPP_
