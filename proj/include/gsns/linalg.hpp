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

#ifndef GSNS_LINALG_HPP_
#define GSNS_LINALG_HPP_

#include <algorithm>
#include <stdexcept>

#include <Eigen/Dense>

namespace gsns {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// Default relative cutoff below which singular values count as zero.
inline constexpr double kDefaultRelTol = 1e-10;

namespace internal {

template <typename Derived>
void requireFinite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

// Singular values at or below this are treated as zero. `reference_scale`
// lets a caller anchor the cutoff to a matrix other than `m` itself (e.g. the
// unprojected Jacobian when testing the rank of J*P), so that a product whose
// entries are all round-off is not mistaken for a full-rank matrix.
template <typename Scalar>
Scalar cutoff(Scalar sigma_max, Scalar rel_tol, Scalar reference_scale) {
  return rel_tol * std::max(sigma_max, reference_scale);
}

}  // namespace internal

/// Largest singular value (spectral norm); 0 for empty matrices.
template <typename Derived>
typename Derived::Scalar spectralNorm(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0 || m.cols() == 0) return Scalar(0);
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m.eval());
  return svd.singularValues()(0);
}

/// Moore-Penrose pseudoinverse through a full SVD. Singular values
/// sigma_i <= rel_tol * max(sigma_max, reference_scale) are dropped.
template <typename Derived>
MatrixX<typename Derived::Scalar> pseudoInverse(
    const Eigen::MatrixBase<Derived>& m,
    typename Derived::Scalar rel_tol = typename Derived::Scalar(kDefaultRelTol),
    typename Derived::Scalar reference_scale = typename Derived::Scalar(0)) {
  using Scalar = typename Derived::Scalar;
  internal::requireFinite(m, "pseudoInverse");
  if (!(rel_tol > Scalar(0))) {
    throw std::invalid_argument("pseudoInverse: rel_tol must be positive");
  }
  if (m.rows() == 0 || m.cols() == 0) {
    return MatrixX<Scalar>::Zero(m.cols(), m.rows());
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m.eval(),
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const Scalar cut = internal::cutoff(sigma(0), rel_tol, reference_scale);
  VectorX<Scalar> inv = VectorX<Scalar>::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut) inv(i) = Scalar(1) / sigma(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

/// Count of singular values above rel_tol * max(sigma_max, reference_scale).
template <typename Derived>
Eigen::Index numericalRank(
    const Eigen::MatrixBase<Derived>& m,
    typename Derived::Scalar rel_tol = typename Derived::Scalar(kDefaultRelTol),
    typename Derived::Scalar reference_scale = typename Derived::Scalar(0)) {
  using Scalar = typename Derived::Scalar;
  internal::requireFinite(m, "numericalRank");
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m.eval());
  const auto& sigma = svd.singularValues();
  if (sigma(0) == Scalar(0)) return 0;
  const Scalar cut = internal::cutoff(sigma(0), rel_tol, reference_scale);
  return (sigma.array() > cut).count();
}

/// Orthogonal projector onto the null space of `a_lim`, I - a_lim^# a_lim.
/// A matrix with zero rows yields the identity.
///
/// Built as I - V_r V_r^T from the retained right singular vectors, which is
/// the same operator as I - a_lim^# a_lim but symmetric by construction.
template <typename Derived>
MatrixX<typename Derived::Scalar> nullSpaceProjector(
    const Eigen::MatrixBase<Derived>& a_lim,
    typename Derived::Scalar rel_tol = typename Derived::Scalar(kDefaultRelTol)) {
  using Scalar = typename Derived::Scalar;
  internal::requireFinite(a_lim, "nullSpaceProjector");
  const Eigen::Index n = a_lim.cols();
  MatrixX<Scalar> projector = MatrixX<Scalar>::Identity(n, n);
  if (a_lim.rows() == 0 || n == 0) return projector;
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(a_lim.eval(), Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  if (sigma(0) == Scalar(0)) return projector;
  const Scalar cut = rel_tol * sigma(0);
  const Eigen::Index rank = (sigma.array() > cut).count();
  const auto basis = svd.matrixV().leftCols(rank);
  projector.noalias() -= basis * basis.transpose();
  return projector;
}

}  // namespace gsns

#endif  // GSNS_LINALG_HPP_
