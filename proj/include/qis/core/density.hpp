// Copyright 2026 The qis-cluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>

#include "qis/core/register_split.hpp"
#include "qis/core/state.hpp"
#include "qis/core/types.hpp"

namespace qis {

/// Hermitian, unit-trace, positive semidefinite operator on a labelled register.
class DensityMatrix {
 public:
  DensityMatrix(Labels labels, Matrix entries) : labels_(std::move(labels)), m_(std::move(entries)) {
    require_distinct(labels_);
    const Eigen::Index d = Eigen::Index{1} << labels_.size();
    if (m_.rows() != d || m_.cols() != d) throw Error(ErrorCode::kDimensionMismatch, "density matrix must be 2^n x 2^n");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol::kNormalization)
      throw Error(ErrorCode::kInvalidArgument, "density matrix not Hermitian");
    if (std::abs(m_.trace() - Amplitude(1.0)) > tol::kNormalization)
      throw Error(ErrorCode::kNotNormalized, "density matrix trace != 1");
    const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(m_, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    if (min_eig < -tol::kPsd) throw Error(ErrorCode::kInvalidArgument, "density matrix not positive semidefinite");
  }

  static DensityMatrix pure(const PureState& s) {
    return DensityMatrix(s.labels(), s.amplitudes() * s.amplitudes().adjoint());
  }

  /// Probability-weighted mixture; all parts must share a label order.
  static DensityMatrix mixture(std::span<const std::pair<double, DensityMatrix>> parts) {
    if (parts.empty()) throw Error(ErrorCode::kInvalidArgument, "empty mixture");
    Matrix acc = Matrix::Zero(parts.front().second.dim(), parts.front().second.dim());
    double total = 0.0;
    for (const auto& [w, rho] : parts) {
      if (rho.labels() != parts.front().second.labels()) throw Error(ErrorCode::kDimensionMismatch, "mixture label mismatch");
      acc += w * rho.matrix();
      total += w;
    }
    return DensityMatrix(parts.front().second.labels(), acc / total);
  }

  std::size_t num_qubits() const { return labels_.size(); }
  Eigen::Index dim() const { return m_.rows(); }
  const Labels& labels() const { return labels_; }
  const Matrix& matrix() const { return m_; }

  /// <psi|rho|psi>, positional.
  double expectation(const PureState& psi) const {
    if (psi.num_qubits() != num_qubits()) throw Error(ErrorCode::kDimensionMismatch, "fidelity dimension");
    return psi.amplitudes().dot(m_ * psi.amplitudes()).real();
  }

 private:
  Labels labels_;
  Matrix m_;
};

/// Partial trace onto `keep` (result indexed in the order of `keep`).
inline DensityMatrix reduced_density(const PureState& state, std::span<const QubitLabel> keep) {
  if (keep.empty()) throw Error(ErrorCode::kInvalidArgument, "keep set is empty");
  RegisterSplit split(state.labels(), keep);
  Matrix m = split.gather(state.amplitudes());
  return DensityMatrix(Labels(keep.begin(), keep.end()), m * m.adjoint());
}

inline DensityMatrix reduced_density(const PureState& state, std::initializer_list<QubitLabel> keep) {
  return reduced_density(state, std::span<const QubitLabel>(keep.begin(), keep.size()));
}

/// Partial trace of a mixed state onto `keep`.
inline DensityMatrix reduced_density(const DensityMatrix& rho, std::span<const QubitLabel> keep) {
  if (keep.empty()) throw Error(ErrorCode::kInvalidArgument, "keep set is empty");
  RegisterSplit split(rho.labels(), keep);
  Matrix out = Matrix::Zero(split.subset_dim(), split.subset_dim());
  for (std::size_t i = 0; i < split.subset_dim(); ++i)
    for (std::size_t j = 0; j < split.subset_dim(); ++j)
      for (std::size_t r = 0; r < split.rest_dim(); ++r) out(i, j) += rho.matrix()(split.full_index(i, r), split.full_index(j, r));
  return DensityMatrix(Labels(keep.begin(), keep.end()), out);
}

/// Number of singular values above tol::kRank across the cut side_a | rest.
inline std::size_t schmidt_rank(const PureState& state, std::span<const QubitLabel> side_a) {
  if (side_a.empty() || side_a.size() >= state.num_qubits())
    throw Error(ErrorCode::kInvalidArgument, "both sides of the cut must be nonempty");
  RegisterSplit split(state.labels(), side_a);
  Matrix m = split.gather(state.amplitudes());
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return static_cast<std::size_t>((sv.array() > tol::kRank).count());
}

/// Explicit two-sided cut; side_b must be exactly the complement of side_a.
inline std::size_t schmidt_rank(const PureState& state, std::span<const QubitLabel> side_a,
                                std::span<const QubitLabel> side_b) {
  Labels all(side_a.begin(), side_a.end());
  all.insert(all.end(), side_b.begin(), side_b.end());
  require_distinct(all);
  if (all.size() != state.num_qubits()) throw Error(ErrorCode::kInvalidArgument, "cut does not cover the register");
  for (QubitLabel q : all) (void)state.position(q);
  return schmidt_rank(state, side_a);
}

/// (1/2) sum |eig(p - q)|.
inline double trace_distance(const DensityMatrix& p, const DensityMatrix& q) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::kDimensionMismatch, "trace distance of different dimensions");
  Matrix diff = p.matrix() - q.matrix();
  diff = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return std::clamp(0.5 * es.eigenvalues().cwiseAbs().sum(), 0.0, 1.0);
}

}  // namespace qis
