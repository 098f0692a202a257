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

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qis/core/register_split.hpp"
#include "qis/core/state.hpp"
#include "qis/core/types.hpp"

namespace qis {

/// Canonical orthonormal completion. Keeps `vectors` (assumed orthonormal)
/// in order, then sweeps e_0, e_1, ... e_{dim-1}, orthogonalizing each against
/// everything accepted so far (two Gram-Schmidt passes) and appending it when
/// the residual survives. Deterministic for a given input.
inline std::vector<Vector> complete_orthonormal(std::vector<Vector> vectors, std::size_t dim) {
  constexpr double kAccept = 1e-6;
  for (const Vector& v : vectors)
    if (static_cast<std::size_t>(v.size()) != dim) throw Error(ErrorCode::kDimensionMismatch, "completion dimension");
  for (std::size_t i = 0; i < dim && vectors.size() < dim; ++i) {
    Vector e = Vector::Zero(dim);
    e[i] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& w : vectors) e -= w.dot(e) * w;
    const double norm = e.norm();
    if (norm > kAccept) vectors.push_back(e / norm);
  }
  if (vectors.size() != dim) throw Error(ErrorCode::kNotOrthonormal, "completion failed; input not orthonormal");
  return vectors;
}

/// Unitary sending domain[j] to codomain[j] for the listed pairs, extended
/// by pairing the canonical completions of both lists in order.
inline Matrix complete_to_unitary(const std::vector<Vector>& domain, const std::vector<Vector>& codomain, std::size_t dim) {
  if (domain.size() != codomain.size()) throw Error(ErrorCode::kDimensionMismatch, "isometry needs matching lists");
  const std::vector<Vector> from = complete_orthonormal(domain, dim);
  const std::vector<Vector> to = complete_orthonormal(codomain, dim);
  Matrix u = Matrix::Zero(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) u += to[j] * from[j].adjoint();
  return u;
}

/// max |G - I| over the Gram matrix of `vectors`.
inline double gram_defect(std::span<const Vector> vectors) {
  double worst = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      const Amplitude g = vectors[i].dot(vectors[j]);
      worst = std::max(worst, std::abs(g - Amplitude(i == j ? 1.0 : 0.0)));
    }
  return worst;
}

/// Orthonormal vectors on `num_qubits` qubits. The first `listed()` vectors
/// are the ones named by the protocol; anything after was added by
/// canonical completion.
class MeasurementBasis {
 public:
  MeasurementBasis(std::size_t num_qubits, std::vector<Vector> vectors)
      : num_qubits_(num_qubits), vectors_(std::move(vectors)), listed_(vectors_.size()) {
    const std::size_t dim = std::size_t{1} << num_qubits_;
    if (vectors_.size() > dim) throw Error(ErrorCode::kNotOrthonormal, "more vectors than the dimension");
    for (const Vector& v : vectors_)
      if (static_cast<std::size_t>(v.size()) != dim) throw Error(ErrorCode::kDimensionMismatch, "basis vector size");
    if (gram_defect(vectors_) > tol::kNormalization) throw Error(ErrorCode::kNotOrthonormal, "basis vectors not orthonormal");
  }

  /// Builds a basis from literal ket expressions; each entry is normalized.
  static MeasurementBasis from_terms(std::size_t num_qubits, std::initializer_list<std::initializer_list<Term>> rows) {
    std::vector<Vector> vectors;
    for (const auto& row : rows) vectors.push_back(PureState::from_terms(numbered_labels(static_cast<int>(num_qubits)), row).amplitudes());
    return MeasurementBasis(num_qubits, std::move(vectors));
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return vectors_.size(); }
  std::size_t listed() const { return listed_; }
  bool is_complete() const { return vectors_.size() == (std::size_t{1} << num_qubits_); }
  bool is_completion(std::size_t index) const { return index >= listed_; }
  const Vector& vector(std::size_t i) const { return vectors_.at(i); }
  const std::vector<Vector>& vectors() const { return vectors_; }

  MeasurementBasis completed() const {
    MeasurementBasis out = *this;
    out.vectors_ = complete_orthonormal(vectors_, std::size_t{1} << num_qubits_);
    return out;
  }

 private:
  std::size_t num_qubits_;
  std::vector<Vector> vectors_;
  std::size_t listed_;
};

struct Projection {
  double probability = 0.0;
  /// Renormalized state of the unmeasured qubits; absent when the branch is impossible.
  std::optional<PureState> post_state;
};

/// (<v| (x) I) |state> over `targets` (in the order v is written).
inline Projection project(const PureState& state, const Vector& basis_vector, std::span<const QubitLabel> targets) {
  RegisterSplit split(state.labels(), targets);
  if (static_cast<std::size_t>(basis_vector.size()) != split.subset_dim())
    throw Error(ErrorCode::kDimensionMismatch, "basis vector has " + std::to_string(basis_vector.size()) +
                                                   " entries for " + std::to_string(targets.size()) + " targets");
  if (std::abs(basis_vector.squaredNorm() - 1.0) > tol::kNormalization)
    throw Error(ErrorCode::kNotNormalized, "basis vector not normalized");
  Vector residual = split.gather(state.amplitudes()).transpose() * basis_vector.conjugate();
  Projection out;
  out.probability = residual.squaredNorm();
  if (out.probability > tol::kZeroProbability)
    out.post_state = PureState(split.rest_labels(), residual / std::sqrt(out.probability));
  return out;
}

inline Projection project(const PureState& state, const PureState& basis_vector, std::span<const QubitLabel> targets) {
  return project(state, basis_vector.amplitudes(), targets);
}

struct MeasurementOutcome {
  std::size_t index = 0;
  double probability = 0.0;
  std::optional<PureState> post_state;
  /// True when the basis vector was added by completion rather than listed.
  bool completion_added = false;
  bool possible() const { return post_state.has_value(); }
};

/// One entry per basis vector, in basis order; impossible branches are kept.
inline std::vector<MeasurementOutcome> enumerate_measurement(const PureState& state, const MeasurementBasis& basis,
                                                             std::span<const QubitLabel> targets) {
  if (!basis.is_complete()) throw Error(ErrorCode::kIncompleteBasis, "complete the basis before enumerating");
  if (targets.size() != basis.num_qubits()) throw Error(ErrorCode::kDimensionMismatch, "basis width vs targets");
  std::vector<MeasurementOutcome> out;
  out.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Projection p = project(state, basis.vector(i), targets);
    out.push_back({i, p.probability, std::move(p.post_state), basis.is_completion(i)});
  }
  return out;
}

}  // namespace qis
