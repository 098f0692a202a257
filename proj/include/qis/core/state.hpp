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
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "qis/core/register_split.hpp"
#include "qis/core/types.hpp"

namespace qis {

/// Parses a big-endian bitstring such as "0110" into a basis index.
inline std::size_t basis_index(std::string_view bits) {
  std::size_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorCode::kParse, "bad bitstring '" + std::string(bits) + "'");
    idx = (idx << 1) | static_cast<std::size_t>(c == '1');
  }
  return idx;
}

inline std::string bitstring(std::size_t index, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t j = 0; j < width; ++j)
    if ((index >> (width - 1 - j)) & 1U) out[j] = '1';
  return out;
}

/// One signed ket in a literal state expression, e.g. {-1, "1111"}.
struct Term {
  Amplitude coefficient;
  std::string_view bits;
};

/// Normalized pure state on a labelled register. Amplitude index i is the
/// big-endian basis label: bit (n-1-p) of i is the value of labels()[p].
///
/// A zero-qubit state (one amplitude of unit modulus) stands for the empty
/// register left behind when every qubit has been measured.
class PureState {
 public:
  PureState(Labels labels, Vector amplitudes) : labels_(std::move(labels)), amps_(std::move(amplitudes)) {
    validate_shape();
    const double norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol::kNormalization)
      throw Error(ErrorCode::kNotNormalized, "squared norm " + std::to_string(norm2));
  }

  /// Rescales to unit norm; throws on the zero vector.
  static PureState normalized(Labels labels, Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorCode::kNotNormalized, "cannot normalize zero vector");
    return PureState(std::move(labels), amplitudes / norm);
  }

  static PureState basis(Labels labels, std::size_t index) {
    Vector v = Vector::Zero(std::size_t{1} << labels.size());
    if (index >= static_cast<std::size_t>(v.size())) throw Error(ErrorCode::kDimensionMismatch, "basis index out of range");
    v[index] = 1.0;
    return PureState(std::move(labels), std::move(v));
  }

  /// Builds sum_k c_k |bits_k> and normalizes it.
  static PureState from_terms(Labels labels, std::initializer_list<Term> terms) {
    return from_terms(std::move(labels), std::span<const Term>(terms.begin(), terms.size()));
  }

  static PureState from_terms(Labels labels, std::span<const Term> terms) {
    Vector v = Vector::Zero(std::size_t{1} << labels.size());
    for (const Term& t : terms) {
      if (t.bits.size() != labels.size()) throw Error(ErrorCode::kDimensionMismatch, "ket width mismatch");
      v[basis_index(t.bits)] += t.coefficient;
    }
    return normalized(std::move(labels), std::move(v));
  }

  std::size_t num_qubits() const { return labels_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Labels& labels() const { return labels_; }
  const Vector& amplitudes() const { return amps_; }
  Amplitude amplitude(std::size_t index) const { return amps_[index]; }
  Amplitude amplitude(std::string_view bits) const { return amps_[basis_index(bits)]; }
  std::size_t position(QubitLabel q) const { return position_of(labels_, q); }

  /// Same amplitudes, new names.
  PureState relabeled(Labels labels) const {
    if (labels.size() != labels_.size()) throw Error(ErrorCode::kDimensionMismatch, "relabel width mismatch");
    return PureState(std::move(labels), amps_);
  }

  /// Same physical state, amplitudes re-indexed for a new qubit order.
  PureState reordered(const Labels& order) const {
    if (order.size() != labels_.size()) throw Error(ErrorCode::kDimensionMismatch, "reorder must name every qubit");
    RegisterSplit split(labels_, order);
    Vector out(dim());
    for (std::size_t s = 0; s < dim(); ++s) out[s] = amps_[split.full_index(s, 0)];
    return PureState(order, std::move(out));
  }

 private:
  void validate_shape() const {
    if (labels_.size() > tol::kMaxQubits) throw Error(ErrorCode::kInvalidArgument, "register larger than 12 qubits");
    require_distinct(labels_);
    if (amps_.size() != (Eigen::Index{1} << labels_.size()))
      throw Error(ErrorCode::kDimensionMismatch, "amplitude count is not 2^num_qubits");
    if (!amps_.allFinite()) throw Error(ErrorCode::kInvalidArgument, "non-finite amplitude");
  }

  Labels labels_;
  Vector amps_;
};

/// Square unitary acting on `arity` qubits. Construction enforces U^dagger U = I.
class UnitaryOp {
 public:
  explicit UnitaryOp(Matrix entries) : m_(std::move(entries)) {
    const auto n = m_.rows();
    if (n != m_.cols() || n == 0 || (n & (n - 1)) != 0)
      throw Error(ErrorCode::kDimensionMismatch, "unitary must be 2^k x 2^k");
    arity_ = 0;
    while ((Eigen::Index{1} << arity_) < n) ++arity_;
    if (!m_.allFinite()) throw Error(ErrorCode::kNotUnitary, "non-finite entry");
    const double dev = unitarity_defect(m_);
    if (dev > tol::kNormalization) throw Error(ErrorCode::kNotUnitary, "max |U^dagger U - I| = " + std::to_string(dev));
  }

  static double unitarity_defect(const Matrix& m) {
    return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  }

  std::size_t arity() const { return arity_; }
  const Matrix& matrix() const { return m_; }
  UnitaryOp adjoint() const { return UnitaryOp(m_.adjoint()); }

  static UnitaryOp identity(std::size_t arity) {
    const auto d = Eigen::Index{1} << arity;
    return UnitaryOp(Matrix::Identity(d, d));
  }

 private:
  Matrix m_;
  std::size_t arity_ = 0;
};

/// Kronecker product with `a` as the more significant factor.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline UnitaryOp kron(const UnitaryOp& a, const UnitaryOp& b) { return UnitaryOp(kron(a.matrix(), b.matrix())); }

namespace gates {
inline UnitaryOp pauli_x() { Matrix m(2, 2); m << 0, 1, 1, 0; return UnitaryOp(m); }
inline UnitaryOp pauli_z() { Matrix m(2, 2); m << 1, 0, 0, -1; return UnitaryOp(m); }
inline UnitaryOp pauli_y() { Matrix m(2, 2); m << 0, Amplitude(0, -1), Amplitude(0, 1), 0; return UnitaryOp(m); }
/// i * sigma_y = [[0, 1], [-1, 0]].
inline UnitaryOp i_pauli_y() { Matrix m(2, 2); m << 0, 1, -1, 0; return UnitaryOp(m); }
inline UnitaryOp hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << h, h, h, -h;
  return UnitaryOp(m);
}
inline UnitaryOp phase_s() { Matrix m(2, 2); m << 1, 0, 0, Amplitude(0, 1); return UnitaryOp(m); }
/// Control is the first (more significant) qubit.
inline UnitaryOp cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return UnitaryOp(m);
}
}  // namespace gates

/// a (x) b; labels of b follow those of a and must not collide.
inline PureState tensor(const PureState& a, const PureState& b) {
  Labels labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  const Vector& x = a.amplitudes();
  const Vector& y = b.amplitudes();
  Vector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x[i] * y;
  return PureState(std::move(labels), std::move(out));
}

/// Applies u to `targets` (first target = most significant qubit of u).
inline PureState apply_unitary(const PureState& state, const UnitaryOp& u, std::span<const QubitLabel> targets) {
  if (targets.size() != u.arity())
    throw Error(ErrorCode::kDimensionMismatch, "unitary arity " + std::to_string(u.arity()) + " vs " +
                                                   std::to_string(targets.size()) + " targets");
  RegisterSplit split(state.labels(), targets);
  Matrix m = split.gather(state.amplitudes());
  return PureState(state.labels(), split.scatter(u.matrix() * m));
}

inline PureState apply_unitary(const PureState& state, const UnitaryOp& u, std::initializer_list<QubitLabel> targets) {
  return apply_unitary(state, u, std::span<const QubitLabel>(targets.begin(), targets.size()));
}

/// <a|b>, compared positionally (register order), labels ignored.
inline Amplitude overlap(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) throw Error(ErrorCode::kDimensionMismatch, "qubit counts differ");
  return a.amplitudes().dot(b.amplitudes());
}

/// |<a|b>|^2.
inline double fidelity(const PureState& a, const PureState& b) { return std::norm(overlap(a, b)); }

inline bool equal_up_to_global_phase(const PureState& a, const PureState& b, double tolerance = tol::kNormalization) {
  return std::abs(overlap(a, b)) >= 1.0 - tolerance;
}

/// min over phases of ||a - e^{i phi} b||, i.e. sqrt(2 - 2|<a|b>|).
inline double phase_insensitive_distance(const PureState& a, const PureState& b) {
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(overlap(a, b))));
}

/// max_i |a_i - e^{i phi} b_i| with the phase taken from <b|a>. Unlike
/// phase_insensitive_distance this is linear in small errors, so it can be
/// held to tolerances near machine precision.
inline double aligned_max_deviation(const PureState& a, const PureState& b) {
  const Amplitude z = overlap(b, a);
  const Amplitude phase = std::abs(z) > 1e-300 ? z / std::abs(z) : Amplitude(1.0);
  return (a.amplitudes() - phase * b.amplitudes()).cwiseAbs().maxCoeff();
}

}  // namespace qis
