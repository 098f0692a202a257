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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "qis/core/state.hpp"
#include "qis/core/types.hpp"

namespace qis::channels {

/// Divides out the phase of the first entry with modulus > 1e-9 (row-major),
/// so matrices equal up to global phase compare equal.
inline Matrix canonical_phase(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > 1e-9) return m * (std::abs(m(i, j)) / m(i, j));
  return m;
}

inline bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tolerance = 1e-9) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (canonical_phase(a) - canonical_phase(b)).cwiseAbs().maxCoeff() <= tolerance;
}

/// The 24 single-qubit Cliffords modulo phase, generated from H and S by
/// breadth-first closure. Element 0 is the identity.
inline const std::vector<UnitaryOp>& single_qubit_cliffords() {
  static const std::vector<UnitaryOp> group = [] {
    std::vector<Matrix> found{Matrix::Identity(2, 2)};
    const Matrix gens[] = {gates::hadamard().matrix(), gates::phase_s().matrix()};
    for (std::size_t i = 0; i < found.size(); ++i)
      for (const Matrix& g : gens) {
        Matrix next = canonical_phase(g * found[i]);
        bool seen = std::any_of(found.begin(), found.end(), [&](const Matrix& f) { return (f - next).cwiseAbs().maxCoeff() < 1e-9; });
        if (!seen) found.push_back(next);
      }
    std::vector<UnitaryOp> out;
    for (const Matrix& m : found) out.emplace_back(m);
    return out;
  }();
  return group;
}

namespace detail {

/// Applies a 2x2 unitary to register position `pos` of an n-qubit vector in place.
inline void apply_single(Vector& v, const Matrix& u, std::size_t pos, std::size_t n) {
  const std::size_t stride = std::size_t{1} << (n - 1 - pos);
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t base = 0; base < dim; base += 2 * stride)
    for (std::size_t k = base; k < base + stride; ++k) {
      const Amplitude x0 = v[k], x1 = v[k + stride];
      v[k] = u(0, 0) * x0 + u(0, 1) * x1;
      v[k + stride] = u(1, 0) * x0 + u(1, 1) * x1;
    }
}

/// Reduced density matrix of register positions [0, k).
inline Matrix prefix_density(const Vector& v, std::size_t k, std::size_t n) {
  const Eigen::Index rows = Eigen::Index{1} << (n - k);
  const Eigen::Index cols = Eigen::Index{1} << k;
  Eigen::Map<const Matrix> mt(v.data(), rows, cols);  // mt(r, s) = v[s * rows + r]
  return mt.transpose() * mt.conjugate();
}

struct CliffordDfs {
  const Vector& target;
  std::size_t n;
  std::vector<Matrix> target_prefix;
  std::vector<std::size_t> choice;

  bool run(const Vector& current, std::size_t depth) {
    if (depth == n) return std::abs(target.dot(current)) >= 1.0 - tol::kNormalization;
    const auto& group = single_qubit_cliffords();
    for (std::size_t c = 0; c < group.size(); ++c) {
      Vector next = current;
      apply_single(next, group[c].matrix(), depth, n);
      // Unitaries on later qubits cannot change this marginal, so a
      // mismatch rules out the whole subtree.
      if (depth + 1 < n && (prefix_density(next, depth + 1, n) - target_prefix[depth + 1]).cwiseAbs().maxCoeff() > 1e-9)
        continue;
      choice[depth] = c;
      if (run(next, depth + 1)) return true;
    }
    return false;
  }
};

}  // namespace detail

inline constexpr std::size_t kMaxEquivalenceQubits = 6;

/// Searches the n-fold product of the single-qubit Clifford group for
/// U_1 (x) ... (x) U_n with (U_1 (x) ... (x) U_n)|a> = e^{i phi}|b>, qubits
/// compared positionally. Exhaustive: subtrees are skipped only when the
/// marginal on the already-fixed prefix disagrees with b's, which no choice
/// on the remaining qubits can repair.
inline std::optional<std::vector<UnitaryOp>> local_equivalence_search(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) throw Error(ErrorCode::kDimensionMismatch, "states have different qubit counts");
  const std::size_t n = a.num_qubits();
  if (n == 0) return std::vector<UnitaryOp>{};
  if (n > kMaxEquivalenceQubits) throw Error(ErrorCode::kSearchBudget, "local equivalence search limited to 6 qubits");
  detail::CliffordDfs dfs{b.amplitudes(), n, {}, std::vector<std::size_t>(n, 0)};
  for (std::size_t k = 0; k <= n; ++k) dfs.target_prefix.push_back(detail::prefix_density(b.amplitudes(), k, n));
  if (!dfs.run(a.amplitudes(), 0)) return std::nullopt;
  std::vector<UnitaryOp> out;
  for (std::size_t c : dfs.choice) out.push_back(single_qubit_cliffords()[c]);
  return out;
}

struct RelabeledEquivalence {
  /// a's qubit at position permutation[k] plays the role of b's qubit k.
  std::vector<std::size_t> permutation;
  std::vector<UnitaryOp> unitaries;
};

/// Like local_equivalence_search but also tries every relabeling of a's
/// qubits (lexicographic order, identity first).
inline std::optional<RelabeledEquivalence> local_equivalence_up_to_relabeling(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) throw Error(ErrorCode::kDimensionMismatch, "states have different qubit counts");
  std::vector<std::size_t> perm(a.num_qubits());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Labels order;
    for (std::size_t p : perm) order.push_back(a.labels()[p]);
    if (auto found = local_equivalence_search(a.reordered(order), b)) return RelabeledEquivalence{perm, std::move(*found)};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// Applies one single-qubit unitary per qubit, in register order.
inline PureState apply_local(const PureState& state, const std::vector<UnitaryOp>& unitaries) {
  if (unitaries.size() != state.num_qubits()) throw Error(ErrorCode::kDimensionMismatch, "one unitary per qubit");
  Vector v = state.amplitudes();
  for (std::size_t k = 0; k < unitaries.size(); ++k) detail::apply_single(v, unitaries[k].matrix(), k, state.num_qubits());
  return PureState(state.labels(), v);
}

}  // namespace qis::channels
