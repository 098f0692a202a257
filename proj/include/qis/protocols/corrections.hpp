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
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qis/channels/clifford.hpp"
#include "qis/core/random.hpp"
#include "qis/protocols/definition.hpp"
#include "qis/protocols/engine.hpp"

namespace qis::protocols {

/// One nonzero entry of unit modulus per row and column, each in
/// {+1, -1, +i, -i} once a global phase is removed.
inline bool is_signed_permutation(const Matrix& m, double tolerance = 1e-10) {
  if (m.rows() != m.cols()) return false;
  const Matrix c = channels::canonical_phase(m);
  const Amplitude allowed[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::vector<int> col_hits(static_cast<std::size_t>(m.cols()), 0);
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    int row_hits = 0;
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      const Amplitude z = c(i, j);
      if (std::abs(z) <= tolerance) continue;
      if (!std::any_of(std::begin(allowed), std::end(allowed), [&](Amplitude w) { return std::abs(z - w) <= tolerance; }))
        return false;
      ++row_hits;
      ++col_hits[static_cast<std::size_t>(j)];
    }
    if (row_hits != 1) return false;
  }
  return std::all_of(col_hits.begin(), col_hits.end(), [](int h) { return h == 1; });
}

/// Names a one- or two-qubit correction as a product of {I, X, iY, Z}
/// (up to global phase), e.g. "iY" or "X(x)Z". nullopt if it is not one.
inline std::optional<std::string> pauli_name(const Matrix& m) {
  static const std::array<std::pair<const char*, UnitaryOp>, 4> kSingle = {{
      {"I", UnitaryOp::identity(1)}, {"X", gates::pauli_x()}, {"iY", gates::i_pauli_y()}, {"Z", gates::pauli_z()}}};
  if (m.rows() == 2) {
    for (const auto& [name, u] : kSingle)
      if (channels::equal_up_to_phase(m, u.matrix(), 1e-9)) return std::string(name);
    return std::nullopt;
  }
  if (m.rows() == 4) {
    for (const auto& [n1, u1] : kSingle)
      for (const auto& [n2, u2] : kSingle)
        if (channels::equal_up_to_phase(m, kron(u1.matrix(), u2.matrix()), 1e-9))
          return std::string(n1) + "(x)" + n2;
  }
  return std::nullopt;
}

struct CorrectionEntry {
  std::size_t alice_outcome = 0;
  std::size_t bob_outcome = 0;
  UnitaryOp unitary;
  bool signed_permutation = false;
  std::optional<std::string> pauli;
  /// Worst fidelity over the held-out random secrets used for verification.
  double verification_min_fidelity = 0.0;
};

using CorrectionTable = std::map<std::pair<std::size_t, std::size_t>, CorrectionEntry>;

inline constexpr std::size_t kVerificationSecrets = 20;

/// Reconstructs Charlie's recovery unitary for one (Alice, Bob) branch from
/// the protocol's linear action alone:
///   1. run the branch on every admissible computational-basis secret e_s;
///   2. check the branch probabilities agree and the normalized images
///      phi_s are orthonormal;
///   3. check the uniform superposition maps to the matching superposition
///      of images (no hidden relative phases);
///   4. complete sum_s |e_s><phi_s| to a unitary;
///   5. verify on random secrets that never entered the construction.
inline CorrectionEntry derive_correction(const ProtocolDefinition& def, std::size_t alice, std::size_t bob) {
  const std::size_t k = def.secret_qubits();
  const std::size_t dim = std::size_t{1} << k;
  const std::array<std::size_t, 2> path = {alice, bob};
  const std::vector<Step>& steps = def.steps;

  auto charlie_image = [&](const PureState& secret) -> std::optional<Branch> {
    std::optional<Branch> b = follow(steps, prepare_register(def, secret), path);
    if (b) b->state = b->state.reordered(def.charlie_qubits);
    return b;
  };

  std::vector<Vector> images;
  std::vector<Vector> targets;
  double p_ref = -1.0;
  for (std::size_t s : def.secret_support) {
    std::optional<Branch> b = charlie_image(PureState::basis(def.secret_labels, s));
    if (!b) throw Error(ErrorCode::kZeroProbability, "branch (" + std::to_string(alice) + ", " + std::to_string(bob) + ") never occurs");
    if (p_ref < 0) p_ref = b->probability;
    if (std::abs(b->probability - p_ref) > tol::kNormalization)
      throw Error(ErrorCode::kInconsistentImages, "branch probability depends on the secret");
    images.push_back(b->state.amplitudes());
    targets.push_back(PureState::basis(def.charlie_qubits, s).amplitudes());
  }
  if (gram_defect(images) > tol::kNormalization)
    throw Error(ErrorCode::kInconsistentImages, "images of basis secrets are not orthonormal");

  Vector superposed = Vector::Zero(dim);
  Vector expected = Vector::Zero(dim);
  for (std::size_t i = 0; i < def.secret_support.size(); ++i) {
    superposed[def.secret_support[i]] = 1.0;
    expected += images[i];
  }
  std::optional<Branch> sb = charlie_image(PureState::normalized(def.secret_labels, superposed));
  if (!sb || std::abs(sb->state.amplitudes().dot(expected.normalized())) < 1.0 - tol::kNormalization)
    throw Error(ErrorCode::kInconsistentImages, "superposition image is not the superposed images");

  CorrectionEntry entry{alice, bob, UnitaryOp(complete_to_unitary(images, targets, dim)), false, std::nullopt, 1.0};

  Rng rng(0x51ED0000ULL + 97 * static_cast<std::uint64_t>(def.id) + 16 * alice + bob);
  for (std::size_t t = 0; t < kVerificationSecrets; ++t) {
    const PureState secret = random_state(rng, def.secret_labels, def.secret_support);
    std::optional<Branch> b = charlie_image(secret);
    if (!b) throw Error(ErrorCode::kInconsistentImages, "branch vanished for a random secret");
    const PureState fixed = apply_unitary(b->state, entry.unitary, def.charlie_qubits);
    entry.verification_min_fidelity = std::min(entry.verification_min_fidelity, fidelity(fixed, secret));
  }
  if (entry.verification_min_fidelity < 1.0 - tol::kNormalization)
    throw Error(ErrorCode::kInconsistentImages, "derived correction fails on held-out secrets");

  entry.signed_permutation = is_signed_permutation(entry.unitary.matrix());
  entry.pauli = pauli_name(entry.unitary.matrix());
  return entry;
}

/// Probe secret: uniform superposition over the admissible basis states.
inline PureState probe_secret(const ProtocolDefinition& def) {
  Vector v = Vector::Zero(std::size_t{1} << def.secret_qubits());
  for (std::size_t s : def.secret_support) v[s] = 1.0;
  return PureState::normalized(def.secret_labels, v);
}

inline CorrectionTable derive_correction_table(const ProtocolDefinition& def) {
  CorrectionTable table;
  for (const Branch& b : evolve(def.steps, prepare_register(def, probe_secret(def))).branches)
    table.emplace(std::make_pair(b.outcomes[0], b.outcomes[1]), derive_correction(def, b.outcomes[0], b.outcomes[1]));
  return table;
}

/// Cached per protocol; derivation is deterministic.
inline const CorrectionTable& correction_table(ProtocolId id) {
  static const std::array<CorrectionTable, 5> all = [] {
    std::array<CorrectionTable, 5> t;
    for (ProtocolId p : kAllProtocols) t[static_cast<std::size_t>(p)] = derive_correction_table(definition(p));
    return t;
  }();
  return all[static_cast<std::size_t>(id)];
}

inline CorrectionEntry derive_correction(ProtocolId id, std::size_t alice, std::size_t bob) {
  return derive_correction(definition(id), alice, bob);
}

}  // namespace qis::protocols
