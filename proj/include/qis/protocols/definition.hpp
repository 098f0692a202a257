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

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qis/channels/bases.hpp"
#include "qis/channels/states.hpp"
#include "qis/core/measurement.hpp"
#include "qis/core/state.hpp"
#include "qis/core/types.hpp"

namespace qis::protocols {

enum class ProtocolId { kHbbGhz, kC4Single, kC4Entangled, kC5Single, kC5Arbitrary };

inline constexpr std::array<ProtocolId, 5> kAllProtocols = {ProtocolId::kHbbGhz, ProtocolId::kC4Single,
                                                            ProtocolId::kC4Entangled, ProtocolId::kC5Single,
                                                            ProtocolId::kC5Arbitrary};

inline std::string_view to_string(ProtocolId id) {
  switch (id) {
    case ProtocolId::kHbbGhz: return "hbb-ghz";
    case ProtocolId::kC4Single: return "c4-single";
    case ProtocolId::kC4Entangled: return "c4-entangled";
    case ProtocolId::kC5Single: return "c5-single";
    case ProtocolId::kC5Arbitrary: return "c5-arbitrary";
  }
  return "?";
}

inline ProtocolId parse_protocol(std::string_view name) {
  for (ProtocolId id : kAllProtocols)
    if (to_string(id) == name) return id;
  throw Error(ErrorCode::kParse, "unknown protocol '" + std::string(name) + "'");
}

enum class Party { kAlice, kBob, kCharlie, kEve };

inline std::string_view to_string(Party p) {
  switch (p) {
    case Party::kAlice: return "Alice";
    case Party::kBob: return "Bob";
    case Party::kCharlie: return "Charlie";
    case Party::kEve: return "Eve";
  }
  return "?";
}

inline Party parse_party(std::string_view name) {
  for (Party p : {Party::kAlice, Party::kBob, Party::kCharlie, Party::kEve})
    if (to_string(p) == name) return p;
  throw Error(ErrorCode::kParse, "unknown party '" + std::string(name) + "'");
}

using Ownership = std::map<QubitLabel, Party>;

struct MeasureStep {
  Party party;
  Labels targets;
  std::string basis_name;
  MeasurementBasis basis;  // always complete
};

/// A unitary applied jointly by the listed parties (e.g. the meet-up step).
struct UnitaryStep {
  std::string name;
  std::vector<Party> parties;
  Labels targets;
  UnitaryOp op;
};

using Step = std::variant<MeasureStep, UnitaryStep>;

struct ProtocolDefinition {
  ProtocolId id;
  std::string channel_name;
  PureState channel;
  /// Register is secret_labels followed by the channel's qubits 1..N.
  Labels secret_labels;
  /// Computational basis indices a valid secret may occupy.
  std::vector<std::size_t> secret_support;
  Ownership ownership;
  std::vector<Step> steps;
  /// Charlie's qubits in the order the recovered secret is read.
  Labels charlie_qubits;

  std::size_t secret_qubits() const { return secret_labels.size(); }
  Labels register_labels() const {
    Labels out = secret_labels;
    out.insert(out.end(), channel.labels().begin(), channel.labels().end());
    return out;
  }
};

/// Maps (|000> + |110>)/sqrt2 to |000> and (|001> - |111>)/sqrt2 to |111>,
/// completed canonically to a three-qubit unitary.
inline UnitaryOp derive_joint_conversion() {
  const Labels l = numbered_labels(3);
  const std::vector<Vector> from = {PureState::from_terms(l, {{1.0, "000"}, {1.0, "110"}}).amplitudes(),
                                    PureState::from_terms(l, {{1.0, "001"}, {-1.0, "111"}}).amplitudes()};
  const std::vector<Vector> to = {PureState::basis(l, 0).amplitudes(), PureState::basis(l, 7).amplitudes()};
  return UnitaryOp(complete_to_unitary(from, to, 8));
}

namespace detail {

inline QubitLabel q(int i) { return QubitLabel(i); }

inline ProtocolDefinition build_definition(ProtocolId id) {
  using channels::basis_by_name;
  const QubitLabel a = QubitLabel::secret();
  const QubitLabel a2 = QubitLabel::secret_prime();
  auto measure = [](Party p, Labels t, std::string name) {
    MeasurementBasis b = basis_by_name(name);
    return Step(MeasureStep{p, std::move(t), std::move(name), std::move(b)});
  };
  switch (id) {
    case ProtocolId::kHbbGhz:
      return {id, "ghz3", channels::make_ghz3(), {a}, {0, 1},
              {{a, Party::kAlice}, {q(1), Party::kAlice}, {q(2), Party::kBob}, {q(3), Party::kCharlie}},
              {measure(Party::kAlice, {a, q(1)}, "bell"), measure(Party::kBob, {q(2)}, "pm")},
              {q(3)}};
    case ProtocolId::kC4Single:
      return {id, "c4", channels::make_c4(), {a}, {0, 1},
              {{a, Party::kAlice}, {q(1), Party::kAlice}, {q(2), Party::kBob}, {q(3), Party::kBob}, {q(4), Party::kCharlie}},
              {measure(Party::kAlice, {a, q(1)}, "bell"), measure(Party::kBob, {q(2), q(3)}, "bob-c4")},
              {q(4)}};
    case ProtocolId::kC4Entangled:
      return {id, "c4", channels::make_c4(), {a, a2}, {0, 3},
              {{a, Party::kAlice}, {a2, Party::kAlice}, {q(1), Party::kAlice}, {q(2), Party::kCharlie},
               {q(3), Party::kCharlie}, {q(4), Party::kBob}},
              {measure(Party::kAlice, {a, a2, q(1)}, "ghz3-basis"),
               Step(UnitaryStep{"joint-conversion", {Party::kBob, Party::kCharlie}, {q(2), q(3), q(4)}, derive_joint_conversion()}),
               measure(Party::kBob, {q(4)}, "pm")},
              {q(2), q(3)}};
    case ProtocolId::kC5Single:
      return {id, "c5", channels::make_c5(), {a}, {0, 1},
              {{a, Party::kAlice}, {q(1), Party::kAlice}, {q(2), Party::kAlice}, {q(3), Party::kBob},
               {q(4), Party::kBob}, {q(5), Party::kCharlie}},
              {measure(Party::kAlice, {a, q(1), q(2)}, "ghz3-basis-c5"), measure(Party::kBob, {q(3), q(4)}, "bob-c5")},
              {q(5)}};
    case ProtocolId::kC5Arbitrary:
      return {id, "c5", channels::make_c5(), {a, a2}, {0, 1, 2, 3},
              {{a, Party::kAlice}, {a2, Party::kAlice}, {q(1), Party::kAlice}, {q(5), Party::kAlice},
               {q(2), Party::kBob}, {q(3), Party::kCharlie}, {q(4), Party::kCharlie}},
              {measure(Party::kAlice, {a, a2, q(1), q(5)}, "table5"), measure(Party::kBob, {q(2)}, "pm")},
              {q(3), q(4)}};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown protocol id");
}

}  // namespace detail

/// Cached, immutable protocol description.
inline const ProtocolDefinition& definition(ProtocolId id) {
  static const std::array<ProtocolDefinition, 5> all = {
      detail::build_definition(ProtocolId::kHbbGhz), detail::build_definition(ProtocolId::kC4Single),
      detail::build_definition(ProtocolId::kC4Entangled), detail::build_definition(ProtocolId::kC5Single),
      detail::build_definition(ProtocolId::kC5Arbitrary)};
  return all[static_cast<std::size_t>(id)];
}

/// Rejects secrets of the wrong width or with weight outside the protocol's
/// admissible subspace (e.g. |01>, |10> for the entangled C4 protocol).
inline void validate_secret(const ProtocolDefinition& def, const PureState& secret) {
  if (secret.num_qubits() != def.secret_qubits())
    throw Error(ErrorCode::kDimensionMismatch, std::string(to_string(def.id)) + " takes a " +
                                                   std::to_string(def.secret_qubits()) + "-qubit secret");
  std::vector<bool> allowed(secret.dim(), false);
  for (std::size_t s : def.secret_support) allowed[s] = true;
  for (std::size_t i = 0; i < secret.dim(); ++i)
    if (!allowed[i] && std::abs(secret.amplitude(i)) > tol::kNormalization)
      throw Error(ErrorCode::kPreconditionViolated,
                  std::string(to_string(def.id)) + " requires zero amplitude on |" + bitstring(i, secret.num_qubits()) +
                      ">; only states of the form alpha|00> + beta|11> can be split with this channel");
}

/// Secret on the protocol's secret labels, tensored with the channel.
inline PureState prepare_register(const ProtocolDefinition& def, const PureState& secret) {
  validate_secret(def, secret);
  return tensor(secret.relabeled(def.secret_labels), def.channel);
}

}  // namespace qis::protocols
