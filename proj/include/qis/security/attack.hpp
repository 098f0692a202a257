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
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qis/core/density.hpp"
#include "qis/core/state.hpp"
#include "qis/protocols/corrections.hpp"
#include "qis/protocols/definition.hpp"
#include "qis/protocols/engine.hpp"

namespace qis::security {

using protocols::Party;
using protocols::ProtocolId;

enum class AttackKind {
  /// CNOT, tapped qubit controls a NOT on Eve's |0> ancilla (Z-basis copy).
  kCnot,
  /// Ancilla prepared in |+>, then it controls a NOT on the tapped qubit
  /// (X-basis copy).
  kCnotX,
  /// Any two-qubit unitary on (tapped qubit, ancilla).
  kCustom,
};

enum class AttackTiming {
  kProtocolStart,  // before any honest operation
  kBeforeBob,      // immediately before Bob's measurement
};

inline std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::kCnot: return "cnot";
    case AttackKind::kCnotX: return "cnot-x";
    case AttackKind::kCustom: return "custom";
  }
  return "?";
}

inline std::string_view to_string(AttackTiming t) {
  return t == AttackTiming::kProtocolStart ? "protocol-start" : "before-bob";
}

inline AttackTiming parse_timing(std::string_view s) {
  if (s == "protocol-start" || s == "start") return AttackTiming::kProtocolStart;
  if (s == "before-bob") return AttackTiming::kBeforeBob;
  throw Error(ErrorCode::kParse, "unknown attack timing '" + std::string(s) + "'");
}

/// Matrix on (tapped qubit, ancilla), tapped qubit most significant.
inline UnitaryOp attack_unitary(AttackKind kind) {
  switch (kind) {
    case AttackKind::kCnot: return gates::cnot();
    case AttackKind::kCnotX: {
      Matrix cnot_from_ancilla = Matrix::Zero(4, 4);  // |q e> -> |q xor e, e>
      for (int q = 0; q < 2; ++q)
        for (int e = 0; e < 2; ++e) cnot_from_ancilla(((q ^ e) << 1) | e, (q << 1) | e) = 1.0;
      return UnitaryOp(cnot_from_ancilla * kron(Matrix::Identity(2, 2), gates::hadamard().matrix()));
    }
    case AttackKind::kCustom: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "custom attacks need an explicit matrix");
}

struct AttackSpec {
  ProtocolId protocol;
  QubitLabel tapped_qubit;
  AttackKind kind = AttackKind::kCnot;
  UnitaryOp attack_unitary = gates::cnot();
  AttackTiming timing = AttackTiming::kProtocolStart;
  /// Negative control: stop after Alice's measurement (no Bob step).
  bool skip_bob_measurement = false;
};

inline AttackSpec make_attack(ProtocolId protocol, int tapped, AttackKind kind = AttackKind::kCnot,
                              AttackTiming timing = AttackTiming::kProtocolStart) {
  return {protocol, QubitLabel(tapped), kind, attack_unitary(kind), timing, false};
}

inline void validate_attack(const AttackSpec& spec) {
  const auto& def = protocols::definition(spec.protocol);
  const auto it = def.ownership.find(spec.tapped_qubit);
  if (it == def.ownership.end() || spec.tapped_qubit == QubitLabel::secret() || spec.tapped_qubit == QubitLabel::secret_prime())
    throw Error(ErrorCode::kUnknownQubit, "tapped qubit " + spec.tapped_qubit.name() + " is not a channel qubit of " +
                                              std::string(protocols::to_string(spec.protocol)));
  if (it->second != Party::kBob && it->second != Party::kCharlie)
    throw Error(ErrorCode::kInvalidArgument, "tapped qubit " + spec.tapped_qubit.name() + " belongs to Alice");
  if (spec.attack_unitary.arity() != 2) throw Error(ErrorCode::kDimensionMismatch, "attack unitary must act on two qubits");
}

/// The honest steps with Eve's interaction spliced in.
inline std::vector<protocols::Step> attacked_steps(const AttackSpec& spec) {
  const auto& def = protocols::definition(spec.protocol);
  std::vector<protocols::Step> steps;
  const protocols::Step tap = protocols::UnitaryStep{"eve-tap", {Party::kEve}, {spec.tapped_qubit, QubitLabel::eve()},
                                                     spec.attack_unitary};
  if (spec.timing == AttackTiming::kProtocolStart) steps.push_back(tap);
  for (const protocols::Step& s : def.steps) {
    const auto* m = std::get_if<protocols::MeasureStep>(&s);
    const bool is_bob = m && m->party == Party::kBob;
    if (is_bob && spec.timing == AttackTiming::kBeforeBob) steps.push_back(tap);
    if (is_bob && spec.skip_bob_measurement) break;
    steps.push_back(s);
  }
  return steps;
}

struct AttackBranch {
  std::vector<std::size_t> outcomes;
  double probability = 0.0;
  /// Everything not yet measured, Eve's ancilla last.
  PureState state;
  /// Rank across Eve | the remaining honest qubits (Charlie's, when Bob measured).
  std::size_t charlie_eve_schmidt_rank = 0;
  DensityMatrix eve;
  /// <secret| rho_C |secret> after the honest correction; absent when Bob
  /// never measured.
  std::optional<double> charlie_fidelity;
};

struct AttackReport {
  AttackSpec spec;
  PureState secret;
  /// Bob-Charlie-Eve state right after each possible Alice outcome.
  std::vector<std::pair<std::size_t, PureState>> post_alice;
  std::vector<AttackBranch> branches;
  bool all_product = true;
  double min_charlie_fidelity = 1.0;
};

/// Adds Eve's |0> ancilla, runs the attacked protocol, and records per branch
/// the Charlie-Eve Schmidt rank, Eve's reduced state and Charlie's corrected
/// fidelity.
inline AttackReport run_attack(const AttackSpec& spec, const PureState& secret) {
  validate_attack(spec);
  const auto& def = protocols::definition(spec.protocol);
  const QubitLabel eve = QubitLabel::eve();
  const PureState reg = tensor(protocols::prepare_register(def, secret), PureState::basis({eve}, 0));
  const std::vector<protocols::Step> steps = attacked_steps(spec);

  AttackReport report{spec, secret, {}, {}, true, 1.0};

  // Steps through Alice's measurement (and the tap when it precedes her).
  std::size_t through_alice = 0;
  while (!std::holds_alternative<protocols::MeasureStep>(steps[through_alice])) ++through_alice;
  ++through_alice;
  for (const protocols::Branch& b : protocols::evolve(std::span(steps).first(through_alice), reg).branches)
    report.post_alice.emplace_back(b.outcomes[0], b.state);

  const auto& corrections = protocols::correction_table(spec.protocol);
  const protocols::Evolution ev = protocols::evolve(steps, reg);
  const Labels eve_only = {eve};
  for (const protocols::Branch& b : ev.branches) {
    AttackBranch ab{b.outcomes, b.probability, b.state, schmidt_rank(b.state, eve_only),
                    reduced_density(b.state, eve_only), std::nullopt};
    if (b.outcomes.size() == 2) {
      const auto it = corrections.find({b.outcomes[0], b.outcomes[1]});
      if (it != corrections.end()) {
        const PureState fixed = apply_unitary(b.state, it->second.unitary, def.charlie_qubits);
        const DensityMatrix rho_c = reduced_density(fixed, def.charlie_qubits);
        ab.charlie_fidelity = std::min(1.0, rho_c.expectation(secret));
        report.min_charlie_fidelity = std::min(report.min_charlie_fidelity, *ab.charlie_fidelity);
      }
    }
    report.all_product = report.all_product && ab.charlie_eve_schmidt_rank == 1;
    report.branches.push_back(std::move(ab));
  }
  return report;
}

/// max over branches of the trace distance between Eve's outcome-conditioned
/// states under the two secrets. Branches are matched by outcome indices.
inline double eve_information(const AttackSpec& spec, const PureState& secret_1, const PureState& secret_2) {
  const AttackReport r1 = run_attack(spec, secret_1);
  const AttackReport r2 = run_attack(spec, secret_2);
  double worst = 0.0;
  for (const AttackBranch& b1 : r1.branches) {
    const auto it = std::find_if(r2.branches.begin(), r2.branches.end(), [&](const AttackBranch& b2) { return b2.outcomes == b1.outcomes; });
    if (it == r2.branches.end()) {
      worst = 1.0;  // outcome possible for one secret only: perfectly distinguishing
      continue;
    }
    worst = std::max(worst, trace_distance(b1.eve, it->eve));
  }
  return worst;
}

/// Probability-weighted state of `keep` after the first `num_steps` honest
/// steps (no outcome conditioning).
inline DensityMatrix unconditional_state(ProtocolId id, const PureState& secret, std::size_t num_steps, const Labels& keep) {
  const auto& def = protocols::definition(id);
  const protocols::Evolution ev = protocols::evolve(protocols::first_steps(def, num_steps), protocols::prepare_register(def, secret));
  std::vector<std::pair<double, DensityMatrix>> parts;
  for (const protocols::Branch& b : ev.branches) parts.emplace_back(b.probability, reduced_density(b.state, keep));
  return DensityMatrix::mixture(parts);
}

inline Labels qubits_of(ProtocolId id, Party party) {
  Labels out;
  for (const auto& [q, p] : protocols::definition(id).ownership)
    if (p == party) out.push_back(q);
  return out;
}

struct BlindnessStage {
  std::size_t steps_done = 0;
  double trace_distance = 0.0;
};

/// Trace distance between the party's unconditional states under two
/// secrets, at every stage where all of its qubits are still unmeasured.
inline std::vector<BlindnessStage> party_blindness_stages(ProtocolId id, Party party, const PureState& secret_1,
                                                          const PureState& secret_2) {
  if (party != Party::kBob && party != Party::kCharlie)
    throw Error(ErrorCode::kInvalidArgument, "blindness is defined for Bob and Charlie");
  const auto& def = protocols::definition(id);
  const Labels keep = qubits_of(id, party);
  std::vector<BlindnessStage> out;
  std::vector<QubitLabel> measured;
  for (std::size_t n = 0; n <= def.steps.size(); ++n) {
    if (n > 0)
      if (const auto* m = std::get_if<protocols::MeasureStep>(&def.steps[n - 1]))
        measured.insert(measured.end(), m->targets.begin(), m->targets.end());
    const bool present = std::none_of(keep.begin(), keep.end(), [&](QubitLabel q) {
      return std::find(measured.begin(), measured.end(), q) != measured.end();
    });
    if (!present) break;
    out.push_back({n, trace_distance(unconditional_state(id, secret_1, n, keep), unconditional_state(id, secret_2, n, keep))});
  }
  return out;
}

inline double party_blindness(ProtocolId id, Party party, const PureState& secret_1, const PureState& secret_2) {
  double worst = 0.0;
  for (const BlindnessStage& s : party_blindness_stages(id, party, secret_1, secret_2)) worst = std::max(worst, s.trace_distance);
  return worst;
}

struct AttackScenario {
  std::string name;
  AttackSpec spec;
  /// True for the scenarios the security claims cover; other results are
  /// observations only.
  bool claimed_secure = false;
  std::string note;
};

/// The analysed taps, plus nearby variants reported without expectations.
inline std::vector<AttackScenario> attack_scenarios() {
  std::vector<AttackScenario> out;
  out.push_back({"c4-single/tap2", make_attack(ProtocolId::kC4Single, 2), true, "CNOT onto |0> ancilla at the start"});
  out.push_back({"c4-entangled/tap4-after-conversion",
                 make_attack(ProtocolId::kC4Entangled, 4, AttackKind::kCnotX, AttackTiming::kBeforeBob), true,
                 "X-basis tap on Bob's qubit after the joint conversion"});
  out.push_back({"c5-single/tap3", make_attack(ProtocolId::kC5Single, 3, AttackKind::kCnotX), true,
                 "X-basis tap on Bob's qubit 3 at the start"});
  out.push_back({"c5-single/tap3-z", make_attack(ProtocolId::kC5Single, 3), false, "Z-basis CNOT on qubit 3"});
  out.push_back({"c4-entangled/tap4-start", make_attack(ProtocolId::kC4Entangled, 4), false,
                 "Z-basis CNOT on qubit 4 before Alice measures"});
  return out;
}

/// Default AttackSpec for a protocol/tap pair: the analysed variant when one
/// exists, otherwise a start-of-protocol CNOT.
inline AttackSpec default_attack(ProtocolId id, int tapped) {
  for (const AttackScenario& s : attack_scenarios())
    if (s.claimed_secure && s.spec.protocol == id && s.spec.tapped_qubit == QubitLabel(tapped)) return s.spec;
  return make_attack(id, tapped);
}

/// Truncated control: c4-single without Bob's measurement, Eve copying
/// Charlie's qubit 4.
inline AttackSpec truncated_control_attack() {
  AttackSpec spec = make_attack(ProtocolId::kC4Single, 4);
  spec.skip_bob_measurement = true;
  return spec;
}

}  // namespace qis::security
