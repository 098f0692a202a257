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
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qis/protocols/corrections.hpp"
#include "qis/protocols/definition.hpp"
#include "qis/protocols/engine.hpp"

namespace qis::protocols {

struct ClassicalMessage {
  Party from;
  Party to;
  int bits = 1;
  std::size_t payload = 0;  // rank of the outcome among the sender's possible outcomes

  bool operator==(const ClassicalMessage&) const = default;
};

struct BranchRecord {
  std::size_t alice_outcome = 0;
  std::size_t bob_outcome = 0;
  double probability = 0.0;
  std::vector<ClassicalMessage> messages;
  PureState charlie_pre_correction;
  UnitaryOp correction;
  PureState charlie_final;
  double fidelity = 0.0;
};

/// An enumerated outcome with probability <= 1e-12.
struct ZeroOutcome {
  Party party;
  std::optional<std::size_t> alice_outcome;  // set for Bob's outcomes
  std::size_t outcome = 0;
  double probability = 0.0;
  bool completion_added = false;
};

using CbitTotals = std::map<std::pair<Party, Party>, int>;

struct ProtocolReport {
  ProtocolId protocol;
  PureState secret;
  Ownership ownership;
  std::vector<BranchRecord> branches;
  std::vector<ZeroOutcome> zero_outcomes;
  CbitTotals cbit_totals;
  double probability_sum = 0.0;
  double min_fidelity = 1.0;
  double tolerance = tol::kNormalization;
  bool all_fidelities_ok = false;
};

/// ceil(log2(n)) with a floor of one bit.
inline int bits_for(std::size_t n) {
  int bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return std::max(bits, 1);
}

/// Bits per directed pair in one run. Every branch sends the same number of
/// bits per sender; the maximum is taken so a mismatch cannot hide.
inline CbitTotals cbit_account(const ProtocolReport& report) {
  CbitTotals totals;
  for (const BranchRecord& b : report.branches) {
    CbitTotals branch;
    for (const ClassicalMessage& m : b.messages) branch[{m.from, m.to}] += m.bits;
    for (const auto& [pair, bits] : branch) totals[pair] = std::max(totals[pair], bits);
  }
  return totals;
}

/// Full enumeration of one protocol run on `secret`.
inline ProtocolReport run_protocol(ProtocolId id, const PureState& secret, double tolerance = tol::kNormalization) {
  const ProtocolDefinition& def = definition(id);
  const PureState reg = prepare_register(def, secret);
  const Evolution ev = evolve(def.steps, reg);
  const CorrectionTable& corrections = correction_table(id);

  ProtocolReport report{id, secret, def.ownership, {}, {}, {}, 0.0, 1.0, tolerance, false};

  const auto* alice_step = &std::get<MeasureStep>(def.steps.front());
  const MeasureStep* bob_step = nullptr;
  for (const Step& s : def.steps)
    if (const auto* m = std::get_if<MeasureStep>(&s); m && m->party == Party::kBob) bob_step = m;

  // Possible outcomes per sender, for the message encoding.
  std::vector<std::size_t> alice_possible;
  std::map<std::size_t, std::vector<std::size_t>> bob_possible;
  for (const Branch& b : ev.branches) {
    if (alice_possible.empty() || alice_possible.back() != b.outcomes[0]) alice_possible.push_back(b.outcomes[0]);
    bob_possible[b.outcomes[0]].push_back(b.outcomes[1]);
  }
  auto rank = [](const std::vector<std::size_t>& v, std::size_t x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
  };

  bool completions_silent = true;
  for (const ImpossibleOutcome& z : ev.impossible) {
    const Party who = z.measurement == 0 ? alice_step->party : bob_step->party;
    std::optional<std::size_t> prefix;
    if (!z.prefix.empty()) prefix = z.prefix[0];
    report.zero_outcomes.push_back({who, prefix, z.index, z.probability, z.completion_added});
  }
  // A completion-added vector that carried weight would show up as a branch.
  for (const Branch& b : ev.branches)
    if (alice_step->basis.is_completion(b.outcomes[0]) || bob_step->basis.is_completion(b.outcomes[1]))
      completions_silent = false;

  for (const Branch& b : ev.branches) {
    const std::size_t a = b.outcomes[0];
    const std::size_t o = b.outcomes[1];
    const auto it = corrections.find({a, o});
    if (it == corrections.end()) throw Error(ErrorCode::kInconsistentImages, "branch missing from correction table");
    PureState pre = b.state.reordered(def.charlie_qubits);
    PureState fin = apply_unitary(pre, it->second.unitary, def.charlie_qubits);
    const double f = std::min(1.0, fidelity(fin, secret));
    BranchRecord rec{a, o, b.probability,
                     {{Party::kAlice, Party::kCharlie, bits_for(alice_possible.size()), rank(alice_possible, a)},
                      {Party::kBob, Party::kCharlie, bits_for(bob_possible[a].size()), rank(bob_possible[a], o)}},
                     std::move(pre), it->second.unitary, std::move(fin), f};
    report.probability_sum += b.probability;
    report.min_fidelity = std::min(report.min_fidelity, f);
    report.branches.push_back(std::move(rec));
  }
  report.cbit_totals = cbit_account(report);
  report.all_fidelities_ok = completions_silent && std::abs(report.probability_sum - 1.0) <= tolerance &&
                             report.min_fidelity >= 1.0 - tolerance;
  return report;
}

inline ProtocolReport run_hbb_ghz(const PureState& secret) { return run_protocol(ProtocolId::kHbbGhz, secret); }
inline ProtocolReport run_c4_single(const PureState& secret) { return run_protocol(ProtocolId::kC4Single, secret); }
inline ProtocolReport run_c4_entangled(const PureState& secret) { return run_protocol(ProtocolId::kC4Entangled, secret); }
inline ProtocolReport run_c5_single(const PureState& secret) { return run_protocol(ProtocolId::kC5Single, secret); }
inline ProtocolReport run_c5_arbitrary(const PureState& secret) { return run_protocol(ProtocolId::kC5Arbitrary, secret); }

/// Secret-qubit label convention for a secret handed in on generic labels.
inline PureState as_secret(ProtocolId id, const Vector& amplitudes) {
  return PureState(definition(id).secret_labels, amplitudes);
}

}  // namespace qis::protocols
