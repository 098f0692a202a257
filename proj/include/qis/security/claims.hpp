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

// Published states of the attack scenarios, checked against run_attack.

#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "qis/protocols/published.hpp"
#include "qis/security/attack.hpp"

namespace qis::security {

/// Bob-Charlie-Eve state after the first Bell outcome with Eve copying qubit 2.
inline constexpr const char* kTapTwoExpression = "a(0000+1101)+b(0010-1111)";

struct StateClaimCheck {
  std::string expression;
  std::string labels;
  /// max_i |engine_i - printed_i| after normalizing the printed state (no
  /// phase freedom), or nullopt when the path is impossible.
  std::optional<double> amplitude_deviation;
  double aligned_deviation = 1.0;
};

inline StateClaimCheck compare_printed(const PureState& engine, const char* expression, const PureState& secret) {
  const auto terms = protocols::parse_kets(expression);
  const PureState printed(engine.labels(), protocols::evaluate_kets(terms, secret).normalized());
  return {expression, join_names(engine.labels()), (engine.amplitudes() - printed.amplitudes()).cwiseAbs().maxCoeff(),
          aligned_max_deviation(engine, printed)};
}

/// Compares the first post-Alice state of the qubit-2 CNOT attack on
/// c4-single with the printed four-qubit state on (2, 3, 4, E).
inline StateClaimCheck check_tap_two_state(const PureState& secret) {
  const AttackReport r = run_attack(make_attack(ProtocolId::kC4Single, 2), secret);
  for (const auto& [a, s] : r.post_alice)
    if (a == 0) return compare_printed(s.reordered({QubitLabel(2), QubitLabel(3), QubitLabel(4), QubitLabel::eve()}), kTapTwoExpression, secret);
  return {kTapTwoExpression, "2,3,4,E", std::nullopt, 1.0};
}

/// Charlie-Eve state after (Alice 0, Bob 0) for the given attack, read on
/// (Charlie's qubits..., E).
inline std::optional<PureState> charlie_eve_after_first_outcomes(const AttackSpec& spec, const PureState& secret) {
  const AttackReport r = run_attack(spec, secret);
  for (const AttackBranch& b : r.branches)
    if (b.outcomes.size() == 2 && b.outcomes[0] == 0 && b.outcomes[1] == 0) return b.state;
  return std::nullopt;
}

/// The c5-single X-basis tap: (alpha|0> + beta|1>)_C (|0> + |1>)_E / sqrt2.
inline StateClaimCheck check_c5_factorization(const PureState& secret) {
  const AttackSpec spec = default_attack(ProtocolId::kC5Single, 3);
  const std::optional<PureState> s = charlie_eve_after_first_outcomes(spec, secret);
  if (!s) return {"(a0+b1)(0+1)", "5,E", std::nullopt, 1.0};
  return compare_printed(s->reordered({QubitLabel(5), QubitLabel::eve()}), "a(00+01)+b(10+11)", secret);
}

/// c4-single tap 2, Alice 0, Bob |00>: (alpha|0> + beta|1>)_C |0>_E.
inline StateClaimCheck check_c4_product(const PureState& secret) {
  const std::optional<PureState> s = charlie_eve_after_first_outcomes(make_attack(ProtocolId::kC4Single, 2), secret);
  if (!s) return {"a00+b10", "4,E", std::nullopt, 1.0};
  return compare_printed(s->reordered({QubitLabel(4), QubitLabel::eve()}), "a00+b10", secret);
}

}  // namespace qis::security
