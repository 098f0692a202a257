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

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qis/core/measurement.hpp"
#include "qis/protocols/definition.hpp"

namespace qis::protocols {

/// One path through every measurement step; `outcomes` holds basis indices.
struct Branch {
  std::vector<std::size_t> outcomes;
  double probability = 0.0;
  PureState state;
};

/// A measurement outcome that never occurs given the preceding outcomes.
struct ImpossibleOutcome {
  std::vector<std::size_t> prefix;  // outcomes of earlier measurements
  std::size_t measurement = 0;      // which measurement (0 = first)
  std::size_t index = 0;
  double probability = 0.0;         // conditional on the prefix
  bool completion_added = false;
};

struct Evolution {
  std::vector<Branch> branches;
  std::vector<ImpossibleOutcome> impossible;
};

namespace detail {

inline void evolve_from(std::span<const Step> steps, Branch branch, std::size_t measurement, Evolution& out) {
  if (steps.empty()) {
    out.branches.push_back(std::move(branch));
    return;
  }
  const Step& step = steps.front();
  if (const auto* u = std::get_if<UnitaryStep>(&step)) {
    branch.state = apply_unitary(branch.state, u->op, u->targets);
    evolve_from(steps.subspan(1), std::move(branch), measurement, out);
    return;
  }
  const auto& m = std::get<MeasureStep>(step);
  for (MeasurementOutcome& o : enumerate_measurement(branch.state, m.basis, m.targets)) {
    if (!o.possible()) {
      out.impossible.push_back({branch.outcomes, measurement, o.index, o.probability, o.completion_added});
      continue;
    }
    Branch next{branch.outcomes, branch.probability * o.probability, std::move(*o.post_state)};
    next.outcomes.push_back(o.index);
    evolve_from(steps.subspan(1), std::move(next), measurement + 1, out);
  }
}

}  // namespace detail

/// Exhaustive enumeration: measurement outcomes in basis order, depth first,
/// so branches come out sorted by (first outcome, second outcome, ...).
inline Evolution evolve(std::span<const Step> steps, const PureState& initial) {
  Evolution out;
  detail::evolve_from(steps, Branch{{}, 1.0, initial}, 0, out);
  return out;
}

inline std::size_t count_measurements(std::span<const Step> steps) {
  std::size_t n = 0;
  for (const Step& s : steps) n += std::holds_alternative<MeasureStep>(s) ? 1 : 0;
  return n;
}

/// Follows one path. Returns nullopt when the path has probability zero.
inline std::optional<Branch> follow(std::span<const Step> steps, const PureState& initial,
                                    std::span<const std::size_t> outcomes) {
  if (outcomes.size() != count_measurements(steps))
    throw Error(ErrorCode::kInvalidArgument, "need one outcome per measurement step");
  Branch b{{}, 1.0, initial};
  std::size_t k = 0;
  for (const Step& step : steps) {
    if (const auto* u = std::get_if<UnitaryStep>(&step)) {
      b.state = apply_unitary(b.state, u->op, u->targets);
      continue;
    }
    const auto& m = std::get<MeasureStep>(step);
    const std::size_t idx = outcomes[k++];
    if (idx >= m.basis.size()) throw Error(ErrorCode::kInvalidArgument, "outcome index out of range");
    Projection p = project(b.state, m.basis.vector(idx), m.targets);
    if (!p.post_state) return std::nullopt;
    b.probability *= p.probability;
    b.state = std::move(*p.post_state);
    b.outcomes.push_back(idx);
  }
  return b;
}

/// Unnormalized image sqrt(p) |post>: linear in the initial state, so images
/// of basis secrets can be superposed.
inline Vector branch_image(std::span<const Step> steps, const PureState& initial, std::span<const std::size_t> outcomes,
                           std::size_t residual_dim) {
  std::optional<Branch> b = follow(steps, initial, outcomes);
  if (!b) return Vector::Zero(residual_dim);
  return std::sqrt(b->probability) * b->state.amplitudes();
}

/// The first `n` steps of a protocol (used to stop after Alice, etc.).
inline std::span<const Step> first_steps(const ProtocolDefinition& def, std::size_t n) {
  return std::span<const Step>(def.steps).first(std::min(n, def.steps.size()));
}

/// Number of steps up to and including the k-th measurement (0-based).
inline std::size_t steps_through_measurement(const ProtocolDefinition& def, std::size_t k) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < def.steps.size(); ++i)
    if (std::holds_alternative<MeasureStep>(def.steps[i]) && seen++ == k) return i + 1;
  throw Error(ErrorCode::kInvalidArgument, "protocol has fewer measurements");
}

}  // namespace qis::protocols
