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
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

#include "qis/core/state.hpp"

namespace qis {

/// Reproducible generator: mt19937_64 (fully specified by the standard) with
/// hand-rolled uniform and Box-Muller draws, so a seed produces the same
/// numbers under every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; uses one fresh pair per call.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Gaussian complex amplitude (re, im drawn in that order).
  Amplitude complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
};

/// Uniform random state on the unit sphere of the span of the listed basis
/// indices (normalized complex Gaussian coefficients, drawn in index order).
inline PureState random_state(Rng& rng, Labels labels, std::span<const std::size_t> support) {
  Vector v = Vector::Zero(std::size_t{1} << labels.size());
  for (std::size_t idx : support) v[idx] = rng.complex_normal();
  return PureState::normalized(std::move(labels), std::move(v));
}

inline PureState random_state(Rng& rng, Labels labels) {
  std::vector<std::size_t> all(std::size_t{1} << labels.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return random_state(rng, std::move(labels), all);
}

}  // namespace qis
