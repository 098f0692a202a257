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
#include <string>
#include <string_view>

#include "qis/core/state.hpp"
#include "qis/core/types.hpp"

namespace qis::channels {

/// (|000> + sign |111>) / sqrt(2) on qubits 1,2,3.
inline PureState make_ghz3(int sign = +1) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::kInvalidArgument, "GHZ sign must be +1 or -1");
  return PureState::from_terms(numbered_labels(3), {{1.0, "000"}, {double(sign), "111"}});
}

/// (|0...0> + sign |1...1>) / sqrt(2) on qubits 1..n.
inline PureState make_ghz(int n, int sign = +1) {
  if (n < 2 || n > static_cast<int>(tol::kMaxQubits)) throw Error(ErrorCode::kInvalidArgument, "GHZ size out of range");
  const std::string zeros(static_cast<std::size_t>(n), '0');
  const std::string ones(static_cast<std::size_t>(n), '1');
  return PureState::from_terms(numbered_labels(n), {{1.0, zeros}, {double(sign), ones}});
}

/// (|0000> + |0110> + |1001> - |1111>) / 2 on qubits 1..4.
inline PureState make_c4() {
  return PureState::from_terms(numbered_labels(4), {{1.0, "0000"}, {1.0, "0110"}, {1.0, "1001"}, {-1.0, "1111"}});
}

/// (|00000> + |00111> + |11101> + |11010>) / 2 on qubits 1..5.
inline PureState make_c5() {
  return PureState::from_terms(numbered_labels(5), {{1.0, "00000"}, {1.0, "00111"}, {1.0, "11101"}, {1.0, "11010"}});
}

/// Literal expansion of 2^{-n/2} prod_a (|0>_a Z_{a+1} + |1>_a), Z_{n+1} = 1.
/// Qubit a in |0> pushes a phase (-1)^{x_{a+1}} onto its right neighbour.
inline PureState make_cluster_generic(int n) {
  if (n < 2 || n > 10) throw Error(ErrorCode::kInvalidArgument, "cluster size must be in [2, 10]");
  const std::size_t dim = std::size_t{1} << n;
  const double scale = std::pow(2.0, -0.5 * n);
  Vector v(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    auto bit = [&](int a) { return (x >> (n - a)) & 1U; };  // a is 1-based
    int parity = 0;
    for (int a = 1; a < n; ++a)
      if (bit(a) == 0 && bit(a + 1) == 1) parity ^= 1;
    v[x] = parity ? -scale : scale;
  }
  return PureState(numbered_labels(n), v);
}

enum class WReading {
  /// Third ket read as |100>: 1/2|001> + 1/2|010> + 1/sqrt(2)|100>.
  kCorrected,
  /// Kets exactly as printed, with |001> twice. Not a unit vector.
  kAsPrinted,
};

/// Asymmetric W channel on qubits 1,2,3 (constructed only; no protocol uses it).
/// The printed form repeats |001>, which leaves a non-normalized vector with
/// two distinct kets; kAsPrinted is therefore rejected.
inline PureState make_asymmetric_w(WReading reading = WReading::kCorrected) {
  const double r = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(8);
  v[basis_index("001")] += 0.5;
  v[basis_index("010")] += 0.5;
  v[basis_index(reading == WReading::kCorrected ? "100" : "001")] += r;
  return PureState(numbered_labels(3), v);
}

/// Stable channel names: "ghz3", "c4", "c5", "cluster:<n>", "w-asym".
inline PureState channel_by_name(std::string_view name) {
  if (name == "ghz3") return make_ghz3();
  if (name == "c4") return make_c4();
  if (name == "c5") return make_c5();
  if (name == "w-asym") return make_asymmetric_w();
  constexpr std::string_view prefix = "cluster:";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string digits(name.substr(prefix.size()));
    if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::kParse, "bad cluster size in '" + std::string(name) + "'");
    return make_cluster_generic(std::stoi(digits));
  }
  throw Error(ErrorCode::kParse, "unknown channel '" + std::string(name) + "'");
}

}  // namespace qis::channels
