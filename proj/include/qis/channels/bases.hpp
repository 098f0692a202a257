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
#include <string>
#include <string_view>
#include <vector>

#include "qis/core/measurement.hpp"
#include "qis/core/state.hpp"

namespace qis::channels {

/// Phi+, Phi-, Psi+, Psi- (normalized), in that order.
inline MeasurementBasis bell_basis() {
  return MeasurementBasis::from_terms(2, {
                                             {{1.0, "00"}, {1.0, "11"}},
                                             {{1.0, "00"}, {-1.0, "11"}},
                                             {{1.0, "01"}, {1.0, "10"}},
                                             {{1.0, "01"}, {-1.0, "10"}},
                                         });
}

/// (|0> + |1>)/sqrt2, (|0> - |1>)/sqrt2.
inline MeasurementBasis pm_basis() {
  return MeasurementBasis::from_terms(1, {{{1.0, "0"}, {1.0, "1"}}, {{1.0, "0"}, {-1.0, "1"}}});
}

inline std::string flip_bits(std::string_view bits) {
  std::string out(bits);
  for (char& c : out) c = c == '0' ? '1' : '0';
  return out;
}

/// Three-qubit GHZ measurement listing (|h> +/- |~h>)/sqrt2 for each head h,
/// completed canonically. The default heads are the pairs used with |C4>
/// (000/111, 001/110); ghz3_basis_c5() lists 000/111 and 011/100.
inline MeasurementBasis ghz3_basis(std::array<std::string_view, 2> heads = {"000", "001"}) {
  std::vector<Vector> vectors;
  for (std::string_view h : heads) {
    const std::string partner = flip_bits(h);
    for (double sign : {1.0, -1.0}) {
      const Term terms[] = {{1.0, h}, {sign, partner}};
      vectors.push_back(PureState::from_terms(numbered_labels(3), terms).amplitudes());
    }
  }
  return MeasurementBasis(3, std::move(vectors)).completed();
}

inline MeasurementBasis ghz3_basis_c5() { return ghz3_basis({"000", "011"}); }

/// {|00>, |11>} on Bob's pair, completed with |01>, |10>.
inline MeasurementBasis bob_c4_partial_basis() {
  return MeasurementBasis::from_terms(2, {{{1.0, "00"}}, {{1.0, "11"}}}).completed();
}

/// (|00> +/- |10>)/sqrt2, (|01> +/- |11>)/sqrt2 on Bob's (3,4).
inline MeasurementBasis bob_c5_basis() {
  return MeasurementBasis::from_terms(2, {
                                             {{1.0, "00"}, {1.0, "10"}},
                                             {{1.0, "00"}, {-1.0, "10"}},
                                             {{1.0, "01"}, {1.0, "11"}},
                                             {{1.0, "01"}, {-1.0, "11"}},
                                         });
}

/// Alice's sixteen four-qubit vectors on (a, a', 1, 5), each 1/2 times four
/// signed kets. Four ket groups, four sign patterns per group.
inline MeasurementBasis table5_basis() {
  static constexpr std::array<std::array<std::string_view, 4>, 4> kGroups = {{
      {"0000", "1001", "0111", "1110"},
      {"0001", "1000", "0110", "1111"},
      {"0011", "1010", "0100", "1101"},
      {"0010", "1011", "0101", "1100"},
  }};
  static constexpr std::array<std::array<double, 4>, 4> kSigns = {{
      {1, 1, 1, 1},
      {1, 1, -1, -1},
      {1, -1, 1, -1},
      {1, -1, -1, 1},
  }};
  std::vector<Vector> vectors;
  for (const auto& kets : kGroups)
    for (const auto& signs : kSigns) {
      const Term terms[] = {{signs[0], kets[0]}, {signs[1], kets[1]}, {signs[2], kets[2]}, {signs[3], kets[3]}};
      vectors.push_back(PureState::from_terms(numbered_labels(4), terms).amplitudes());
    }
  return MeasurementBasis(4, std::move(vectors));
}

/// Stable basis names: "bell", "ghz3-basis", "ghz3-basis-c5", "pm",
/// "bob-c4", "bob-c5", "table5".
inline MeasurementBasis basis_by_name(std::string_view name) {
  if (name == "bell") return bell_basis();
  if (name == "ghz3-basis") return ghz3_basis();
  if (name == "ghz3-basis-c5") return ghz3_basis_c5();
  if (name == "pm") return pm_basis();
  if (name == "bob-c4") return bob_c4_partial_basis();
  if (name == "bob-c5") return bob_c5_basis();
  if (name == "table5") return table5_basis();
  throw Error(ErrorCode::kParse, "unknown basis '" + std::string(name) + "'");
}

}  // namespace qis::channels
