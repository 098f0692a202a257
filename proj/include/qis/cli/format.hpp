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

// Human-readable rendering for the text output format.

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "qis/core/density.hpp"
#include "qis/core/state.hpp"

namespace qis::cli {

inline std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x == 0.0 ? 0.0 : x);
  return buf;
}

inline std::string format_amplitude(Amplitude z) {
  constexpr double kTiny = 1e-12;
  const bool re = std::abs(z.real()) > kTiny, im = std::abs(z.imag()) > kTiny;
  if (!im) return fmt("%.6g", re ? z.real() : 0.0);
  if (!re) return fmt("%.6g", z.imag()) + "i";
  return "(" + fmt("%.6g", z.real()) + (z.imag() < 0 ? "-" : "+") + fmt("%.6g", std::abs(z.imag())) + "i)";
}

/// e.g. "0.6|0⟩ - 0.8i|1⟩ [4]".
inline std::string format_state(const PureState& s) {
  std::string out;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const Amplitude z = s.amplitude(i);
    if (std::abs(z) <= 1e-12) continue;
    std::string a = format_amplitude(z);
    if (!out.empty()) {
      out += a.front() == '-' ? " - " : " + ";
      if (a.front() == '-') a.erase(0, 1);
    }
    out += a + "|" + bitstring(i, s.num_qubits()) + "⟩";
  }
  if (out.empty()) out = "0";
  return out + " [" + join_names(s.labels()) + "]";
}

inline std::string format_matrix(const Matrix& m, const std::string& indent) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += indent + "[";
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      std::string cell = format_amplitude(m(i, k));
      if (cell.size() < 10) cell = std::string(10 - cell.size(), ' ') + cell;
      out += cell;
    }
    out += " ]\n";
  }
  return out;
}

inline std::string format_density(const DensityMatrix& rho, const std::string& indent) {
  return format_matrix(rho.matrix(), indent);
}

}  // namespace qis::cli
