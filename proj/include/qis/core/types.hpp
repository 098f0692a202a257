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

#include <Eigen/Dense>
#include <compare>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qis {

using Amplitude = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Numerical thresholds shared by every module.
namespace tol {
/// Branches at or below this probability are treated as impossible.
inline constexpr double kZeroProbability = 1e-12;
/// Normalization, orthogonality, Hermiticity and unitarity slack.
inline constexpr double kNormalization = 1e-10;
/// Singular values above this count towards the Schmidt rank.
inline constexpr double kRank = 1e-9;
/// Smallest eigenvalue tolerated in a density matrix.
inline constexpr double kPsd = 1e-9;
/// Largest register the dense core accepts.
inline constexpr std::size_t kMaxQubits = 12;
}  // namespace tol

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kUnknownQubit,
  kDuplicateQubit,
  kNotNormalized,
  kNotUnitary,
  kNotOrthonormal,
  kIncompleteBasis,
  kZeroProbability,
  kInconsistentImages,
  kPreconditionViolated,
  kSearchBudget,
  kParse,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kUnknownQubit: return "unknown-qubit";
    case ErrorCode::kDuplicateQubit: return "duplicate-qubit";
    case ErrorCode::kNotNormalized: return "not-normalized";
    case ErrorCode::kNotUnitary: return "not-unitary";
    case ErrorCode::kNotOrthonormal: return "not-orthonormal";
    case ErrorCode::kIncompleteBasis: return "incomplete-basis";
    case ErrorCode::kZeroProbability: return "zero-probability";
    case ErrorCode::kInconsistentImages: return "inconsistent-images";
    case ErrorCode::kPreconditionViolated: return "precondition-violated";
    case ErrorCode::kSearchBudget: return "search-budget";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Names one qubit of a register. Channel qubits use their 1-based
/// subscript; the secret qubits and Eve's ancilla get reserved ids.
class QubitLabel {
 public:
  constexpr QubitLabel() = default;
  constexpr explicit QubitLabel(int id) : id_(id) {}

  static constexpr QubitLabel secret() { return QubitLabel(kSecretA); }
  static constexpr QubitLabel secret_prime() { return QubitLabel(kSecretAPrime); }
  static constexpr QubitLabel eve() { return QubitLabel(kEve); }

  constexpr int id() const { return id_; }

  std::string name() const {
    switch (id_) {
      case kSecretA: return "a";
      case kSecretAPrime: return "a'";
      case kEve: return "E";
      default: return std::to_string(id_);
    }
  }

  static QubitLabel parse(std::string_view text) {
    if (text == "a") return secret();
    if (text == "a'") return secret_prime();
    if (text == "E") return eve();
    if (text.empty()) throw Error(ErrorCode::kParse, "empty qubit label");
    int value = 0;
    for (char c : text) {
      if (c < '0' || c > '9') throw Error(ErrorCode::kParse, "bad qubit label '" + std::string(text) + "'");
      value = value * 10 + (c - '0');
      if (value >= kSecretA) throw Error(ErrorCode::kParse, "qubit label out of range");
    }
    if (value < 1) throw Error(ErrorCode::kParse, "qubit labels are 1-based");
    return QubitLabel(value);
  }

  friend constexpr auto operator<=>(QubitLabel, QubitLabel) = default;

 private:
  static constexpr int kSecretA = 1000;
  static constexpr int kSecretAPrime = 1001;
  static constexpr int kEve = 2000;

  int id_ = 0;
};

using Labels = std::vector<QubitLabel>;

/// Channel labels 1..n.
inline Labels numbered_labels(int n) {
  Labels out;
  for (int i = 1; i <= n; ++i) out.emplace_back(i);
  return out;
}

inline std::string join_names(const Labels& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += labels[i].name();
  }
  return out;
}

}  // namespace qis
