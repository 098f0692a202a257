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
#include <span>
#include <vector>

#include "qis/core/types.hpp"

namespace qis {

/// Position of `label` in `reg`, or throws kUnknownQubit.
inline std::size_t position_of(std::span<const QubitLabel> reg, QubitLabel label) {
  auto it = std::find(reg.begin(), reg.end(), label);
  if (it == reg.end()) throw Error(ErrorCode::kUnknownQubit, "qubit " + label.name() + " not in register");
  return static_cast<std::size_t>(it - reg.begin());
}

inline void require_distinct(std::span<const QubitLabel> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) throw Error(ErrorCode::kDuplicateQubit, "qubit " + labels[i].name() + " repeated");
}

/// Splits a big-endian register index into (subset, rest) coordinates.
/// The subset keeps the caller's order; the rest keeps register order.
/// full_index(s, r) = subset_offset[s] + rest_offset[r].
class RegisterSplit {
 public:
  RegisterSplit(std::span<const QubitLabel> reg, std::span<const QubitLabel> subset) {
    require_distinct(subset);
    const std::size_t n = reg.size();
    std::vector<bool> in_subset(n, false);
    std::vector<std::size_t> subset_weights;
    for (QubitLabel q : subset) {
      std::size_t p = position_of(reg, q);
      in_subset[p] = true;
      subset_weights.push_back(std::size_t{1} << (n - 1 - p));
    }
    std::vector<std::size_t> rest_weights;
    for (std::size_t p = 0; p < n; ++p) {
      if (!in_subset[p]) {
        rest_weights.push_back(std::size_t{1} << (n - 1 - p));
        rest_labels_.push_back(reg[p]);
      }
    }
    subset_offset_ = offsets(subset_weights);
    rest_offset_ = offsets(rest_weights);
  }

  std::size_t subset_dim() const { return subset_offset_.size(); }
  std::size_t rest_dim() const { return rest_offset_.size(); }
  std::size_t full_index(std::size_t s, std::size_t r) const { return subset_offset_[s] + rest_offset_[r]; }
  const Labels& rest_labels() const { return rest_labels_; }

  /// M(s, r) = amplitudes[full_index(s, r)].
  Matrix gather(const Vector& amplitudes) const {
    Matrix m(subset_dim(), rest_dim());
    for (std::size_t s = 0; s < subset_dim(); ++s)
      for (std::size_t r = 0; r < rest_dim(); ++r) m(s, r) = amplitudes[full_index(s, r)];
    return m;
  }

  Vector scatter(const Matrix& m) const {
    Vector out(subset_dim() * rest_dim());
    for (std::size_t s = 0; s < subset_dim(); ++s)
      for (std::size_t r = 0; r < rest_dim(); ++r) out[full_index(s, r)] = m(s, r);
    return out;
  }

 private:
  // weights are MSB-first; offset table enumerates all bit patterns.
  static std::vector<std::size_t> offsets(const std::vector<std::size_t>& weights) {
    const std::size_t k = weights.size();
    std::vector<std::size_t> out(std::size_t{1} << k, 0);
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      std::size_t full = 0;
      for (std::size_t j = 0; j < k; ++j)
        if ((idx >> (k - 1 - j)) & 1U) full += weights[j];
      out[idx] = full;
    }
    return out;
  }

  std::vector<std::size_t> subset_offset_;
  std::vector<std::size_t> rest_offset_;
  Labels rest_labels_;
};

}  // namespace qis
