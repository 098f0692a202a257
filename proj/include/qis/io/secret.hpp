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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qis/core/random.hpp"
#include "qis/protocols/definition.hpp"

namespace qis::io {

/// Accepted slack on the squared norm of a typed-in secret before it is
/// rescaled to unit norm.
inline constexpr double kSecretNormSlack = 1e-6;

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline double parse_real(std::string_view s, std::string_view whole) {
  std::string t = trim(s);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    throw Error(ErrorCode::kParse, "malformed amplitude '" + std::string(whole) + "'");
  return v;
}

}  // namespace detail

/// Parses "0.6", "-0.8i", "i", "0.5+0.5i", "1e-3-2i".
inline Amplitude parse_complex(std::string_view text) {
  const std::string t = detail::trim(text);
  if (t.empty()) throw Error(ErrorCode::kParse, "empty amplitude");
  if (t.back() != 'i' && t.back() != 'j') return {detail::parse_real(t, text), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  auto imag_of = [&](std::string_view s) {
    const std::string u = detail::trim(s);
    if (u.empty() || u == "+") return 1.0;
    if (u == "-") return -1.0;
    return detail::parse_real(u, text);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {detail::parse_real(std::string_view(body).substr(0, split), text), imag_of(std::string_view(body).substr(split))};
}

inline Amplitude amplitude_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  throw Error(ErrorCode::kParse, "amplitude must be a number, [re, im] or a complex string");
}

/// Amplitude list (comma-separated or a JSON array), or "random:<seed>".
/// Random secrets are normalized complex Gaussians over the protocol's
/// admissible basis states, drawn with qis::Rng.
inline PureState parse_secret(std::string_view text, protocols::ProtocolId id) {
  const protocols::ProtocolDefinition& def = protocols::definition(id);
  const std::string t = detail::trim(text);
  constexpr std::string_view kRandom = "random:";
  if (t.rfind(kRandom, 0) == 0) {
    const std::string digits = t.substr(kRandom.size());
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
      throw Error(ErrorCode::kParse, "bad seed in '" + t + "'");
    Rng rng(seed);
    return random_state(rng, def.secret_labels, def.secret_support);
  }
  std::vector<Amplitude> amps;
  if (!t.empty() && t.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("secret is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw Error(ErrorCode::kParse, "secret must be a list");
    for (const auto& e : j) amps.push_back(amplitude_from_json(e));
  } else {
    std::size_t start = 0;
    while (start <= t.size()) {
      const std::size_t comma = t.find(',', start);
      amps.push_back(parse_complex(std::string_view(t).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  const std::size_t want = std::size_t{1} << def.secret_qubits();
  if (amps.size() != want)
    throw Error(ErrorCode::kDimensionMismatch, std::string(protocols::to_string(id)) + " expects " + std::to_string(want) +
                                                   " amplitudes, got " + std::to_string(amps.size()));
  Vector v(static_cast<Eigen::Index>(want));
  for (std::size_t i = 0; i < want; ++i) v[static_cast<Eigen::Index>(i)] = amps[i];
  const double n2 = v.squaredNorm();
  if (std::abs(n2 - 1.0) > kSecretNormSlack)
    throw Error(ErrorCode::kNotNormalized, "secret squared norm " + std::to_string(n2) + " is not within 1e-6 of 1");
  PureState secret = PureState::normalized(def.secret_labels, v);
  protocols::validate_secret(def, secret);
  return secret;
}

}  // namespace qis::io
