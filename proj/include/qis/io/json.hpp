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

// JSON encoding of states, matrices and reports. Amplitudes are [re, im]
// pairs at full precision so documents decode to the same doubles;
// probabilities and fidelities are rounded to 12 significant digits.

#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qis/core/density.hpp"
#include "qis/protocols/corrections.hpp"
#include "qis/protocols/published.hpp"
#include "qis/protocols/report.hpp"
#include "qis/security/attack.hpp"

namespace qis::io {

using nlohmann::json;

/// 12 significant digits; -0 becomes 0.
inline double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline double clean_zero(double x) { return x == 0.0 ? 0.0 : x; }

inline json to_json(Amplitude a) { return json::array({clean_zero(a.real()), clean_zero(a.imag())}); }

inline json labels_json(const Labels& labels) {
  json out = json::array();
  for (QubitLabel q : labels) out.push_back(q.name());
  return out;
}

inline Labels labels_from_json(const json& j) {
  Labels out;
  for (const auto& e : j) out.push_back(QubitLabel::parse(e.get<std::string>()));
  return out;
}

inline json to_json(const PureState& s) {
  json amps = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) amps.push_back(to_json(s.amplitude(i)));
  return {{"num_qubits", s.num_qubits()}, {"label_order", labels_json(s.labels())}, {"amplitudes", amps}};
}

inline Amplitude pair_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline PureState state_from_json(const json& j) {
  const Labels labels = labels_from_json(j.at("label_order"));
  if (j.at("num_qubits").get<std::size_t>() != labels.size()) throw Error(ErrorCode::kParse, "num_qubits vs label_order");
  const json& amps = j.at("amplitudes");
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<Eigen::Index>(i)] = pair_from_json(amps[i]);
  return PureState(labels, v);
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != n) throw Error(ErrorCode::kParse, "matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = pair_from_json(j[i][k]);
  }
  return m;
}

inline json to_json(const DensityMatrix& rho) {
  return {{"num_qubits", rho.num_qubits()}, {"label_order", labels_json(rho.labels())}, {"entries", to_json(rho.matrix())}};
}

// --- protocol reports -------------------------------------------------------

inline json to_json(const protocols::ClassicalMessage& m) {
  return {{"from", protocols::to_string(m.from)}, {"to", protocols::to_string(m.to)}, {"bits", m.bits}, {"payload", m.payload}};
}

inline json to_json(const protocols::BranchRecord& b) {
  json msgs = json::array();
  for (const auto& m : b.messages) msgs.push_back(to_json(m));
  return {{"alice_outcome", b.alice_outcome},
          {"bob_outcome", b.bob_outcome},
          {"probability", round12(b.probability)},
          {"messages", msgs},
          {"charlie_pre_correction", to_json(b.charlie_pre_correction)},
          {"correction", to_json(b.correction.matrix())},
          {"charlie_final", to_json(b.charlie_final)},
          {"fidelity", round12(b.fidelity)}};
}

inline json cbits_json(const protocols::CbitTotals& totals) {
  json out = json::array();
  for (const auto& [pair, bits] : totals)
    out.push_back({{"from", protocols::to_string(pair.first)}, {"to", protocols::to_string(pair.second)}, {"bits", bits}});
  return out;
}

inline json to_json(const protocols::ProtocolReport& r) {
  json ownership = json::array();
  for (const auto& [q, p] : r.ownership) ownership.push_back({{"qubit", q.name()}, {"party", protocols::to_string(p)}});
  json branches = json::array();
  for (const auto& b : r.branches) branches.push_back(to_json(b));
  json zeros = json::array();
  for (const auto& z : r.zero_outcomes) {
    json e = {{"party", protocols::to_string(z.party)}, {"outcome", z.outcome}, {"probability", round12(z.probability)},
              {"completion_added", z.completion_added}};
    e["alice_outcome"] = z.alice_outcome ? json(*z.alice_outcome) : json(nullptr);
    zeros.push_back(e);
  }
  return {{"protocol", protocols::to_string(r.protocol)},
          {"secret", to_json(r.secret)},
          {"ownership", ownership},
          {"branches", branches},
          {"zero_probability_outcomes", zeros},
          {"cbit_totals", cbits_json(r.cbit_totals)},
          {"probability_sum", round12(r.probability_sum)},
          {"min_fidelity", round12(r.min_fidelity)},
          {"tolerance", r.tolerance},
          {"all_fidelities_ok", r.all_fidelities_ok}};
}

inline protocols::ProtocolReport report_from_json(const json& j) {
  using namespace protocols;
  ProtocolReport r{parse_protocol(j.at("protocol").get<std::string>()), state_from_json(j.at("secret")), {}, {}, {}, {},
                   j.at("probability_sum").get<double>(), j.at("min_fidelity").get<double>(), j.at("tolerance").get<double>(),
                   j.at("all_fidelities_ok").get<bool>()};
  for (const auto& o : j.at("ownership"))
    r.ownership[QubitLabel::parse(o.at("qubit").get<std::string>())] = parse_party(o.at("party").get<std::string>());
  for (const auto& b : j.at("branches")) {
    std::vector<ClassicalMessage> msgs;
    for (const auto& m : b.at("messages"))
      msgs.push_back({parse_party(m.at("from").get<std::string>()), parse_party(m.at("to").get<std::string>()),
                      m.at("bits").get<int>(), m.at("payload").get<std::size_t>()});
    r.branches.push_back({b.at("alice_outcome").get<std::size_t>(), b.at("bob_outcome").get<std::size_t>(),
                          b.at("probability").get<double>(), std::move(msgs), state_from_json(b.at("charlie_pre_correction")),
                          UnitaryOp(matrix_from_json(b.at("correction"))), state_from_json(b.at("charlie_final")),
                          b.at("fidelity").get<double>()});
  }
  for (const auto& z : j.at("zero_probability_outcomes")) {
    std::optional<std::size_t> a;
    if (!z.at("alice_outcome").is_null()) a = z.at("alice_outcome").get<std::size_t>();
    r.zero_outcomes.push_back({parse_party(z.at("party").get<std::string>()), a, z.at("outcome").get<std::size_t>(),
                               z.at("probability").get<double>(), z.at("completion_added").get<bool>()});
  }
  for (const auto& c : j.at("cbit_totals"))
    r.cbit_totals[{parse_party(c.at("from").get<std::string>()), parse_party(c.at("to").get<std::string>())}] = c.at("bits").get<int>();
  return r;
}

// --- corrections ------------------------------------------------------------

inline json to_json(const protocols::CorrectionEntry& e) {
  return {{"alice_outcome", e.alice_outcome},
          {"bob_outcome", e.bob_outcome},
          {"matrix", to_json(e.unitary.matrix())},
          {"signed_permutation", e.signed_permutation},
          {"pauli", e.pauli ? json(*e.pauli) : json(nullptr)},
          {"verification_min_fidelity", round12(e.verification_min_fidelity)}};
}

// --- published-row checks--------------------------------------------------------

inline json to_json(const protocols::ClaimCheck& c) {
  json out = {{"row", c.id},
              {"outcome", c.outcome_text},
              {"published", c.published_text},
              {"engine", c.engine_text},
              {"match", c.match},
              {"max_deviation", round12(c.max_deviation)},
              {"probability", round12(c.probability)}};
  if (c.literal_order_deviation) out["literal_order_deviation"] = round12(*c.literal_order_deviation);
  return out;
}

inline json to_json(const protocols::FactoredVectorResult& r) {
  json names = json::object();
  const char* keys[] = {"psi+", "psi-", "phi+", "phi-"};
  for (std::size_t k = 0; k < 4; ++k) names[keys[k]] = r.assignment_names[k];
  const char* measured[] = {"a", "a'", "1", "5"};
  json place = json::object();
  const char* slots[] = {"bell_first", "bell_second", "pm_qubit", "computational_qubit"};
  for (std::size_t k = 0; k < 4; ++k) place[slots[k]] = measured[r.placement[k]];
  return {{"found", r.found},
          {"assignment", r.found ? names : json(nullptr)},
          {"placement", r.found ? place : json(nullptr)},
          {"overlap", round12(r.overlap)},
          {"raw_norm", round12(r.raw_norm)},
          {"solutions", r.solutions}};
}

// --- attacks ----------------------------------------------------------------

inline json to_json(const security::AttackReport& r) {
  json post = json::array();
  for (const auto& [a, s] : r.post_alice) post.push_back({{"alice_outcome", a}, {"state", to_json(s)}});
  json branches = json::array();
  for (const auto& b : r.branches) {
    json e = {{"outcomes", b.outcomes},
              {"probability", round12(b.probability)},
              {"state", to_json(b.state)},
              {"charlie_eve_schmidt_rank", b.charlie_eve_schmidt_rank},
              {"eve", to_json(b.eve)}};
    e["charlie_fidelity"] = b.charlie_fidelity ? json(round12(*b.charlie_fidelity)) : json(nullptr);
    branches.push_back(e);
  }
  return {{"protocol", protocols::to_string(r.spec.protocol)},
          {"tap", r.spec.tapped_qubit.name()},
          {"attack", security::to_string(r.spec.kind)},
          {"timing", security::to_string(r.spec.timing)},
          {"skip_bob_measurement", r.spec.skip_bob_measurement},
          {"attack_unitary", to_json(r.spec.attack_unitary.matrix())},
          {"secret", to_json(r.secret)},
          {"post_alice", post},
          {"branches", branches},
          {"all_product", r.all_product},
          {"min_charlie_fidelity", round12(r.min_charlie_fidelity)}};
}

}  // namespace qis::io
