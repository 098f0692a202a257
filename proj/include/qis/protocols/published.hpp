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

// Published outcome/state rows and related claims, kept verbatim (in a small
// ASCII ket grammar) and checked against the engine.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qis/channels/bases.hpp"
#include "qis/core/random.hpp"
#include "qis/protocols/corrections.hpp"
#include "qis/protocols/engine.hpp"

namespace qis::protocols {

// ---------------------------------------------------------------------------
// Ket expressions. Grammar (whitespace ignored):
//   expr  := term+
//   term  := [+-]? sym? group
//   group := ket | '(' ket ([+-] ket)* ')'
//   sym   := a | b | g | m        (alpha, beta, gamma, mu)
//   ket   := [01]+
// e.g. "a(000+110)-b(001-111)".

enum class Symbol { kNone, kAlpha, kBeta, kGamma, kMu };

struct KetTerm {
  int sign = 1;
  Symbol symbol = Symbol::kNone;
  std::string ket;
};

inline std::vector<KetTerm> parse_kets(std::string_view text) {
  std::vector<KetTerm> out;
  std::size_t i = 0;
  auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  auto fail = [&](const char* what) {
    throw Error(ErrorCode::kParse, std::string(what) + " at offset " + std::to_string(i) + " in '" + std::string(text) + "'");
  };
  auto read_ket = [&] {
    std::string ket;
    while (i < text.size() && (text[i] == '0' || text[i] == '1')) ket += text[i++];
    if (ket.empty()) fail("expected ket");
    return ket;
  };
  skip();
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') sign = text[i++] == '-' ? -1 : 1;
    skip();
    Symbol sym = Symbol::kNone;
    if (i < text.size()) {
      switch (text[i]) {
        case 'a': sym = Symbol::kAlpha; ++i; break;
        case 'b': sym = Symbol::kBeta; ++i; break;
        case 'g': sym = Symbol::kGamma; ++i; break;
        case 'm': sym = Symbol::kMu; ++i; break;
        default: break;
      }
    }
    skip();
    if (i < text.size() && text[i] == '(') {
      ++i;
      int inner = 1;
      for (;;) {
        skip();
        out.push_back({sign * inner, sym, read_ket()});
        skip();
        if (i >= text.size()) fail("unclosed group");
        if (text[i] == ')') { ++i; break; }
        if (text[i] != '+' && text[i] != '-') fail("expected sign");
        inner = text[i++] == '-' ? -1 : 1;
      }
    } else {
      out.push_back({sign, sym, read_ket()});
    }
    skip();
  }
  if (out.empty()) fail("empty expression");
  const std::size_t width = out.front().ket.size();
  for (const KetTerm& t : out)
    if (t.ket.size() != width) throw Error(ErrorCode::kParse, "mixed ket widths in '" + std::string(text) + "'");
  return out;
}

/// Basis index of the secret amplitude a symbol names. Two-qubit secrets use
/// alpha|00> + gamma|01> + mu|10> + beta|11>.
inline std::size_t symbol_index(Symbol s, std::size_t secret_qubits) {
  const std::size_t last = (std::size_t{1} << secret_qubits) - 1;
  switch (s) {
    case Symbol::kAlpha: return 0;
    case Symbol::kBeta: return last;
    case Symbol::kGamma: return 1;
    case Symbol::kMu: return 2;
    case Symbol::kNone: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "term has no amplitude symbol");
}

/// Evaluates an expression for a concrete secret; the result is unnormalized.
inline Vector evaluate_kets(const std::vector<KetTerm>& terms, const PureState& secret) {
  Vector v = Vector::Zero(std::size_t{1} << terms.front().ket.size());
  for (const KetTerm& t : terms) {
    const Amplitude c = t.symbol == Symbol::kNone ? Amplitude(1.0) : secret.amplitude(symbol_index(t.symbol, secret.num_qubits()));
    v[basis_index(t.ket)] += double(t.sign) * c;
  }
  return v;
}

inline Symbol symbol_for_index(std::size_t index, std::size_t secret_qubits) {
  if (index == 0) return Symbol::kAlpha;
  if (index == (std::size_t{1} << secret_qubits) - 1) return Symbol::kBeta;
  return index == 1 ? Symbol::kGamma : Symbol::kMu;
}

inline std::string_view symbol_glyph(Symbol s) {
  switch (s) {
    case Symbol::kAlpha: return "α";
    case Symbol::kBeta: return "β";
    case Symbol::kGamma: return "γ";
    case Symbol::kMu: return "μ";
    case Symbol::kNone: break;
  }
  return "";
}

/// Renders terms as e.g. "α(|000⟩+|110⟩)−β(|001⟩−|111⟩)", grouping kets that
/// share a symbol and factoring out the sign of the first ket in each group.
inline std::string render_kets(const std::vector<KetTerm>& terms) {
  std::vector<Symbol> order;
  for (const KetTerm& t : terms)
    if (std::find(order.begin(), order.end(), t.symbol) == order.end()) order.push_back(t.symbol);
  std::string out;
  for (Symbol s : order) {
    std::vector<const KetTerm*> group;
    for (const KetTerm& t : terms)
      if (t.symbol == s) group.push_back(&t);
    const int lead = group.front()->sign;
    if (lead < 0) out += "−";
    else if (!out.empty()) out += "+";
    out += symbol_glyph(s);
    if (group.size() > 1) out += "(";
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (k > 0) out += group[k]->sign * lead < 0 ? "−" : "+";
      out += "|" + group[k]->ket + "⟩";
    }
    if (group.size() > 1) out += ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Claims: one published (outcomes -> state) statement each.

struct PublishedClaim {
  std::string id;            // e.g. "I.1", "IIA.bob-11"
  ProtocolId protocol;
  std::vector<std::size_t> outcomes;  // basis indices, Alice first
  std::string outcome_text;  // the measured vector as printed
  Labels labels;             // qubit order the expression is read in
  std::string expression;    // printed state, ket grammar above
  /// Printed subscript order when it differs from `labels` (diagnostic only).
  std::optional<Labels> literal_labels;
};

enum class TableId { kI, kII, kIII, kIV, kV };

inline constexpr std::array<TableId, 5> kAllTables = {TableId::kI, TableId::kII, TableId::kIII, TableId::kIV, TableId::kV};

inline std::string_view to_string(TableId t) {
  switch (t) {
    case TableId::kI: return "I";
    case TableId::kII: return "II";
    case TableId::kIII: return "III";
    case TableId::kIV: return "IV";
    case TableId::kV: return "V";
  }
  return "?";
}

inline TableId parse_table(std::string_view s) {
  for (TableId t : kAllTables)
    if (to_string(t) == s) return t;
  if (s == "1") return TableId::kI;
  if (s == "2") return TableId::kII;
  if (s == "3") return TableId::kIII;
  if (s == "4") return TableId::kIV;
  if (s == "5") return TableId::kV;
  throw Error(ErrorCode::kParse, "unknown table '" + std::string(s) + "' (expected I..V)");
}

namespace detail {

inline Labels qubits(std::initializer_list<int> ids) {
  Labels out;
  for (int i : ids) out.emplace_back(i);
  return out;
}

inline std::vector<PublishedClaim> build_table(TableId t) {
  std::vector<PublishedClaim> rows;
  auto add = [&](ProtocolId p, std::vector<std::size_t> outcomes, std::string outcome, Labels labels, std::string expr,
                 std::optional<Labels> literal = std::nullopt) {
    const std::string id = std::string(to_string(t)) + "." + std::to_string(rows.size() + 1);
    rows.push_back({id, p, std::move(outcomes), std::move(outcome), std::move(labels), std::move(expr), std::move(literal)});
  };
  const std::array<std::string, 4> c4_rows = {"a(000+110)+b(001-111)", "a(000+110)-b(001-111)",
                                              "a(001-111)+b(000+110)", "a(001-111)-b(000+110)"};
  switch (t) {
    case TableId::kI: {
      const std::array<std::string, 4> out = {"(|00⟩+|11⟩)/√2 on a1", "(|00⟩−|11⟩)/√2 on a1", "(|01⟩+|10⟩)/√2 on a1",
                                              "(|01⟩−|10⟩)/√2 on a1"};
      for (std::size_t r = 0; r < 4; ++r) add(ProtocolId::kC4Single, {r}, out[r], qubits({2, 3, 4}), c4_rows[r]);
      break;
    }
    case TableId::kII: {
      const std::array<std::string, 4> out = {"(|000⟩+|111⟩)/√2 on aa'1", "(|000⟩−|111⟩)/√2 on aa'1",
                                              "(|001⟩+|110⟩)/√2 on aa'1", "(|001⟩−|110⟩)/√2 on aa'1"};
      for (std::size_t r = 0; r < 4; ++r)
        add(ProtocolId::kC4Entangled, {r}, out[r], qubits({2, 3, 4}), c4_rows[r], qubits({4, 2, 3}));
      break;
    }
    case TableId::kIII: {
      const std::array<std::string, 4> out = {"(|000⟩+|111⟩)/√2 on a12", "(|000⟩−|111⟩)/√2 on a12",
                                              "(|011⟩+|100⟩)/√2 on a12", "(|011⟩−|100⟩)/√2 on a12"};
      const std::array<std::string, 4> st = {"a(000+111)+b(101+010)", "a(000+111)-b(101-010)",
                                             "a(101+010)+b(000+111)", "a(101+010)-b(000+111)"};
      for (std::size_t r = 0; r < 4; ++r) add(ProtocolId::kC5Single, {r}, out[r], qubits({3, 4, 5}), st[r]);
      break;
    }
    case TableId::kIV: {
      const std::array<std::string, 4> out = {"(|00⟩+|10⟩)/√2 on 34", "(|00⟩−|10⟩)/√2 on 34", "(|01⟩+|11⟩)/√2 on 34",
                                              "(|01⟩−|11⟩)/√2 on 34"};
      const std::array<std::string, 4> st = {"a0+b1", "a0-b1", "b0+a1", "b0-a1"};
      for (std::size_t r = 0; r < 4; ++r) add(ProtocolId::kC5Single, {0, r}, out[r], qubits({5}), st[r]);
      break;
    }
    case TableId::kV: {
      static constexpr std::array<std::array<const char*, 4>, 4> kMeasured = {{
          {"0000", "1001", "0111", "1110"},
          {"0001", "1000", "0110", "1111"},
          {"0011", "1010", "0100", "1101"},
          {"0010", "1011", "0101", "1100"},
      }};
      // Printed kets on (2,3,4) for alpha, mu, gamma, beta, per group.
      static constexpr std::array<std::array<const char*, 4>, 4> kState = {{
          {"000", "011", "110", "101"},
          {"011", "000", "101", "110"},
          {"110", "101", "000", "011"},
          {"101", "110", "011", "000"},
      }};
      static constexpr std::array<std::array<int, 4>, 4> kSigns = {{{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}}};
      const char syms[] = {'a', 'm', 'g', 'b'};
      std::size_t r = 0;
      for (std::size_t g = 0; g < 4; ++g)
        for (std::size_t s = 0; s < 4; ++s, ++r) {
          std::string outcome, expr;
          for (std::size_t k = 0; k < 4; ++k) {
            const char* sign = kSigns[s][k] < 0 ? "−" : (k ? "+" : "");
            outcome += std::string(sign) + "|" + kMeasured[g][k] + "⟩";
            expr += std::string(kSigns[s][k] < 0 ? "-" : (k ? "+" : "")) + syms[k] + kState[g][k];
          }
          add(ProtocolId::kC5Arbitrary, {r}, outcome + " on aa'15", qubits({2, 3, 4}), expr);
        }
      break;
    }
  }
  return rows;
}

}  // namespace detail

/// Rows exactly as printed, in table order.
inline const std::vector<PublishedClaim>& published_table(TableId t) {
  static const std::array<std::vector<PublishedClaim>, 5> all = {
      detail::build_table(TableId::kI), detail::build_table(TableId::kII), detail::build_table(TableId::kIII),
      detail::build_table(TableId::kIV), detail::build_table(TableId::kV)};
  return all[static_cast<std::size_t>(t)];
}

inline TableId table_for_protocol_rows(ProtocolId p) {
  switch (p) {
    case ProtocolId::kC4Single: return TableId::kI;
    case ProtocolId::kC4Entangled: return TableId::kII;
    case ProtocolId::kC5Single: return TableId::kIII;
    case ProtocolId::kC5Arbitrary: return TableId::kV;
    case ProtocolId::kHbbGhz: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "protocol has no published table");
}

/// Statements in the running text that pin a state after both measurements.
inline const std::vector<PublishedClaim>& published_prose_claims() {
  static const std::vector<PublishedClaim> claims = [] {
    using detail::qubits;
    std::vector<PublishedClaim> c;
    c.push_back({"IIA.bob-00", ProtocolId::kC4Single, {0, 0}, "Bob |00⟩ on 23", qubits({4}), "a0+b1", std::nullopt});
    c.push_back({"IIA.bob-11", ProtocolId::kC4Single, {0, 1}, "Bob |11⟩ on 23", qubits({4}), "a0-b1", std::nullopt});
    c.push_back({"IIB.bob-plus", ProtocolId::kC4Entangled, {0, 0}, "Bob (|0⟩+|1⟩)/√2 on 4", qubits({2, 3}), "a00+b11", std::nullopt});
    c.push_back({"IIB.bob-minus", ProtocolId::kC4Entangled, {0, 1}, "Bob (|0⟩−|1⟩)/√2 on 4", qubits({2, 3}), "a00-b11", std::nullopt});
    c.push_back({"IIIB.bob-plus", ProtocolId::kC5Arbitrary, {0, 0}, "Bob (|0⟩+|1⟩)/√2 on 2", qubits({3, 4}), "a00+m11+g10+b01", std::nullopt});
    c.push_back({"IIIB.bob-minus", ProtocolId::kC5Arbitrary, {0, 1}, "Bob (|0⟩−|1⟩)/√2 on 2", qubits({3, 4}), "a00-m11-g10+b01", std::nullopt});
    return c;
  }();
  return claims;
}

// ---------------------------------------------------------------------------
// Verification.

struct ClaimCheck {
  std::string id;
  std::string outcome_text;
  bool match = false;
  double max_deviation = 0.0;      // aligned max amplitude deviation, worst over test secrets
  std::string published_text;
  std::string engine_text;
  std::optional<double> literal_order_deviation;
  double probability = 0.0;        // of the path, for the generic secret
};

/// State of `claim.labels` after following the claim's outcomes on `secret`;
/// nullopt when the path has probability zero.
inline std::optional<Branch> claim_state(const PublishedClaim& claim, const PureState& secret) {
  const ProtocolDefinition& def = definition(claim.protocol);
  const std::size_t n = steps_through_measurement(def, claim.outcomes.size() - 1);
  std::optional<Branch> b = follow(first_steps(def, n), prepare_register(def, secret), claim.outcomes);
  if (b) b->state = b->state.reordered(claim.labels);
  return b;
}

/// Engine expression for a claim: images of the admissible basis secrets,
/// scaled so the largest entry has modulus one and rendered symbolically.
/// Falls back to "(non-symbolic)" if entries are not +-1 after scaling.
inline std::string engine_expression(const PublishedClaim& claim, const std::vector<KetTerm>& printed_terms) {
  const ProtocolDefinition& def = definition(claim.protocol);
  const std::size_t k = def.secret_qubits();
  std::vector<Symbol> symbols;
  for (const KetTerm& t : printed_terms)
    if (std::find(symbols.begin(), symbols.end(), t.symbol) == symbols.end()) symbols.push_back(t.symbol);
  for (std::size_t idx : def.secret_support) {
    const Symbol s = symbol_for_index(idx, k);
    if (std::find(symbols.begin(), symbols.end(), s) == symbols.end()) symbols.push_back(s);
  }
  std::vector<std::pair<Symbol, Vector>> images;
  double scale = 0.0;
  for (Symbol s : symbols) {
    if (s == Symbol::kNone) continue;
    std::optional<Branch> b = claim_state(claim, PureState::basis(def.secret_labels, symbol_index(s, k)));
    Vector v = b ? Vector(std::sqrt(b->probability) * b->state.amplitudes()) : Vector::Zero(std::size_t{1} << claim.labels.size());
    scale = std::max(scale, v.cwiseAbs().maxCoeff());
    images.emplace_back(s, std::move(v));
  }
  if (scale <= 0.0) return "0";
  // Fix the global phase on the printed first term where possible.
  Amplitude phase = 0.0;
  if (!printed_terms.empty())
    for (const auto& [s, v] : images)
      if (s == printed_terms.front().symbol) phase = v[basis_index(printed_terms.front().ket)];
  if (std::abs(phase) < 1e-9 * scale)
    for (const auto& [s, v] : images)
      for (Eigen::Index i = 0; i < v.size() && std::abs(phase) < 1e-9 * scale; ++i) phase = v[i];
  phase /= std::abs(phase);
  if (printed_terms.front().sign < 0) phase = -phase;

  std::vector<KetTerm> terms;
  const std::size_t width = claim.labels.size();
  for (const auto& [s, v] : images) {
    std::vector<std::size_t> order;
    for (const KetTerm& t : printed_terms)
      if (t.symbol == s) order.push_back(basis_index(t.ket));
    for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i)
      if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
    for (std::size_t i : order) {
      const Amplitude z = v[i] / (scale * phase);
      if (std::abs(z) < 1e-9) continue;
      if (std::abs(z.imag()) > 1e-9 || std::abs(std::abs(z.real()) - 1.0) > 1e-9) return "(non-symbolic)";
      terms.push_back({z.real() > 0 ? 1 : -1, s, bitstring(i, width)});
    }
  }
  return render_kets(terms);
}

/// Fixed test secrets for row checks: generic complex amplitudes in the
/// protocol's admissible subspace.
inline std::vector<PureState> claim_test_secrets(ProtocolId id) {
  const ProtocolDefinition& def = definition(id);
  Rng rng(0x7AB1E5ULL + static_cast<std::uint64_t>(id));
  std::vector<PureState> out;
  for (int i = 0; i < 3; ++i) out.push_back(random_state(rng, def.secret_labels, def.secret_support));
  return out;
}

inline ClaimCheck verify_claim(const PublishedClaim& claim, double tolerance = tol::kNormalization) {
  const std::vector<KetTerm> terms = parse_kets(claim.expression);
  if (terms.front().ket.size() != claim.labels.size())
    throw Error(ErrorCode::kDimensionMismatch, "claim " + claim.id + " ket width does not match its labels");
  ClaimCheck out;
  out.id = claim.id;
  out.outcome_text = claim.outcome_text;
  out.published_text = render_kets(terms);
  out.engine_text = engine_expression(claim, terms);
  double literal = 0.0;
  bool first = true;
  for (const PureState& secret : claim_test_secrets(claim.protocol)) {
    std::optional<Branch> b = claim_state(claim, secret);
    const Vector printed = evaluate_kets(terms, secret);
    if (!b || printed.norm() < 1e-12) {
      out.max_deviation = std::max(out.max_deviation, 1.0);
      continue;
    }
    if (first) out.probability = b->probability;
    first = false;
    const PureState expected(claim.labels, printed.normalized());
    out.max_deviation = std::max(out.max_deviation, aligned_max_deviation(b->state, expected));
    if (claim.literal_labels) {
      const PureState lit = PureState(*claim.literal_labels, printed.normalized()).reordered(claim.labels);
      literal = std::max(literal, aligned_max_deviation(b->state, lit));
    }
  }
  if (claim.literal_labels) out.literal_order_deviation = literal;
  out.match = out.max_deviation <= tolerance;
  return out;
}

inline std::vector<ClaimCheck> verify_against_paper_tables(std::span<const PublishedClaim> rows,
                                                           double tolerance = tol::kNormalization) {
  std::vector<ClaimCheck> out;
  for (const PublishedClaim& c : rows) out.push_back(verify_claim(c, tolerance));
  return out;
}

inline std::vector<ClaimCheck> verify_against_paper_tables(TableId t, double tolerance = tol::kNormalization) {
  return verify_against_paper_tables(std::span<const PublishedClaim>(published_table(t)), tolerance);
}

/// Every tabulated row that belongs to the protocol, in table order.
inline std::vector<ClaimCheck> verify_against_paper_tables(ProtocolId p, double tolerance = tol::kNormalization) {
  std::vector<ClaimCheck> out;
  for (TableId t : kAllTables)
    for (const PublishedClaim& c : published_table(t))
      if (c.protocol == p) out.push_back(verify_claim(c, tolerance));
  return out;
}

// ---------------------------------------------------------------------------
// Cbit counts stated per protocol: (Alice -> Charlie, Bob -> Charlie).

inline std::pair<int, int> stated_cbits(ProtocolId id) {
  switch (id) {
    case ProtocolId::kHbbGhz: return {2, 1};
    case ProtocolId::kC4Single: return {2, 1};
    case ProtocolId::kC4Entangled: return {2, 1};
    case ProtocolId::kC5Single: return {2, 2};
    case ProtocolId::kC5Arbitrary: return {4, 1};
  }
  return {0, 0};
}

// ---------------------------------------------------------------------------
// Factorized form of the first four-qubit measurement vector.

struct FactoredVectorResult {
  bool found = false;
  /// Bell vector (index into bell_basis: Phi+, Phi-, Psi+, Psi-) assigned to
  /// psi+, psi-, phi+, phi- respectively.
  std::array<std::size_t, 4> assignment{};
  std::array<std::string, 4> assignment_names{};
  /// Measured qubit (0 = a, 1 = a', 2 = qubit 1, 3 = qubit 5) holding each
  /// slot of the expression: Bell first, Bell second, +/- qubit, 0/1 qubit.
  std::array<std::size_t, 4> placement{};
  double overlap = 0.0;
  double raw_norm = 0.0;
  std::size_t solutions = 0;  // total satisfying (assignment, placement) pairs
};

inline std::string_view bell_name(std::size_t i) {
  static constexpr std::array<std::string_view, 4> kNames = {"(|00⟩+|11⟩)/√2", "(|00⟩−|11⟩)/√2", "(|01⟩+|10⟩)/√2",
                                                             "(|01⟩−|10⟩)/√2"};
  return kNames.at(i);
}

/// Expands (psi+ (+) + psi- (-)) |0> + (phi- (-) + phi+ (+)) |1> with
/// normalized Bell and (|0> +- |1>)/sqrt2 states for every assignment of the
/// four Bell vectors to the four names and every placement of the four slots
/// on the measured qubits, and compares with the first Table V vector.
inline FactoredVectorResult verify_eq9_decomposition() {
  const MeasurementBasis bell = channels::bell_basis();
  const MeasurementBasis pm = channels::pm_basis();
  const Vector target = channels::table5_basis().vector(0);
  Vector zero = Vector::Zero(2), one = Vector::Zero(2);
  zero[0] = 1.0;
  one[1] = 1.0;
  auto kron3 = [](const Vector& b, const Vector& p, const Vector& c) {
    Vector out(16);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 2; ++j)
        for (Eigen::Index k = 0; k < 2; ++k) out[i * 4 + j * 2 + k] = b[i] * p[j] * c[k];
    return out;
  };
  FactoredVectorResult result;
  std::array<std::size_t, 4> assign = {0, 1, 2, 3};
  do {
    const Vector& psi_p = bell.vector(assign[0]);
    const Vector& psi_m = bell.vector(assign[1]);
    const Vector& phi_p = bell.vector(assign[2]);
    const Vector& phi_m = bell.vector(assign[3]);
    const Vector expr = kron3(psi_p, pm.vector(0), zero) + kron3(psi_m, pm.vector(1), zero) +
                        kron3(phi_m, pm.vector(1), one) + kron3(phi_p, pm.vector(0), one);
    std::array<std::size_t, 4> place = {0, 1, 2, 3};
    do {
      // Slot s sits on measured qubit place[s]; big-endian on both sides.
      Vector moved = Vector::Zero(16);
      for (std::size_t x = 0; x < 16; ++x) {
        std::size_t y = 0;
        for (std::size_t s = 0; s < 4; ++s)
          if ((x >> (3 - s)) & 1U) y |= std::size_t{1} << (3 - place[s]);
        moved[y] = expr[x];
      }
      const double ov = std::abs(target.dot(moved.normalized()));
      if (ov >= 1.0 - tol::kNormalization) {
        if (!result.found) {
          result.found = true;
          result.assignment = assign;
          for (std::size_t k = 0; k < 4; ++k) result.assignment_names[k] = bell_name(assign[k]);
          result.placement = place;
          result.overlap = ov;
          result.raw_norm = expr.norm();
        }
        ++result.solutions;
      }
    } while (std::next_permutation(place.begin(), place.end()));
  } while (std::next_permutation(assign.begin(), assign.end()));
  if (!result.found) {
    result.raw_norm = 2.0;  // every assignment gives the same norm
  }
  return result;
}

// ---------------------------------------------------------------------------
// Collapsed Bob-Charlie state of the GHZ protocol: U (x) I (alpha|00> + beta|11>).

struct HbbReadingCheck {
  std::size_t alice_outcome = 0;
  /// U with (U (x) I)(alpha|00> + beta|11>) equal to the state, if any.
  std::optional<std::string> literal;
  /// Same with logical operators on the pair: X_L = X (x) X, Z_L = Z (x) I.
  std::optional<std::string> logical;
};

inline std::vector<HbbReadingCheck> check_hbb_readings() {
  const ProtocolDefinition& def = definition(ProtocolId::kHbbGhz);
  const Labels pair = detail::qubits({2, 3});
  const Matrix x = gates::pauli_x().matrix(), z = gates::pauli_z().matrix(), i2 = Matrix::Identity(2, 2);
  const std::array<std::pair<std::string, Matrix>, 4> literal = {{{"I", kron(i2, i2)},
                                                                  {"X", kron(x, i2)},
                                                                  {"iY", kron(gates::i_pauli_y().matrix(), i2)},
                                                                  {"Z", kron(z, i2)}}};
  const Matrix xl = kron(x, x), zl = kron(z, i2);
  const std::array<std::pair<std::string, Matrix>, 4> logical = {
      {{"I", kron(i2, i2)}, {"X", xl}, {"iY", zl * xl}, {"Z", zl}}};
  std::vector<HbbReadingCheck> out;
  for (const PureState& secret : claim_test_secrets(ProtocolId::kHbbGhz)) {
    Vector encoded = Vector::Zero(4);
    encoded[0] = secret.amplitude(0);
    encoded[3] = secret.amplitude(1);
    const std::size_t n = steps_through_measurement(def, 0);
    for (std::size_t a = 0; a < 4; ++a) {
      const std::array<std::size_t, 1> path = {a};
      std::optional<Branch> b = follow(first_steps(def, n), prepare_register(def, secret), path);
      if (!b) continue;
      const Vector st = b->state.reordered(pair).amplitudes();
      HbbReadingCheck c{a, std::nullopt, std::nullopt};
      for (const auto& [name, m] : literal)
        if (std::abs(st.dot(m * encoded)) >= 1.0 - tol::kNormalization) c.literal = name;
      for (const auto& [name, m] : logical)
        if (std::abs(st.dot(m * encoded)) >= 1.0 - tol::kNormalization) c.logical = name;
      if (out.size() < 4) {
        out.push_back(c);
      } else {  // later secrets must agree with the first
        HbbReadingCheck& prev = out[a];
        if (prev.literal != c.literal) prev.literal.reset();
        if (prev.logical != c.logical) prev.logical.reset();
      }
    }
  }
  return out;
}

}  // namespace qis::protocols
