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

// Subcommand implementations. Each returns the structured document, its text
// rendering and the exit status, so the binary is a thin argument parser.

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qis/channels/bases.hpp"
#include "qis/channels/clifford.hpp"
#include "qis/channels/states.hpp"
#include "qis/cli/format.hpp"
#include "qis/io/json.hpp"
#include "qis/io/secret.hpp"
#include "qis/protocols/published.hpp"
#include "qis/protocols/report.hpp"
#include "qis/security/attack.hpp"
#include "qis/security/claims.hpp"

namespace qis::cli {

using nlohmann::json;

/// 0: every check passed. 1: a verification failed. 2: bad input.
enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitUsage = 2 };

struct CommandResult {
  json doc;
  std::string text;
  int exit_code = kExitOk;
};

inline CommandResult error_result(const Error& e) {
  return {{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}},
          "error (" + std::string(to_string(e.code())) + "): " + e.what() + "\n", kExitUsage};
}

// --- run --------------------------------------------------------------------

struct RunOptions {
  std::string protocol = "c4-single";
  std::string secret = "random:1";
  std::string mode = "enumerate";
  std::uint64_t seed = 1;
  std::size_t trials = 10;
  double tolerance = 1e-10;
};

/// Branch index drawn with probability proportional to branch weight.
inline std::size_t draw_branch(Rng& rng, const std::vector<protocols::BranchRecord>& branches) {
  double u = rng.uniform(), acc = 0.0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    acc += branches[i].probability;
    if (u < acc) return i;
  }
  return branches.size() - 1;
}

inline CommandResult cmd_run(const RunOptions& opt) {
  const protocols::ProtocolId id = protocols::parse_protocol(opt.protocol);
  if (opt.mode != "enumerate" && opt.mode != "sample")
    throw Error(ErrorCode::kParse, "mode must be 'enumerate' or 'sample'");
  const PureState secret = io::parse_secret(opt.secret, id);
  const protocols::ProtocolReport report = protocols::run_protocol(id, secret, opt.tolerance);

  CommandResult r;
  r.doc = io::to_json(report);
  r.doc["mode"] = opt.mode;
  std::ostringstream text;
  text << "protocol " << opt.protocol << "  secret " << format_state(secret) << "\n";
  text << "branches " << report.branches.size() << "  probability sum " << fmt("%.12g", report.probability_sum)
       << "  min fidelity " << fmt("%.12g", report.min_fidelity) << "\n";
  for (const auto& [pair, bits] : report.cbit_totals)
    text << "cbits " << protocols::to_string(pair.first) << " -> " << protocols::to_string(pair.second) << ": " << bits << "\n";

  auto branch_line = [&](const protocols::BranchRecord& b) {
    std::ostringstream s;
    s << "  alice " << b.alice_outcome << "  bob " << b.bob_outcome << "  p " << fmt("%.6g", b.probability) << "  fidelity "
      << fmt("%.12g", b.fidelity) << "\n    before correction " << format_state(b.charlie_pre_correction)
      << "\n    after correction  " << format_state(b.charlie_final) << "\n";
    return s.str();
  };
  if (opt.mode == "enumerate") {
    for (const auto& b : report.branches) text << branch_line(b);
  } else {
    Rng rng(opt.seed);
    json samples = json::array();
    for (std::size_t t = 0; t < opt.trials; ++t) {
      const std::size_t i = draw_branch(rng, report.branches);
      samples.push_back({{"trial", t}, {"branch", i}, {"alice_outcome", report.branches[i].alice_outcome},
                         {"bob_outcome", report.branches[i].bob_outcome}, {"fidelity", io::round12(report.branches[i].fidelity)}});
      text << "trial " << t << ":" << branch_line(report.branches[i]);
    }
    r.doc["seed"] = opt.seed;
    r.doc["trials"] = opt.trials;
    r.doc["samples"] = samples;
  }
  for (const auto& z : report.zero_outcomes)
    text << "  zero-probability " << protocols::to_string(z.party) << " outcome " << z.outcome
         << (z.alice_outcome ? " after Alice " + std::to_string(*z.alice_outcome) : std::string())
         << (z.completion_added ? " (completion vector)" : "") << "\n";
  text << (report.all_fidelities_ok ? "OK" : "FAILED") << ": every branch recovers the secret\n";
  r.text = text.str();
  r.exit_code = report.all_fidelities_ok ? kExitOk : kExitVerificationFailed;
  return r;
}

// --- tables -----------------------------------------------------------------

inline CommandResult cmd_tables(const std::string& which, double tolerance = 1e-10) {
  std::vector<std::pair<std::string, std::vector<protocols::PublishedClaim>>> groups;
  if (which == "all") {
    for (protocols::TableId t : protocols::kAllTables) groups.emplace_back(std::string(to_string(t)), protocols::published_table(t));
  } else if (which == "prose") {
    groups.emplace_back("prose", protocols::published_prose_claims());
  } else {
    const protocols::TableId t = protocols::parse_table(which);
    groups.emplace_back(std::string(to_string(t)), protocols::published_table(t));
  }
  CommandResult r;
  json tables = json::array();
  std::ostringstream text;
  bool all = true;
  std::size_t total = 0, matched = 0;
  for (const auto& [name, claims] : groups) {
    json rows = json::array();
    bool table_ok = true;
    text << "Table " << name << "\n";
    for (const auto& c : claims) {
      const protocols::ClaimCheck chk = protocols::verify_claim(c, tolerance);
      rows.push_back(io::to_json(chk));
      table_ok = table_ok && chk.match;
      ++total;
      matched += chk.match ? 1 : 0;
      text << "  " << chk.id << "  " << (chk.match ? "match   " : "MISMATCH") << "  " << chk.outcome_text << "\n"
           << "      printed: " << chk.published_text << "\n"
           << "      engine : " << chk.engine_text << "   (deviation " << fmt("%.3g", chk.max_deviation) << ")\n";
      if (chk.literal_order_deviation)
        text << "      printed qubit order " << join_names(*c.literal_labels) << " would deviate by "
             << fmt("%.3g", *chk.literal_order_deviation) << "\n";
    }
    all = all && table_ok;
    tables.push_back({{"table", name}, {"rows", rows}, {"all_match", table_ok}});
  }
  text << matched << "/" << total << " rows match\n";
  r.doc = {{"tables", tables}, {"matched", matched}, {"total", total}, {"all_match", all}, {"tolerance", tolerance}};
  r.text = text.str();
  r.exit_code = all ? kExitOk : kExitVerificationFailed;
  return r;
}

// --- attack -----------------------------------------------------------------

struct AttackOptions {
  std::string protocol = "c4-single";
  int tap = 2;
  /// "", "cnot", "cnot-x" or a path to a JSON 4x4 matrix of [re, im] pairs.
  std::string attack;
  std::string timing;
  std::vector<std::string> secrets = {"random:1", "random:2"};
  bool truncate = false;
  double tolerance = 1e-10;
};

inline security::AttackSpec attack_spec_from(const AttackOptions& opt) {
  const protocols::ProtocolId id = protocols::parse_protocol(opt.protocol);
  security::AttackSpec spec = security::default_attack(id, opt.tap);
  if (!opt.attack.empty()) {
    if (opt.attack == "cnot") {
      spec = security::make_attack(id, opt.tap, security::AttackKind::kCnot);
    } else if (opt.attack == "cnot-x") {
      spec = security::make_attack(id, opt.tap, security::AttackKind::kCnotX);
    } else {
      std::ifstream in(opt.attack);
      if (!in) throw Error(ErrorCode::kParse, "attack must be cnot, cnot-x or a readable matrix file: " + opt.attack);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kParse, std::string("matrix file is not valid JSON: ") + e.what());
      }
      spec = security::make_attack(id, opt.tap);
      spec.kind = security::AttackKind::kCustom;
      spec.attack_unitary = UnitaryOp(io::matrix_from_json(j));
    }
  }
  if (!opt.timing.empty()) spec.timing = security::parse_timing(opt.timing);
  spec.skip_bob_measurement = opt.truncate;
  return spec;
}

inline CommandResult cmd_attack(const AttackOptions& opt) {
  const security::AttackSpec spec = attack_spec_from(opt);
  if (opt.secrets.empty() || opt.secrets.size() > 2) throw Error(ErrorCode::kInvalidArgument, "give one or two secrets");
  const PureState s1 = io::parse_secret(opt.secrets[0], spec.protocol);
  const PureState s2 = io::parse_secret(opt.secrets.size() > 1 ? opt.secrets[1] : opt.secrets[0], spec.protocol);
  const security::AttackReport report = security::run_attack(spec, s1);
  const double info = security::eve_information(spec, s1, s2);

  bool claimed = false;
  for (const auto& sc : security::attack_scenarios())
    if (sc.claimed_secure && sc.spec.protocol == spec.protocol && sc.spec.tapped_qubit == spec.tapped_qubit &&
        sc.spec.kind == spec.kind && sc.spec.timing == spec.timing && !spec.skip_bob_measurement)
      claimed = true;

  CommandResult r;
  r.doc = io::to_json(report);
  r.doc["secret_2"] = io::to_json(s2);
  r.doc["eve_information"] = io::round12(info);
  r.doc["tolerance"] = opt.tolerance;
  r.doc["scope"] = claimed ? "analysed-scenario" : "out-of-claim-observation";

  std::ostringstream text;
  text << "attack " << security::to_string(spec.kind) << " on qubit " << spec.tapped_qubit.name() << " of " << opt.protocol
       << " (" << security::to_string(spec.timing) << (spec.skip_bob_measurement ? ", Bob's measurement skipped" : "")
       << ")\n";
  if (spec.protocol == protocols::ProtocolId::kC4Single && spec.tapped_qubit == QubitLabel(2) &&
      spec.kind == security::AttackKind::kCnot && spec.timing == security::AttackTiming::kProtocolStart) {
    const security::StateClaimCheck tap_two = security::check_tap_two_state(s1);
    r.doc["tap_two"] = {{"expression", tap_two.expression}, {"labels", tap_two.labels},
                    {"amplitude_deviation", tap_two.amplitude_deviation ? json(io::round12(*tap_two.amplitude_deviation)) : json(nullptr)}};
    text << "post-Alice state (first Bell outcome), printed form " << tap_two.expression << " on " << tap_two.labels
         << ": deviation " << fmt("%.3g", tap_two.amplitude_deviation.value_or(1.0)) << "\n";
  }
  if (spec.protocol == protocols::ProtocolId::kC5Single && spec.tapped_qubit == QubitLabel(3) &&
      spec.kind == security::AttackKind::kCnotX && spec.timing == security::AttackTiming::kProtocolStart) {
    const security::StateClaimCheck f = security::check_c5_factorization(s1);
    r.doc["charlie_eve_factorization"] = {{"expression", f.expression}, {"labels", f.labels},
                                          {"aligned_deviation", io::round12(f.aligned_deviation)}};
    text << "Charlie-Eve after first outcomes vs (α|0⟩+β|1⟩)(|0⟩+|1⟩)/√2: deviation " << fmt("%.3g", f.aligned_deviation) << "\n";
  }
  for (const auto& [a, s] : report.post_alice) text << "  after Alice " << a << ": " << format_state(s) << "\n";
  for (const auto& b : report.branches) {
    text << "  outcomes";
    for (std::size_t o : b.outcomes) text << " " << o;
    text << "  p " << fmt("%.6g", b.probability) << "  Schmidt rank (Eve|rest) " << b.charlie_eve_schmidt_rank;
    if (b.charlie_fidelity) text << "  Charlie fidelity " << fmt("%.12g", *b.charlie_fidelity);
    text << "\n";
  }
  text << "Eve information (max trace distance) " << fmt("%.3g", info) << "  ["
       << (claimed ? "analysed scenario" : "out-of-claim observation") << "]\n";
  r.text = text.str();
  r.exit_code = info <= opt.tolerance ? kExitOk : kExitVerificationFailed;
  return r;
}

// --- corrections ------------------------------------------------------------

inline CommandResult cmd_corrections(const std::string& protocol) {
  const protocols::ProtocolId id = protocols::parse_protocol(protocol);
  const protocols::CorrectionTable& table = protocols::correction_table(id);
  CommandResult r;
  json entries = json::array();
  std::ostringstream text;
  bool ok = true;
  for (const auto& [key, e] : table) {
    entries.push_back(io::to_json(e));
    const bool pauli_required = id == protocols::ProtocolId::kHbbGhz;
    ok = ok && e.signed_permutation && (!pauli_required || e.pauli.has_value());
    text << "alice " << key.first << "  bob " << key.second << "  "
         << (e.signed_permutation ? "signed permutation" : "NOT a signed permutation");
    if (e.pauli) text << "  = " << *e.pauli << " up to phase";
    text << "\n" << format_matrix(e.unitary.matrix(), "    ");
  }
  r.doc = {{"protocol", protocol}, {"entries", entries}, {"all_signed_permutations", ok}};
  r.text = text.str();
  r.exit_code = ok ? kExitOk : kExitVerificationFailed;
  return r;
}

// --- verify-all -------------------------------------------------------------

struct VerifyOptions {
  std::size_t secrets = 20;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
};

inline CommandResult cmd_verify_all(const VerifyOptions& opt) {
  CommandResult r;
  json checks = json::array();
  std::ostringstream text;
  bool all = true;
  auto record = [&](const std::string& name, bool pass, json detail) {
    checks.push_back({{"check", name}, {"pass", pass}, {"detail", std::move(detail)}});
    text << (pass ? "[PASS] " : "[FAIL] ") << name << "\n";
    all = all && pass;
  };

  // Recovery and statistics.
  for (protocols::ProtocolId id : protocols::kAllProtocols) {
    const auto& def = protocols::definition(id);
    Rng rng(opt.seed + 1000 * static_cast<std::uint64_t>(id));
    double min_f = 1.0;
    bool stats = true;
    for (std::size_t k = 0; k < opt.secrets; ++k) {
      const PureState s = random_state(rng, def.secret_labels, def.secret_support);
      const protocols::ProtocolReport rep = protocols::run_protocol(id, s, opt.tolerance);
      min_f = std::min(min_f, rep.min_fidelity);
      for (const auto& z : rep.zero_outcomes) stats = stats && (!z.completion_added || z.probability <= 1e-12);
    }
    record("recovery " + std::string(protocols::to_string(id)), min_f >= 1.0 - opt.tolerance,
           {{"min_fidelity", io::round12(min_f)}, {"secrets", opt.secrets}});
    record("completion outcomes silent " + std::string(protocols::to_string(id)), stats, json::object());
    const auto cb = protocols::cbit_account(protocols::run_protocol(id, protocols::probe_secret(def)));
    const auto want = protocols::stated_cbits(id);
    const int a = cb.count({protocols::Party::kAlice, protocols::Party::kCharlie}) ? cb.at({protocols::Party::kAlice, protocols::Party::kCharlie}) : 0;
    const int b = cb.count({protocols::Party::kBob, protocols::Party::kCharlie}) ? cb.at({protocols::Party::kBob, protocols::Party::kCharlie}) : 0;
    record("cbits " + std::string(protocols::to_string(id)), a == want.first && b == want.second,
           {{"alice_to_charlie", a}, {"bob_to_charlie", b}, {"stated", {want.first, want.second}}});
    bool sp = true;
    for (const auto& [key, e] : protocols::correction_table(id)) sp = sp && e.signed_permutation;
    record("corrections signed-permutation " + std::string(protocols::to_string(id)), sp, json::object());
  }

  const CommandResult tables = cmd_tables("all", opt.tolerance);
  record("published outcome tables", tables.exit_code == kExitOk, {{"matched", tables.doc["matched"]}, {"total", tables.doc["total"]}});

  const protocols::FactoredVectorResult factored = protocols::verify_eq9_decomposition();
  record("factored five-qubit basis vector", factored.found && factored.overlap >= 1.0 - opt.tolerance, io::to_json(factored));

  const PureState s1 = io::parse_secret("random:11", protocols::ProtocolId::kC4Single);
  const security::StateClaimCheck tap_two = security::check_tap_two_state(s1);
  record("eavesdropped state after first Bell outcome (c4-single, tap 2)", tap_two.amplitude_deviation && *tap_two.amplitude_deviation <= 1e-12,
         {{"deviation", tap_two.amplitude_deviation ? json(*tap_two.amplitude_deviation) : json(nullptr)}});
  for (const auto& sc : security::attack_scenarios()) {
    if (!sc.claimed_secure) continue;
    const auto& def = protocols::definition(sc.spec.protocol);
    Rng rng(opt.seed + 77);
    double worst = 0.0;
    bool product = true;
    for (int k = 0; k < 5; ++k) {
      const PureState a = random_state(rng, def.secret_labels, def.secret_support);
      const PureState b = random_state(rng, def.secret_labels, def.secret_support);
      worst = std::max(worst, security::eve_information(sc.spec, a, b));
      product = product && security::run_attack(sc.spec, a).all_product;
    }
    record("attack " + sc.name, worst <= opt.tolerance && product, {{"eve_information", io::round12(worst)}, {"all_product", product}});
  }

  const double gram = gram_defect(channels::table5_basis().vectors());
  record("five-qubit measurement basis orthonormal", gram <= opt.tolerance, {{"gram_defect", gram}});
  const bool c4_to_cluster = channels::local_equivalence_search(channels::make_cluster_generic(4), channels::make_c4()).has_value();
  record("generic 4-qubit cluster locally Clifford-equivalent to |C4> with fixed labels", c4_to_cluster, json::object());
  const bool c4_ghz = channels::local_equivalence_search(channels::make_c4(), channels::make_ghz(4)).has_value();
  record("|C4> not locally Clifford-equivalent to GHZ4", !c4_ghz, json::object());

  text << (all ? "all checks passed\n" : "some checks failed\n");
  r.doc = {{"checks", checks}, {"all_pass", all}, {"tolerance", opt.tolerance}, {"seed", opt.seed}};
  r.text = text.str();
  r.exit_code = all ? kExitOk : kExitVerificationFailed;
  return r;
}

}  // namespace qis::cli
