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

// qis: command-line front end for the splitting simulator.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qis/cli/commands.hpp"

namespace {

void emit(const qis::cli::CommandResult& r, const std::string& format) {
  if (format == "json")
    std::cout << r.doc.dump(2) << "\n";
  else
    std::cout << r.text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum information splitting over cluster and GHZ channels"};
  app.require_subcommand(1);

  std::string format = "text";
  double tolerance = 1e-10;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--tolerance", tolerance, "Fidelity and deviation tolerance")->check(CLI::PositiveNumber);

  qis::cli::RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run a protocol on a secret and report every branch");
  run_cmd->add_option("--protocol", run.protocol, "hbb-ghz, c4-single, c4-entangled, c5-single or c5-arbitrary");
  run_cmd->add_option("--secret", run.secret, "Amplitudes (comma list or JSON array) or random:<seed>");
  run_cmd->add_option("--mode", run.mode, "enumerate or sample");
  run_cmd->add_option("--seed", run.seed, "Sampling seed");
  run_cmd->add_option("--trials", run.trials, "Number of sampled runs");

  std::string table = "all";
  auto* tables_cmd = app.add_subcommand("tables", "Compare the published outcome tables with the engine");
  tables_cmd->add_option("--table", table, "I..V, 1..5, all or prose");

  qis::cli::AttackOptions attack;
  std::vector<std::string> attack_secrets;
  auto* attack_cmd = app.add_subcommand("attack", "Run an eavesdropping attack and measure what Eve learns");
  attack_cmd->add_option("--protocol", attack.protocol, "Protocol id");
  attack_cmd->add_option("--tap", attack.tap, "Channel qubit Eve entangles with");
  attack_cmd->add_option("--attack", attack.attack, "cnot, cnot-x or a JSON file with a 4x4 matrix");
  attack_cmd->add_option("--timing", attack.timing, "protocol-start or before-bob");
  attack_cmd->add_option("--secret", attack_secrets, "One or two secrets to compare (default random:1 random:2)");
  attack_cmd->add_flag("--truncate", attack.truncate, "Skip Bob's measurement (negative control)");

  std::string corr_protocol = "hbb-ghz";
  auto* corr_cmd = app.add_subcommand("corrections", "Derive Charlie's correction table");
  corr_cmd->add_option("--protocol", corr_protocol, "Protocol id");

  qis::cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify-all", "Run every check in one pass");
  verify_cmd->add_option("--seed", verify.seed, "Seed for random secrets");
  verify_cmd->add_option("--secrets", verify.secrets, "Random secrets per protocol");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : qis::cli::kExitUsage;
  }

  qis::cli::CommandResult result;
  try {
    if (*run_cmd) {
      run.tolerance = tolerance;
      result = qis::cli::cmd_run(run);
    } else if (*tables_cmd) {
      result = qis::cli::cmd_tables(table, tolerance);
    } else if (*attack_cmd) {
      attack.tolerance = tolerance;
      if (!attack_secrets.empty()) attack.secrets = attack_secrets;
      result = qis::cli::cmd_attack(attack);
    } else if (*corr_cmd) {
      result = qis::cli::cmd_corrections(corr_protocol);
    } else {
      verify.tolerance = tolerance;
      result = qis::cli::cmd_verify_all(verify);
    }
  } catch (const qis::Error& e) {
    result = qis::cli::error_result(e);
    if (format == "text") {
      std::cerr << result.text;
      return result.exit_code;
    }
  }
  emit(result, format);
  return result.exit_code;
}
