// Copyright 2026 The hardysim Authors
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

// Command-line front end. Exit codes: 0 ok, 1 domain diagnostic, 2 usage.

#pragma once

#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardysim/circuit.hpp"
#include "hardysim/engine.hpp"
#include "hardysim/montecarlo.hpp"
#include "hardysim/paradox.hpp"

namespace hardysim {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io-error", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string state_csv(const TwoPhotonState& s) {
  std::string out = "plus,minus,amp\n";
  for (const auto& [key, amp] : s.terms()) {
    out += key.plus + "+," + key.minus + "-," + amp.to_string() + "\n";
  }
  return out;
}

inline std::string table_csv(const OutcomeTable& t) {
  std::string out = "plus,minus,p\n";
  for (const auto& [key, p] : t.rows) {
    out += key.plus + "+," + key.minus + "-," + format_rational(p) + "\n";
  }
  out += "# kept_weight=" + format_rational(t.kept_weight) + "\n";
  return out;
}

inline std::string report_csv(const ParadoxReport& r) {
  std::string out = "outcome_plus,outcome_minus,qm_p,feasible,verdict\n";
  for (const auto& o : r.outcomes) {
    out += o.outcome.plus + "+," + o.outcome.minus + "-," + format_rational(o.qm_probability) +
           "," + std::to_string(o.feasible.size()) + "," + std::string(verdict_name(o.verdict)) +
           "\n";
  }
  return out;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact two-photon interferometer simulator and full-wave paradox checker",
               "hardysim"};
  app.require_subcommand(1);

  std::string path;
  std::string format = "table";
  std::string rules = "local";
  std::uint64_t n = 12000;
  std::uint64_t seed = kDefaultSeed;
  bool postselected = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("circuit", path, "Path to a .circ file")->required();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));
  };
  CLI::App* check = app.add_subcommand("check", "Parse and validate a circuit");
  check->add_option("circuit", path, "Path to a .circ file")->required();
  CLI::App* evolve_cmd = app.add_subcommand("evolve", "Print the evolved state");
  add_common(evolve_cmd);
  evolve_cmd->add_flag("--postselect", postselected, "Discard and renormalize before printing");
  CLI::App* probs = app.add_subcommand("probs", "Print detection probabilities");
  add_common(probs);
  CLI::App* paradox = app.add_subcommand("paradox", "Enumerate full-wave trajectories");
  add_common(paradox);
  paradox->add_option("--rules", rules, "Rule set")->check(CLI::IsMember({"local", "contextual"}));
  CLI::App* sample_cmd = app.add_subcommand("sample", "Sample detection events");
  add_common(sample_cmd);
  sample_cmd->add_option("--n", n, "Number of events")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed, "64-bit seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hardysim: " << e.what() << "\n";
    return 2;
  }

  try {
    const Circuit circuit = parse_circuit(detail::read_file(path));
    if (check->parsed()) {
      out << "ok: " << path << ": " << circuit.stages.size() << " stages\n";
      return 0;
    }
    std::string text;
    if (evolve_cmd->parsed()) {
      TwoPhotonState state = evolve(circuit);
      if (postselected) state = renormalize(postselect(state, circuit.discard).state);
      text = format == "json" ? state.to_json().dump(2) + "\n"
             : format == "csv" ? detail::state_csv(state)
                               : state.to_string();
    } else if (probs->parsed()) {
      const OutcomeTable table = outcome_table(circuit);
      text = format == "json" ? table.to_json().dump(2) + "\n"
             : format == "csv" ? detail::table_csv(table)
                               : table.to_table();
    } else if (paradox->parsed()) {
      const ParadoxReport report = paradox_report(
          circuit, rules == "contextual" ? RuleSet::contextual : RuleSet::local_counterfactual);
      text = format == "json" ? report.to_json().dump(2) + "\n"
             : format == "csv" ? detail::report_csv(report)
                               : report.to_table();
    } else {
      const RunRecord record = sample(outcome_table(circuit), n, seed);
      text = format == "json" ? record.to_json().dump(2) + "\n"
             : format == "csv" ? record.to_csv()
                               : record.to_table();
    }
    out << text;
    return 0;
  } catch (const ParseError& e) {
    err << e.format(path) << "\n";
    return 1;
  } catch (const Error& e) {
    err << path << ": " << e.code() << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hardysim
