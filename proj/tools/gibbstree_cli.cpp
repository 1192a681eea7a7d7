// Copyright 2026 The gibbstree Authors
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

// gibbstree: batch front end for the Gibbs tree ensembles.
//
//   gibbstree <command> [--config FILE] [flags]
//
// Commands: pstar, sample, ldp-table, lln, oracle-check. Flags override
// values read from the config file.

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  namespace cli = gibbstree::cli;
  CLI::App app{"Gibbs ensembles of degree-bounded random trees"};
  app.require_subcommand(1);

  std::string config_path;
  // Flags are kept as text and applied through the same parser as the file.
  std::vector<std::pair<std::string, std::string>> flags = {
      {"kind", "labeled or plane"},
      {"bound", "maximal degree (labeled) or child count (plane) D"},
      {"beta", "inverse temperature"},
      {"energy", "energy table c, comma separated, one entry per class"},
      {"n", "number of vertices N"},
      {"n-list", "strictly increasing list of N, comma separated"},
      {"eps", "ball radius for ldp-table"},
      {"delta", "deviation threshold for lln"},
      {"samples", "number of trees to draw"},
      {"seed", "64-bit unsigned seed"},
      {"workers", "worker threads; output does not depend on it"},
      {"target", "ball center for ldp-table (defaults to p*)"},
      {"resolution", "grid resolution for infima of I (0 = automatic)"},
      {"out", "write the report to this file instead of stdout"},
  };
  std::vector<std::string> values(flags.size());

  std::string command;
  for (const auto& name : cli::CommandNames()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value config file");
    for (std::size_t i = 0; i < flags.size(); ++i) {
      // Storage is shared by every subcommand; only one runs.
      sub->add_option("--" + flags[i].first, values[i], flags[i].second);
    }
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  cli::RunConfig config;
  try {
    if (!config_path.empty()) cli::ApplyConfigFile(config, config_path);
    CLI::App* sub = app.get_subcommand(command);
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (sub->get_option("--" + flags[i].first)->count() > 0) {
        cli::ApplySetting(config, flags[i].first, values[i]);
      }
    }
  } catch (const cli::ConfigError& e) {
    std::cerr << "gibbstree: config error: " << e.what() << '\n';
    return cli::kExitConfig;
  }
  return cli::RunCommand(command, config, std::cout, std::cerr);
}
