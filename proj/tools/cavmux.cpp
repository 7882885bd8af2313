// Copyright 2026 The cavmux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: modes, table, spectrum, verify and solve.

#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cavmux/commands.hpp"
#include "cavmux/config.hpp"
#include "cavmux/error.hpp"

namespace {

using Command = std::function<int(const cavmux::RunConfig&, const cavmux::CommandOptions&,
                                  std::ostream&, std::ostream&)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-multiplexed cavity SPDC source and repeater-link model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string format;
  bool quiet = false;

  const std::map<std::string, std::pair<std::string, Command>> commands{
      {"modes", {"per-mode detuning, normalization constants and mean photon numbers",
                 cavmux::cmd_modes}},
      {"table", {"single-mode and multiplexed link table", cavmux::cmd_table}},
      {"spectrum", {"Airy / Lorentzian spectrum samples and optional JSI grid",
                    cavmux::cmd_spectrum}},
      {"verify", {"numerical verification suite", cavmux::cmd_verify}},
      {"solve", {"mu0 for each fidelity target", cavmux::cmd_solve}},
  };
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config,-c", config_path, "INI run configuration")->required();
    sub->add_option("--out,-o", out_dir, "output directory (overrides [output] dir)");
    sub->add_option("--format,-f", format, "csv or json (overrides [output] format)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--quiet,-q", quiet, "suppress progress output on stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cavmux::kExitConfig;
  }

  try {
    const cavmux::RunConfig cfg = cavmux::load_config(config_path);
    cavmux::CommandOptions opt;
    if (!out_dir.empty()) opt.out_dir = out_dir;
    if (!format.empty()) opt.format = cavmux::parse_format(format);
    opt.quiet = quiet;
    for (const auto& [name, entry] : commands) {
      if (app.got_subcommand(name)) return entry.second(cfg, opt, std::cout, std::cerr);
    }
  } catch (const cavmux::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cavmux::kExitConfig;
  } catch (const cavmux::QuadratureError& e) {
    std::cerr << "quadrature error: " << e.what() << '\n';
    return cavmux::kExitNumeric;
  } catch (const cavmux::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return cavmux::kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cavmux::kExitNumeric;
  }
  return cavmux::kExitConfig;
}
