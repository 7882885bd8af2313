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

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cavmux/config.hpp"
#include "cavmux/link.hpp"

namespace cavmux {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumeric = 3,
  kExitVerify = 4,
};

/// Command-line overrides applied on top of the config file.
struct CommandOptions {
  std::optional<std::string> out_dir;
  std::optional<OutputFormat> format;
  bool quiet = false;
};

/// One evaluated link row: the single-mode reference plus the multiplexed
/// aggregate at the same mu0.
struct TableEntry {
  LinkRow row;
  double mu0;
  LinkReport report;
  double p_single0;
  double f0;
  std::optional<ImprovementRatios> ratios;  ///< empty when mu0 = 0
};

/// Solves any fidelity targets, then evaluates every row against the table.
std::vector<TableEntry> compute_table(const ModeTable& modes,
                                      const LinkConfig& cfg);

// Each command writes its artifacts under the output directory and returns
// an ExitCode. ConfigError, NumericError and QuadratureError propagate.
int cmd_modes(const RunConfig& cfg, const CommandOptions& opt,
              std::ostream& out, std::ostream& err);
int cmd_table(const RunConfig& cfg, const CommandOptions& opt,
              std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& cfg, const CommandOptions& opt,
                 std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, const CommandOptions& opt,
               std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& cfg, const CommandOptions& opt,
              std::ostream& out, std::ostream& err);

}  // namespace cavmux
