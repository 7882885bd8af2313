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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cavmux/cavity.hpp"
#include "cavmux/spectral.hpp"

namespace cavmux {

/// [source] block; frequencies already converted to Hz.
struct SourceConfig {
  double pump_hz = 0.0;
  std::optional<double> signal_seed_hz;
  std::optional<ResonanceIndices> indices;
  double fsr_signal_hz = 0.0;
  double fsr_idler_hz = 0.0;
  double finesse_signal = 0.0;
  double finesse_idler = 0.0;
  int modes_per_side = 0;
};

/// A named group of link rows at one distance.
struct ScenarioConfig {
  std::string label;
  double distance_km = 0.0;
  std::vector<double> mu0;
  std::vector<double> fidelity_targets;
};

struct LinkConfig {
  double alpha_db_per_km = 0.2;
  bool alpha_defaulted = true;
  double eta_det = 1.0;
  std::vector<double> distances_km;
  std::vector<double> mu0;
  std::vector<double> fidelity_targets;
  std::vector<ScenarioConfig> scenarios;
};

struct SpectrumConfig {
  int k_min = -1;
  int k_max = 1;
  std::size_t points = 2001;
  std::size_t jsi_points = 0;
  std::optional<double> pump_sigma_hz;
};

enum class OutputFormat { csv, json };

struct OutputConfig {
  std::string dir = "out";
  OutputFormat format = OutputFormat::csv;
  int precision = 3;
};

struct RunConfig {
  std::string origin;
  SourceConfig source;
  LinkConfig link;
  SpectrumConfig spectrum;
  OutputConfig output;
};

/// One (distance, mu0 or fidelity target) row of a table run.
struct LinkRow {
  std::string label;
  double distance_km;
  std::optional<double> mu0;
  std::optional<double> fidelity_target;
};

/**
 * Parses an INI config. Unknown sections or keys, malformed numbers and
 * out-of-range values raise ConfigError with the section and key in the
 * message. @p origin names the stream in messages.
 */
RunConfig parse_config(std::istream& in, const std::string& origin);
RunConfig load_config(const std::string& path);

OutputFormat parse_format(const std::string& name);
const char* format_name(OutputFormat f);

struct ResolvedSource {
  SourceSpec spec;
  std::string index_method;  ///< "explicit" or "cluster-search"
  std::vector<Warning> warnings;
};

/// Cavities, indices and the cluster check. Low finesse becomes a warning.
ResolvedSource resolve_source(const SourceConfig& cfg);

/**
 * Rows in config order: [link] distances crossed with its mu0 list and then
 * its targets, labelled "L<km>-<n>", followed by each [scenario] section,
 * labelled "<name>-<n>".
 */
std::vector<LinkRow> link_rows(const LinkConfig& cfg);

/// Resolved settings as ordered key/value pairs for artifact headers.
std::vector<std::pair<std::string, std::string>> config_echo(
    const RunConfig& cfg, const ResolvedSource& src);

}  // namespace cavmux
