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

#include "cavmux/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cavmux/format.hpp"
#include "cavmux/units.hpp"

namespace cavmux {

namespace {

using boost::property_tree::ptree;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"source",
       {"pump_wavelength_nm", "pump_frequency_thz", "signal_wavelength_nm",
        "k_signal", "k_idler", "fsr_signal_mhz", "fsr_idler_mhz",
        "finesse_signal", "finesse_idler", "modes_per_side"}},
      {"link",
       {"alpha_db_per_km", "eta_det", "distances_km", "mu0",
        "fidelity_targets"}},
      {"scenario", {"distance_km", "mu0", "fidelity_targets"}},
      {"spectrum", {"k_min", "k_max", "points", "jsi_points", "pump_sigma_mhz"}},
      {"output", {"dir", "format", "precision"}},
  };
  return keys;
}

// Section reader that records field context for error messages.
class Section {
 public:
  Section(std::string name, const ptree* node) : name_(std::move(name)), node_(node) {}

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError("[" + name_ + "] " + key + ": " + msg);
  }

  std::optional<std::string> text(const std::string& key) const {
    if (!node_) return std::nullopt;
    const auto child = node_->get_child_optional(key);
    if (!child) return std::nullopt;
    std::string v = child->data();
    // Inline comments: whitespace followed by ';' or '#'.
    for (std::size_t p = 1; p < v.size(); ++p) {
      if ((v[p] == ';' || v[p] == '#') && (v[p - 1] == ' ' || v[p - 1] == '\t')) {
        v.resize(p);
        break;
      }
    }
    boost::algorithm::trim(v);
    if (v.empty()) fail(key, "value is empty");
    return v;
  }

  double to_double(const std::string& key, const std::string& s) const {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(key, "expected a number, got '" + s + "'");
    }
    return v;
  }

  std::optional<double> number(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    return to_double(key, *t);
  }

  std::optional<std::int64_t> integer(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    std::int64_t v = 0;
    const auto res = std::from_chars(t->data(), t->data() + t->size(), v);
    if (res.ec != std::errc() || res.ptr != t->data() + t->size()) {
      fail(key, "expected an integer, got '" + *t + "'");
    }
    return v;
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    const auto t = text(key);
    if (!t) return out;
    std::istringstream is(*t);
    std::string item;
    while (std::getline(is, item, ',')) {
      boost::algorithm::trim(item);
      if (item.empty()) fail(key, "empty list entry");
      out.push_back(to_double(key, item));
    }
    return out;
  }

  double positive(const std::string& key) const {
    const auto v = number(key);
    if (!v) fail(key, "required");
    if (!(*v > 0.0)) fail(key, "must be > 0");
    return *v;
  }

  const std::string& name() const { return name_; }

 private:
  std::string name_;
  const ptree* node_;
};

void check_keys(const std::string& section, const std::string& kind,
                const ptree& node) {
  const auto& allowed = allowed_keys().at(kind);
  for (const auto& [key, value] : node) {
    if (!allowed.count(key)) {
      throw ConfigError("[" + section + "] " + key + ": unknown key");
    }
  }
}

void check_mu0_list(const Section& s, const std::vector<double>& mu0) {
  for (double m : mu0) {
    if (!(m >= 0.0)) s.fail("mu0", "entries must be >= 0");
  }
}

void check_targets(const Section& s, const std::vector<double>& f) {
  for (double v : f) {
    if (!(v > 0.0 && v < 1.0)) s.fail("fidelity_targets", "entries must lie in (0, 1)");
  }
}

SourceConfig parse_source(const Section& s) {
  SourceConfig c;
  const auto wl = s.number("pump_wavelength_nm");
  const auto fq = s.number("pump_frequency_thz");
  if (wl && fq) s.fail("pump_wavelength_nm", "give either the pump wavelength or its frequency, not both");
  if (wl) {
    if (!(*wl > 0.0)) s.fail("pump_wavelength_nm", "must be > 0");
    c.pump_hz = units::nm_to_hz(*wl);
  } else if (fq) {
    if (!(*fq > 0.0)) s.fail("pump_frequency_thz", "must be > 0");
    c.pump_hz = *fq * units::kTHz;
  } else {
    s.fail("pump_wavelength_nm", "required (or pump_frequency_thz)");
  }

  const auto seed = s.number("signal_wavelength_nm");
  const auto ks = s.integer("k_signal");
  const auto ki = s.integer("k_idler");
  if (ks.has_value() != ki.has_value()) {
    s.fail(ks ? "k_idler" : "k_signal", "k_signal and k_idler must be given together");
  }
  if (ks && seed) s.fail("signal_wavelength_nm", "give either a seed wavelength or explicit indices, not both");
  if (ks) {
    if (*ks <= 0 || *ki <= 0) s.fail("k_signal", "indices must be positive");
    c.indices = ResonanceIndices{*ks, *ki};
  } else if (seed) {
    if (!(*seed > 0.0)) s.fail("signal_wavelength_nm", "must be > 0");
    c.signal_seed_hz = units::nm_to_hz(*seed);
    if (!(*c.signal_seed_hz < c.pump_hz)) {
      s.fail("signal_wavelength_nm", "signal seed must be at a lower frequency than the pump");
    }
  } else {
    s.fail("signal_wavelength_nm", "required (or k_signal and k_idler)");
  }

  c.fsr_signal_hz = units::mhz_to_hz(s.positive("fsr_signal_mhz"));
  c.fsr_idler_hz = units::mhz_to_hz(s.positive("fsr_idler_mhz"));
  c.finesse_signal = s.positive("finesse_signal");
  c.finesse_idler = s.positive("finesse_idler");
  const auto m = s.integer("modes_per_side");
  if (!m) s.fail("modes_per_side", "required");
  if (*m < 0 || *m > 100000) s.fail("modes_per_side", "must lie in [0, 100000]");
  c.modes_per_side = static_cast<int>(*m);
  return c;
}

void parse_link(const Section& s, LinkConfig& c) {
  if (const auto a = s.number("alpha_db_per_km")) {
    if (!(*a >= 0.0)) s.fail("alpha_db_per_km", "must be >= 0");
    c.alpha_db_per_km = *a;
    c.alpha_defaulted = false;
  }
  const auto eta = s.number("eta_det");
  if (!eta) s.fail("eta_det", "required");
  if (!(*eta > 0.0 && *eta <= 1.0)) s.fail("eta_det", "must lie in (0, 1]");
  c.eta_det = *eta;
  c.distances_km = s.list("distances_km");
  for (double d : c.distances_km) {
    if (!(d >= 0.0)) s.fail("distances_km", "entries must be >= 0");
  }
  c.mu0 = s.list("mu0");
  check_mu0_list(s, c.mu0);
  c.fidelity_targets = s.list("fidelity_targets");
  check_targets(s, c.fidelity_targets);
}

ScenarioConfig parse_scenario(const Section& s, std::string label) {
  ScenarioConfig c;
  c.label = std::move(label);
  const auto d = s.number("distance_km");
  if (!d) s.fail("distance_km", "required");
  if (!(*d >= 0.0)) s.fail("distance_km", "must be >= 0");
  c.distance_km = *d;
  c.mu0 = s.list("mu0");
  check_mu0_list(s, c.mu0);
  c.fidelity_targets = s.list("fidelity_targets");
  check_targets(s, c.fidelity_targets);
  if (c.mu0.empty() && c.fidelity_targets.empty()) {
    s.fail("mu0", "a scenario needs mu0 or fidelity_targets");
  }
  return c;
}

SpectrumConfig parse_spectrum(const Section& s, int modes_per_side) {
  SpectrumConfig c;
  // The default window is the centre mode and its neighbours, if present.
  c.k_min = std::max(c.k_min, -modes_per_side);
  c.k_max = std::min(c.k_max, modes_per_side);
  if (const auto v = s.integer("k_min")) c.k_min = static_cast<int>(*v);
  if (const auto v = s.integer("k_max")) c.k_max = static_cast<int>(*v);
  if (c.k_min > c.k_max) s.fail("k_min", "must not exceed k_max");
  if (const auto v = s.integer("points")) {
    if (*v < 2 || *v > 10000000) s.fail("points", "must lie in [2, 1e7]");
    c.points = static_cast<std::size_t>(*v);
  }
  if (const auto v = s.integer("jsi_points")) {
    if (*v != 0 && (*v < 2 || *v > 4000)) s.fail("jsi_points", "must be 0 or lie in [2, 4000]");
    c.jsi_points = static_cast<std::size_t>(*v);
  }
  if (const auto v = s.number("pump_sigma_mhz")) {
    if (!(*v > 0.0)) s.fail("pump_sigma_mhz", "must be > 0");
    c.pump_sigma_hz = units::mhz_to_hz(*v);
  }
  return c;
}

OutputConfig parse_output(const Section& s) {
  OutputConfig c;
  if (const auto v = s.text("dir")) c.dir = *v;
  if (const auto v = s.text("format")) {
    try {
      c.format = parse_format(*v);
    } catch (const ConfigError& e) {
      s.fail("format", e.what());
    }
  }
  if (const auto v = s.integer("precision")) {
    if (*v < 1 || *v > 17) s.fail("precision", "must lie in [1, 17]");
    c.precision = static_cast<int>(*v);
  }
  return c;
}

std::string distance_label(double km) {
  return "L" + fmt::raw(km);
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + name + "' (expected csv or json)");
}

const char* format_name(OutputFormat f) {
  return f == OutputFormat::json ? "json" : "csv";
}

RunConfig parse_config(std::istream& in, const std::string& origin) {
  ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    std::ostringstream os;
    os << origin << ":" << e.line() << ": " << e.message();
    throw ConfigError(os.str());
  }

  RunConfig cfg;
  cfg.origin = origin;
  const ptree* source = nullptr;
  const ptree* link = nullptr;
  const ptree* spectrum = nullptr;
  const ptree* output = nullptr;
  std::vector<std::pair<std::string, const ptree*>> scenarios;

  for (const auto& [name, node] : tree) {
    if (!node.data().empty() && node.empty()) {
      throw ConfigError(origin + ": key '" + name + "' appears outside any section");
    }
    std::string kind = name;
    std::string label;
    if (name.rfind("scenario", 0) == 0) {
      kind = "scenario";
      label = boost::algorithm::trim_copy(name.substr(8));
      if (label.empty()) throw ConfigError("[" + name + "]: scenario sections need a label, e.g. [scenario i]");
      if (label.find_first_of(",\"") != std::string::npos) {
        throw ConfigError("[" + name + "]: scenario labels may not contain commas or quotes");
      }
    }
    if (!allowed_keys().count(kind)) {
      throw ConfigError("[" + name + "]: unknown section");
    }
    check_keys(name, kind, node);
    if (kind == "source") source = &node;
    else if (kind == "link") link = &node;
    else if (kind == "spectrum") spectrum = &node;
    else if (kind == "output") output = &node;
    else scenarios.emplace_back(label, &node);
  }

  if (!source) throw ConfigError("[source]: section is required");
  if (!link) throw ConfigError("[link]: section is required");
  cfg.source = parse_source(Section("source", source));
  parse_link(Section("link", link), cfg.link);
  for (const auto& [label, node] : scenarios) {
    cfg.link.scenarios.push_back(parse_scenario(Section("scenario " + label, node), label));
  }
  cfg.spectrum = parse_spectrum(Section("spectrum", spectrum), cfg.source.modes_per_side);
  cfg.output = parse_output(Section("output", output));

  const LinkConfig& l = cfg.link;
  const bool link_rows_ok = !l.distances_km.empty() &&
                            (!l.mu0.empty() || !l.fidelity_targets.empty());
  if (!l.distances_km.empty() && l.mu0.empty() && l.fidelity_targets.empty()) {
    throw ConfigError("[link] distances_km: needs mu0 or fidelity_targets alongside");
  }
  if (l.distances_km.empty() && (!l.mu0.empty() || !l.fidelity_targets.empty())) {
    throw ConfigError("[link] distances_km: required when mu0 or fidelity_targets is set");
  }
  if (!link_rows_ok && l.scenarios.empty()) {
    throw ConfigError("[link] distances_km: at least one distance with mu0 or fidelity_targets (or a [scenario] section) is required");
  }
  const int m = cfg.source.modes_per_side;
  if (cfg.spectrum.k_min < -m || cfg.spectrum.k_max > m) {
    throw ConfigError("[spectrum] k_min: window must lie within [-modes_per_side, modes_per_side]");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

ResolvedSource resolve_source(const SourceConfig& cfg) {
  const CavityParams sig(cfg.fsr_signal_hz, cfg.finesse_signal);
  const CavityParams idl(cfg.fsr_idler_hz, cfg.finesse_idler);
  ResolvedSource out{SourceSpec{cfg.pump_hz, sig, idl, 0, 0, 0}, "", {}};
  ResonanceIndices idx;
  if (cfg.indices) {
    idx = *cfg.indices;
    out.index_method = "explicit";
  } else {
    idx = locate_cluster_center(*cfg.signal_seed_hz, cfg.pump_hz, sig, idl);
    out.index_method = "cluster-search";
  }
  out.spec = make_source_spec(cfg.pump_hz, sig, idl, idx, cfg.modes_per_side);
  if (auto w = lorentzian_validity(sig, "signal")) out.warnings.push_back(*w);
  if (auto w = lorentzian_validity(idl, "idler")) out.warnings.push_back(*w);
  return out;
}

std::vector<LinkRow> link_rows(const LinkConfig& cfg) {
  std::vector<LinkRow> rows;
  for (double d : cfg.distances_km) {
    int n = 0;
    const std::string base = distance_label(d);
    for (double mu : cfg.mu0) {
      rows.push_back({base + "-" + std::to_string(++n), d, mu, std::nullopt});
    }
    for (double f : cfg.fidelity_targets) {
      rows.push_back({base + "-" + std::to_string(++n), d, std::nullopt, f});
    }
  }
  for (const ScenarioConfig& s : cfg.scenarios) {
    int n = 0;
    for (double mu : s.mu0) {
      rows.push_back({s.label + "-" + std::to_string(++n), s.distance_km, mu, std::nullopt});
    }
    for (double f : s.fidelity_targets) {
      rows.push_back({s.label + "-" + std::to_string(++n), s.distance_km, std::nullopt, f});
    }
  }
  return rows;
}

std::vector<std::pair<std::string, std::string>> config_echo(
    const RunConfig& cfg, const ResolvedSource& src) {
  using fmt::raw;
  const SourceSpec& s = src.spec;
  auto join = [](const std::vector<double>& v) {
    std::string out;
    for (std::size_t j = 0; j < v.size(); ++j) out += (j ? "," : "") + raw(v[j]);
    return out;
  };
  std::vector<std::pair<std::string, std::string>> e{
      {"config", cfg.origin},
      {"source.pump_hz", raw(s.pump_hz)},
      {"source.fsr_signal_hz", raw(s.signal.fsr())},
      {"source.fsr_idler_hz", raw(s.idler.fsr())},
      {"source.finesse_signal", raw(s.signal.finesse())},
      {"source.finesse_idler", raw(s.idler.finesse())},
      {"source.fwhm_signal_hz", raw(s.signal.fwhm())},
      {"source.fwhm_idler_hz", raw(s.idler.fwhm())},
      {"source.k_signal", std::to_string(s.k_signal)},
      {"source.k_idler", std::to_string(s.k_idler)},
      {"source.index_method", src.index_method},
      {"source.detuning0_hz", raw(cluster_detuning(s, 0))},
      {"source.modes_per_side", std::to_string(s.modes_per_side)},
      {"link.alpha_db_per_km",
       raw(cfg.link.alpha_db_per_km) + (cfg.link.alpha_defaulted ? " (default)" : "")},
      {"link.eta_det", raw(cfg.link.eta_det)},
  };
  if (cfg.source.signal_seed_hz) {
    e.insert(e.begin() + 11, {"source.signal_seed_hz", raw(*cfg.source.signal_seed_hz)});
  }
  if (!cfg.link.distances_km.empty()) {
    e.emplace_back("link.distances_km", join(cfg.link.distances_km));
    e.emplace_back("link.mu0", join(cfg.link.mu0));
    e.emplace_back("link.fidelity_targets", join(cfg.link.fidelity_targets));
  }
  for (const ScenarioConfig& sc : cfg.link.scenarios) {
    const std::string p = "scenario." + sc.label;
    e.emplace_back(p + ".distance_km", raw(sc.distance_km));
    e.emplace_back(p + ".mu0", join(sc.mu0));
    e.emplace_back(p + ".fidelity_targets", join(sc.fidelity_targets));
  }
  e.emplace_back("spectrum.k_min", std::to_string(cfg.spectrum.k_min));
  e.emplace_back("spectrum.k_max", std::to_string(cfg.spectrum.k_max));
  e.emplace_back("spectrum.points", std::to_string(cfg.spectrum.points));
  e.emplace_back("spectrum.jsi_points", std::to_string(cfg.spectrum.jsi_points));
  e.emplace_back("spectrum.pump_sigma_hz",
                 cfg.spectrum.pump_sigma_hz ? raw(*cfg.spectrum.pump_sigma_hz) : "none");
  e.emplace_back("output.format", format_name(cfg.output.format));
  e.emplace_back("output.precision", std::to_string(cfg.output.precision));
  return e;
}

}  // namespace cavmux
