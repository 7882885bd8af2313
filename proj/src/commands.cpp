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

#include "cavmux/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "cavmux/format.hpp"
#include "cavmux/verify.hpp"

namespace cavmux {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using fmt::raw;

// Shared state of one command run.
struct Run {
  RunConfig cfg;
  ResolvedSource src;
  fmt::Echo echo;
  fs::path dir;
  std::ostream& out;
  std::ostream& err;
  bool quiet;

  void note(const std::string& line) const {
    if (!quiet) out << line << '\n';
  }
};

Run prepare(const RunConfig& base, const CommandOptions& opt, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg = base;
  if (opt.out_dir) cfg.output.dir = *opt.out_dir;
  if (opt.format) cfg.output.format = *opt.format;
  ResolvedSource src = resolve_source(cfg.source);
  for (const Warning& w : src.warnings) {
    err << "warning [" << w.code << "]: " << w.message << '\n';
  }
  fmt::Echo echo = config_echo(cfg, src);
  fs::path dir = cfg.output.dir;
  return Run{std::move(cfg), std::move(src), std::move(echo), std::move(dir), out, err, opt.quiet};
}

fs::path open_artifact(const Run& run, const std::string& name, std::ofstream& f) {
  std::error_code ec;
  fs::create_directories(run.dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + run.dir.string() + "': " + ec.message());
  const fs::path p = run.dir / name;
  f.open(p, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  return p;
}

void finish(const Run& run, const fs::path& p, std::ofstream& f) {
  f.close();
  if (!f) throw NumericError("write failed for '" + p.string() + "'");
  run.note("wrote " + p.string());
}

void write_csv(const Run& run, const std::string& name,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f;
  const fs::path p = open_artifact(run, name, f);
  fmt::write_echo(f, run.echo);
  fmt::write_csv_row(f, header);
  for (const auto& r : rows) fmt::write_csv_row(f, r);
  finish(run, p, f);
}

void write_json(const Run& run, const std::string& name, const std::string& key,
                ordered_json body) {
  ordered_json doc;
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : run.echo) config[k] = v;
  doc["config"] = std::move(config);
  doc[key] = std::move(body);
  std::ofstream f;
  const fs::path p = open_artifact(run, name, f);
  f << doc.dump(2) << '\n';
  finish(run, p, f);
}

std::vector<double> distinct_mu0(const std::vector<TableEntry>& entries) {
  std::vector<double> out;
  for (const TableEntry& e : entries) {
    if (std::find(out.begin(), out.end(), e.mu0) == out.end()) out.push_back(e.mu0);
  }
  return out;
}

std::string opt_raw(const std::optional<double>& v) { return v ? raw(*v) : ""; }

ordered_json opt_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::vector<TableEntry> compute_table(const ModeTable& modes, const LinkConfig& cfg) {
  std::vector<TableEntry> out;
  for (const LinkRow& row : link_rows(cfg)) {
    LinkParams lp;
    lp.length_km = row.distance_km;
    lp.alpha_db_per_km = cfg.alpha_db_per_km;
    lp.eta_det = cfg.eta_det;
    if (row.mu0) {
      lp.mu0 = *row.mu0;
    } else {
      lp.mu0 = solve_mu0_for_fidelity(*row.fidelity_target, lp);
      const double back = fidelity_single(lp.mu0, lp.eta_att(), lp.eta_det);
      if (std::abs(back - *row.fidelity_target) > 1e-4) {
        std::ostringstream os;
        os << "scenario " << row.label << ": solved mu0 = " << lp.mu0
           << " gives fidelity " << back << ", target " << *row.fidelity_target;
        throw NumericError(os.str());
      }
    }
    TableEntry e{row, lp.mu0, evaluate_link(modes, lp), 0.0, 0.0, std::nullopt};
    e.p_single0 = heralding_probability_single(lp.mu0, lp.eta_att(), lp.eta_det);
    e.f0 = fidelity_single(lp.mu0, lp.eta_att(), lp.eta_det);
    if (lp.mu0 > 0.0) e.ratios = improvement_ratios(e.report);
    out.push_back(std::move(e));
  }
  return out;
}

int cmd_modes(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
              std::ostream& err) {
  const Run run = prepare(cfg, opt, out, err);
  const ModeTable modes = build_mode_table(run.src.spec);
  const std::vector<double> mus = distinct_mu0(compute_table(modes, run.cfg.link));
  const ModeRow& c0 = modes.at(0);

  if (run.cfg.output.format == OutputFormat::json) {
    ordered_json rows = ordered_json::array();
    for (const ModeRow& r : modes.rows) {
      ordered_json j;
      j["k"] = r.k;
      j["detuning_hz"] = r.detuning_hz;
      j["c_signal"] = r.c_signal;
      j["c_idler"] = r.c_idler;
      j["c_signal_rel"] = r.c_signal / c0.c_signal;
      j["c_idler_rel"] = r.c_idler / c0.c_idler;
      j["squeeze_ratio"] = r.squeeze_ratio;
      j["quadrature_rel_error"] = r.relative_error;
      ordered_json mu = ordered_json::array();
      for (double m0 : mus) mu.push_back({{"mu0", m0}, {"mu_k", mean_photon_number(m0, r.squeeze_ratio)}});
      j["mu"] = std::move(mu);
      rows.push_back(std::move(j));
    }
    write_json(run, "modes.json", "modes", std::move(rows));
  } else {
    std::vector<std::string> header{"k", "detuning_hz", "c_signal", "c_idler",
                                    "c_signal_rel", "c_idler_rel", "squeeze_ratio",
                                    "quadrature_rel_error"};
    for (double m0 : mus) header.push_back("mu_k@mu0=" + raw(m0));
    std::vector<std::vector<std::string>> rows;
    for (const ModeRow& r : modes.rows) {
      std::vector<std::string> f{std::to_string(r.k), raw(r.detuning_hz), raw(r.c_signal),
                                 raw(r.c_idler), raw(r.c_signal / c0.c_signal),
                                 raw(r.c_idler / c0.c_idler), raw(r.squeeze_ratio),
                                 raw(r.relative_error)};
      for (double m0 : mus) f.push_back(raw(mean_photon_number(m0, r.squeeze_ratio)));
      rows.push_back(std::move(f));
    }
    write_csv(run, "modes.csv", header, rows);
  }

  double sum_sq = 0.0;
  for (const ModeRow& r : modes.rows) sum_sq += r.squeeze_ratio * r.squeeze_ratio;
  std::ostringstream os;
  os << modes.rows.size() << " modes, K_S = " << run.src.spec.k_signal
     << ", K_I = " << run.src.spec.k_idler << ", envelope max at k = "
     << modes.envelope_argmax() << ", sum of squared ratios = " << fmt::sig(sum_sq, 6);
  run.note(os.str());
  return kExitOk;
}

int cmd_table(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
              std::ostream& err) {
  const Run run = prepare(cfg, opt, out, err);
  const ModeTable modes = build_mode_table(run.src.spec);
  const std::vector<TableEntry> entries = compute_table(modes, run.cfg.link);
  const int p = run.cfg.output.precision;

  if (run.cfg.output.format == OutputFormat::json) {
    ordered_json rows = ordered_json::array();
    for (const TableEntry& e : entries) {
      ordered_json j;
      j["scenario"] = e.row.label;
      j["distance_km"] = e.row.distance_km;
      j["mu0"] = e.mu0;
      j["mu0_source"] = e.row.mu0 ? "given" : "solved";
      j["fidelity_target"] = opt_json(e.row.fidelity_target);
      j["eta_att"] = e.report.params.eta_att();
      j["single_mode"] = {{"mean_photon_number", e.mu0},
                          {"heralding_probability", e.p_single0},
                          {"fidelity", e.f0}};
      j["multimode"] = {{"mean_photon_number", e.report.mu_multi},
                        {"heralding_probability", e.report.p_multi},
                        {"fidelity", e.report.f_min},
                        {"fidelity_min_mode", e.report.f_min_mode},
                        {"mu_ratio", e.ratios ? ordered_json(e.ratios->mu_ratio) : ordered_json(nullptr)},
                        {"p_ratio", e.ratios ? ordered_json(e.ratios->p_ratio) : ordered_json(nullptr)}};
      rows.push_back(std::move(j));
    }
    write_json(run, "table.json", "rows", std::move(rows));
  } else {
    const std::vector<std::string> header{
        "scenario", "distance_km", "mu0", "mu0_source", "fidelity_target", "case",
        "mean_photon_number", "heralding_probability_pct", "fidelity", "mu_ratio", "p_ratio"};
    std::vector<std::vector<std::string>> pretty;
    std::vector<std::vector<std::string>> full;
    for (const TableEntry& e : entries) {
      const std::string src = e.row.mu0 ? "given" : "solved";
      const std::vector<std::string> lead_pretty{e.row.label, raw(e.row.distance_km),
                                                 fmt::sig(e.mu0, p), src,
                                                 opt_raw(e.row.fidelity_target)};
      const std::vector<std::string> lead_full{e.row.label, raw(e.row.distance_km), raw(e.mu0),
                                               src, opt_raw(e.row.fidelity_target)};
      auto add = [&](std::vector<std::vector<std::string>>& dst,
                     const std::vector<std::string>& lead, std::vector<std::string> tail) {
        std::vector<std::string> r = lead;
        r.insert(r.end(), tail.begin(), tail.end());
        dst.push_back(std::move(r));
      };
      const std::string mr = e.ratios ? fmt::sig(e.ratios->mu_ratio, p) : "";
      const std::string pr = e.ratios ? fmt::sig(e.ratios->p_ratio, p) : "";
      add(pretty, lead_pretty, {"SM", fmt::sig(e.mu0, p), fmt::sig(100.0 * e.p_single0, p),
                                fmt::sig(e.f0, p + 1), "", ""});
      add(pretty, lead_pretty, {"MM", fmt::sig(e.report.mu_multi, p),
                                fmt::sig(100.0 * e.report.p_multi, p),
                                fmt::sig(e.report.f_min, p + 1), mr, pr});
      add(full, lead_full, {"SM", raw(e.mu0), raw(100.0 * e.p_single0), raw(e.f0), "", ""});
      add(full, lead_full, {"MM", raw(e.report.mu_multi), raw(100.0 * e.report.p_multi),
                            raw(e.report.f_min), e.ratios ? raw(e.ratios->mu_ratio) : "",
                            e.ratios ? raw(e.ratios->p_ratio) : ""});
    }
    write_csv(run, "table.csv", header, pretty);
    write_csv(run, "table_raw.csv", header, full);
  }

  if (!run.quiet) {
    out << std::left << std::setw(12) << "scenario" << std::setw(8) << "L_km"
        << std::setw(9) << "mu0" << std::setw(5) << "case" << std::setw(10) << "mu"
        << std::setw(10) << "P_%" << std::setw(9) << "F" << std::setw(8) << "mu_x"
        << "P_x" << '\n';
    for (const TableEntry& e : entries) {
      out << std::setw(12) << e.row.label << std::setw(8) << raw(e.row.distance_km)
          << std::setw(9) << fmt::sig(e.mu0, p) << std::setw(5) << "SM" << std::setw(10)
          << fmt::sig(e.mu0, p) << std::setw(10) << fmt::sig(100.0 * e.p_single0, p)
          << fmt::sig(e.f0, p + 1) << '\n';
      out << std::setw(12) << "" << std::setw(8) << "" << std::setw(9) << "" << std::setw(5)
          << "MM" << std::setw(10) << fmt::sig(e.report.mu_multi, p) << std::setw(10)
          << fmt::sig(100.0 * e.report.p_multi, p) << std::setw(9)
          << fmt::sig(e.report.f_min, p + 1) << std::setw(8)
          << (e.ratios ? fmt::sig(e.ratios->mu_ratio, p) : "-")
          << (e.ratios ? fmt::sig(e.ratios->p_ratio, p) : "-") << '\n';
    }
  }
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
                 std::ostream& err) {
  const Run run = prepare(cfg, opt, out, err);
  const SpectrumConfig& sc = run.cfg.spectrum;
  const SourceSpec& spec = run.src.spec;
  const std::vector<SpectrumSample> line =
      signal_spectrum_samples(spec, sc.k_min, sc.k_max, sc.points);
  std::vector<JsiSample> grid;
  if (sc.jsi_points > 0) {
    grid = jsi_grid_samples(spec, sc.k_min, sc.k_max, sc.jsi_points, sc.pump_sigma_hz);
  }

  if (run.cfg.output.format == OutputFormat::json) {
    ordered_json body;
    ordered_json l = ordered_json::array();
    for (const SpectrumSample& s : line) {
      l.push_back({{"nu_hz", s.nu_s}, {"offset_hz", s.offset}, {"airy_product", s.airy_product},
                   {"xi_center", s.xi_center}, {"xi_cluster", s.xi_cluster},
                   {"jsi_line", s.jsi_line}});
    }
    body["line"] = std::move(l);
    ordered_json g = ordered_json::array();
    for (const JsiSample& s : grid) {
      g.push_back({{"nu_s_hz", s.nu_s}, {"nu_i_hz", s.nu_i}, {"jsi_exact", s.exact},
                   {"jsi_approx", s.approx}});
    }
    body["jsi"] = std::move(g);
    write_json(run, "spectrum.json", "spectrum", std::move(body));
  } else {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(line.size());
    for (const SpectrumSample& s : line) {
      rows.push_back({raw(s.nu_s), raw(s.offset), raw(s.airy_product), raw(s.xi_center),
                      raw(s.xi_cluster), raw(s.jsi_line)});
    }
    write_csv(run, "spectrum.csv",
              {"nu_hz", "offset_hz", "airy_product", "xi_center", "xi_cluster", "jsi_line"}, rows);
    if (!grid.empty()) {
      rows.clear();
      rows.reserve(grid.size());
      for (const JsiSample& s : grid) {
        rows.push_back({raw(s.nu_s), raw(s.nu_i), raw(s.exact), raw(s.approx)});
      }
      write_csv(run, "jsi.csv", {"nu_s_hz", "nu_i_hz", "jsi_exact", "jsi_approx"}, rows);
    }
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
               std::ostream& err) {
  const Run run = prepare(cfg, opt, out, err);
  const VerifyReport rep = run_verification(run.src.spec);
  for (const Warning& w : rep.warnings) {
    err << "warning [" << w.code << "]: " << w.message << '\n';
  }

  if (run.cfg.output.format == OutputFormat::json) {
    ordered_json rows = ordered_json::array();
    for (const CheckResult& c : rep.checks) {
      rows.push_back({{"check", c.name}, {"status", status_name(c.status)},
                      {"measured", c.measured}, {"tolerance", c.tolerance}, {"detail", c.detail}});
    }
    write_json(run, "verify.json", "checks", std::move(rows));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const CheckResult& c : rep.checks) {
      rows.push_back({c.name, status_name(c.status), raw(c.measured), raw(c.tolerance), c.detail});
    }
    write_csv(run, "verify.csv", {"check", "status", "measured", "tolerance", "detail"}, rows);
  }

  if (!run.quiet) {
    for (const CheckResult& c : rep.checks) {
      out << status_name(c.status) << "  " << std::left << std::setw(24) << c.name
          << " measured " << std::setw(11) << fmt::sci(c.measured, 4) << " tol "
          << std::setw(8) << raw(c.tolerance) << "  " << c.detail << '\n';
    }
    out << (rep.passed() ? "all checks passed" : "verification FAILED") << '\n';
  }
  return rep.passed() ? kExitOk : kExitVerify;
}

int cmd_solve(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
              std::ostream& err) {
  const Run run = prepare(cfg, opt, out, err);
  struct Solved {
    LinkRow row;
    double mu0;
    double fidelity;
  };
  std::vector<Solved> solved;
  for (const LinkRow& row : link_rows(run.cfg.link)) {
    if (!row.fidelity_target) continue;
    LinkParams lp;
    lp.length_km = row.distance_km;
    lp.alpha_db_per_km = run.cfg.link.alpha_db_per_km;
    lp.eta_det = run.cfg.link.eta_det;
    const double mu0 = solve_mu0_for_fidelity(*row.fidelity_target, lp);
    solved.push_back({row, mu0, fidelity_single(mu0, lp.eta_att(), lp.eta_det)});
  }
  if (solved.empty()) {
    throw ConfigError("[link] fidelity_targets: solve needs at least one fidelity target");
  }

  if (run.cfg.output.format == OutputFormat::json) {
    ordered_json rows = ordered_json::array();
    for (const Solved& s : solved) {
      rows.push_back({{"scenario", s.row.label}, {"distance_km", s.row.distance_km},
                      {"fidelity_target", *s.row.fidelity_target}, {"mu0", s.mu0},
                      {"fidelity", s.fidelity}});
    }
    write_json(run, "solve.json", "solutions", std::move(rows));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const Solved& s : solved) {
      rows.push_back({s.row.label, raw(s.row.distance_km), raw(*s.row.fidelity_target),
                      raw(s.mu0), raw(s.fidelity)});
    }
    write_csv(run, "solve.csv", {"scenario", "distance_km", "fidelity_target", "mu0", "fidelity"},
              rows);
  }
  for (const Solved& s : solved) {
    run.note(s.row.label + ": L = " + raw(s.row.distance_km) + " km, F = " +
             raw(*s.row.fidelity_target) + " -> mu0 = " + fmt::sig(s.mu0, 6));
  }
  return kExitOk;
}

}  // namespace cavmux
