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

#include "cavmux/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <sstream>

#include "cavmux/quadrature.hpp"

namespace cavmux {

namespace {

using cplx = std::complex<double>;

// Real Lorentzian 1/(1 + (2x/G)^2).
double lorentz(double x, double fwhm) {
  const double t = 2.0 * x / fwhm;
  return 1.0 / (1.0 + t * t);
}

// Complex Lorentzian 1/(1 + i s (2/G) x) with s = +1 or -1.
cplx clorentz(double x, double fwhm, double sign) {
  return 1.0 / cplx(1.0, sign * 2.0 * x / fwhm);
}

long double signal_center_ld(const SourceSpec& s, int k) {
  return static_cast<long double>(s.k_signal + k) * s.signal.fsr();
}

long double idler_center_ld(const SourceSpec& s, int k) {
  return static_cast<long double>(s.k_idler - k) * s.idler.fsr();
}

void require_mode(const SourceSpec& s, int k) {
  if (k < -s.modes_per_side || k > s.modes_per_side) {
    std::ostringstream os;
    os << "mode index " << k << " outside [-" << s.modes_per_side << ", "
       << s.modes_per_side << "]";
    throw ConfigError(os.str());
  }
}

// Offsets of a signal/idler pair from the k-th resonance centres, computed
// in extended precision because the absolute frequencies are ~1e14 Hz.
struct JointOffsets {
  double s;       // nu_s - a_k
  double s_conj;  // nu_p0 - nu_s - b_k
  double i_conj;  // nu_p0 - nu_i - a_k
  double i;       // nu_i - b_k
};

JointOffsets joint_offsets(const SourceSpec& spec, int k, double nu_s,
                           double nu_i) {
  const long double a = signal_center_ld(spec, k);
  const long double b = idler_center_ld(spec, k);
  const long double p = spec.pump_hz;
  return {static_cast<double>(nu_s - a), static_cast<double>(p - nu_s - b),
          static_cast<double>(p - nu_i - a), static_cast<double>(nu_i - b)};
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1);
  }
  return out;
}

void require_window(const SourceSpec& spec, int k_lo, int k_hi) {
  if (k_lo > k_hi) throw ConfigError("sample window: k_min must not exceed k_max");
  require_mode(spec, k_lo);
  require_mode(spec, k_hi);
}

}  // namespace

SourceSpec make_source_spec(double pump_hz, const CavityParams& signal,
                            const CavityParams& idler, ResonanceIndices idx,
                            int modes_per_side) {
  if (!(pump_hz > 0.0) || !std::isfinite(pump_hz)) {
    throw ConfigError("source: pump frequency must be > 0");
  }
  if (modes_per_side < 0) {
    throw ConfigError("source: modes_per_side must be >= 0");
  }
  const double d0 = joint_detuning(idx, pump_hz, signal, idler);
  if (!(std::abs(d0) <= 0.5 * idler.fsr())) {
    std::ostringstream os;
    os.precision(10);
    os << "source: K_S = " << idx.signal << ", K_I = " << idx.idler
       << " leave a joint detuning of " << d0
       << " Hz, more than half an idler FSR";
    throw ConfigError(os.str());
  }
  return SourceSpec{pump_hz, signal, idler, idx.signal, idx.idler,
                    modes_per_side};
}

double cluster_detuning(const SourceSpec& spec, int k) {
  return static_cast<double>(signal_center_ld(spec, k) +
                             idler_center_ld(spec, k) - spec.pump_hz);
}

double signal_center(const SourceSpec& spec, int k) {
  return static_cast<double>(signal_center_ld(spec, k));
}

double idler_center(const SourceSpec& spec, int k) {
  return static_cast<double>(idler_center_ld(spec, k));
}

std::complex<double> signal_amplitude_at_offset(const SourceSpec& spec, int k,
                                                double x) {
  const double d = cluster_detuning(spec, k);
  return std::sqrt(clorentz(x, spec.signal.fwhm(), -1.0) *
                   clorentz(-d - x, spec.idler.fwhm(), -1.0));
}

std::complex<double> idler_amplitude_at_offset(const SourceSpec& spec, int k,
                                               double y) {
  const double d = cluster_detuning(spec, k);
  return std::sqrt(clorentz(-d - y, spec.signal.fwhm(), -1.0) *
                   clorentz(y, spec.idler.fwhm(), -1.0));
}

double signal_density_at_offset(const SourceSpec& spec, int k, double x) {
  const double d = cluster_detuning(spec, k);
  return std::sqrt(lorentz(x, spec.signal.fwhm()) *
                   lorentz(x + d, spec.idler.fwhm()));
}

double idler_density_at_offset(const SourceSpec& spec, int k, double y) {
  const double d = cluster_detuning(spec, k);
  return std::sqrt(lorentz(y + d, spec.signal.fwhm()) *
                   lorentz(y, spec.idler.fwhm()));
}

std::complex<double> mode_amplitude_signal(const SourceSpec& spec, int k,
                                           double nu_s) {
  require_mode(spec, k);
  return signal_amplitude_at_offset(
      spec, k, static_cast<double>(nu_s - signal_center_ld(spec, k)));
}

std::complex<double> mode_amplitude_idler(const SourceSpec& spec, int k,
                                          double nu_i) {
  require_mode(spec, k);
  return idler_amplitude_at_offset(
      spec, k, static_cast<double>(nu_i - idler_center_ld(spec, k)));
}

NormalizationConstants normalization_constants(const SourceSpec& spec, int k) {
  require_mode(spec, k);
  const double d = cluster_detuning(spec, k);
  const double g_s = spec.signal.fwhm();
  const double g_i = spec.idler.fwhm();
  quad::PeakedOptions opts;
  opts.half_range = kQuadratureWindowLinewidths * std::max(g_s, g_i);
  opts.panel_rel_tol = 1e-8;
  const double width = 0.5 * std::min(g_s, g_i);

  // Signal density peaks at offsets 0 and -d, idler density at -d and 0.
  const std::array<double, 2> centers{0.0, -d};
  const quad::Result rs = quad::integrate_peaked(
      [&](double x) { return signal_density_at_offset(spec, k, x); }, centers,
      width, opts);
  const quad::Result ri = quad::integrate_peaked(
      [&](double y) { return idler_density_at_offset(spec, k, y); }, centers,
      width, opts);

  const double rel = std::max(rs.error / rs.value, ri.error / ri.value);
  if (!(rel <= kNormalizationRelTol) || !(rs.value > 0.0) || !(ri.value > 0.0)) {
    std::ostringstream os;
    os << "normalization quadrature for mode k = " << k
       << " reached relative error " << rel << " (target "
       << kNormalizationRelTol << ")";
    throw QuadratureError(os.str(), rel);
  }
  return {std::sqrt(rs.value), std::sqrt(ri.value), rel};
}

double xi(const SourceSpec& spec, std::int64_t m_s, std::int64_t m_i,
          double nu_s, double nu_i) {
  const long double xs =
      nu_s - static_cast<long double>(m_s) * spec.signal.fsr();
  const long double xi_ =
      nu_i - static_cast<long double>(m_i) * spec.idler.fsr();
  return lorentz(static_cast<double>(xs), spec.signal.fwhm()) *
         lorentz(static_cast<double>(xi_), spec.idler.fwhm());
}

std::complex<double> jsa_approx(const SourceSpec& spec, double nu_s,
                                double nu_i) {
  const double g_s = spec.signal.fwhm();
  const double g_i = spec.idler.fwhm();
  cplx sum = 0.0;
  for (int k = -spec.modes_per_side; k <= spec.modes_per_side; ++k) {
    const JointOffsets o = joint_offsets(spec, k, nu_s, nu_i);
    sum += std::sqrt(clorentz(o.s, g_s, 1.0) * clorentz(o.s_conj, g_i, 1.0)) *
           std::sqrt(clorentz(o.i_conj, g_s, 1.0) * clorentz(o.i, g_i, 1.0));
  }
  return sum;
}

double jsi_approx_term(const SourceSpec& spec, int k, double nu_s,
                       double nu_i) {
  require_mode(spec, k);
  const double g_s = spec.signal.fwhm();
  const double g_i = spec.idler.fwhm();
  const JointOffsets o = joint_offsets(spec, k, nu_s, nu_i);
  return std::sqrt(lorentz(o.s, g_s) * lorentz(o.s_conj, g_i)) *
         std::sqrt(lorentz(o.i_conj, g_s) * lorentz(o.i, g_i));
}

double jsi_approx(const SourceSpec& spec, double nu_s, double nu_i) {
  double sum = 0.0;
  for (int k = -spec.modes_per_side; k <= spec.modes_per_side; ++k) {
    sum += jsi_approx_term(spec, k, nu_s, nu_i);
  }
  return sum;
}

const ModeRow& ModeTable::at(int k) const {
  const int m = modes_per_side();
  if (k < -m || k > m) {
    throw ConfigError("mode table: index out of range");
  }
  return rows[static_cast<std::size_t>(k + m)];
}

int ModeTable::envelope_argmax() const {
  int best = rows.front().k;
  double best_v = -1.0;
  for (const ModeRow& r : rows) {
    const double v = r.c_signal * r.c_idler;
    if (v > best_v) {
      best_v = v;
      best = r.k;
    }
  }
  return best;
}

ModeTable build_mode_table(const SourceSpec& spec) {
  const int m = spec.modes_per_side;
  std::vector<std::future<NormalizationConstants>> jobs;
  jobs.reserve(static_cast<std::size_t>(spec.mode_count()));
  for (int k = -m; k <= m; ++k) {
    jobs.push_back(std::async(std::launch::async,
                              [&spec, k] { return normalization_constants(spec, k); }));
  }

  ModeTable table;
  table.rows.reserve(jobs.size());
  for (int k = -m; k <= m; ++k) {
    const NormalizationConstants c = jobs[static_cast<std::size_t>(k + m)].get();
    table.rows.push_back({k, cluster_detuning(spec, k), c.signal, c.idler, 0.0,
                          c.relative_error});
  }
  const ModeRow& center = table.at(0);
  const double ref = center.c_signal * center.c_idler;
  for (ModeRow& r : table.rows) {
    r.squeeze_ratio = r.k == 0 ? 1.0 : r.c_signal * r.c_idler / ref;
  }
  return table;
}

int min_detuning_mode(const SourceSpec& spec) {
  int best = -spec.modes_per_side;
  double best_abs = std::abs(cluster_detuning(spec, best));
  for (int k = best + 1; k <= spec.modes_per_side; ++k) {
    const double d = std::abs(cluster_detuning(spec, k));
    if (d < best_abs) {
      best_abs = d;
      best = k;
    }
  }
  return best;
}

std::vector<SpectrumSample> signal_spectrum_samples(const SourceSpec& spec,
                                                    int k_lo, int k_hi,
                                                    std::size_t n_points) {
  if (n_points < 2) throw ConfigError("spectrum: need at least 2 points");
  require_window(spec, k_lo, k_hi);
  const double fsr = spec.signal.fsr();
  const long double a0 = signal_center_ld(spec, 0);
  const std::vector<double> offsets =
      linspace((k_lo - 0.5) * fsr, (k_hi + 0.5) * fsr, n_points);

  std::vector<SpectrumSample> out;
  out.reserve(n_points);
  for (double off : offsets) {
    const long double nu_s_ld = a0 + off;
    const double nu_s = static_cast<double>(nu_s_ld);
    const double nu_i = static_cast<double>(spec.pump_hz - nu_s_ld);
    SpectrumSample s{};
    s.nu_s = nu_s;
    s.offset = off;
    s.airy_product = airy_normalized(nu_s, spec.signal) *
                     airy_normalized(nu_i, spec.idler);
    s.xi_center = xi(spec, spec.k_signal, spec.k_idler, nu_s, nu_i);
    for (int k = -spec.modes_per_side; k <= spec.modes_per_side; ++k) {
      s.xi_cluster += xi(spec, spec.k_signal + k, spec.k_idler - k, nu_s, nu_i);
    }
    s.jsi_line = jsi_approx(spec, nu_s, nu_i);
    out.push_back(s);
  }
  return out;
}

std::vector<JsiSample> jsi_grid_samples(const SourceSpec& spec, int k_lo,
                                        int k_hi, std::size_t n,
                                        std::optional<double> sigma_pump_hz) {
  if (n < 2) throw ConfigError("jsi grid: need at least 2 points per axis");
  require_window(spec, k_lo, k_hi);
  if (sigma_pump_hz && !(*sigma_pump_hz > 0.0)) {
    throw ConfigError("jsi grid: pump sigma must be > 0");
  }
  const double fs = spec.signal.fsr();
  const double fi = spec.idler.fsr();
  const std::vector<double> ns = linspace(
      signal_center(spec, k_lo) - 0.5 * fs, signal_center(spec, k_hi) + 0.5 * fs, n);
  const std::vector<double> ni = linspace(
      idler_center(spec, k_hi) - 0.5 * fi, idler_center(spec, k_lo) + 0.5 * fi, n);

  std::vector<JsiSample> out;
  out.reserve(n * n);
  for (double nu_s : ns) {
    const double a_s = airy_normalized(nu_s, spec.signal);
    const double a_s_conj =
        airy_normalized(static_cast<double>(spec.pump_hz - static_cast<long double>(nu_s)),
                        spec.idler);
    for (double nu_i : ni) {
      const double a_i = airy_normalized(nu_i, spec.idler);
      const double a_i_conj =
          airy_normalized(static_cast<double>(spec.pump_hz - static_cast<long double>(nu_i)),
                          spec.signal);
      double env = 1.0;
      if (sigma_pump_hz) {
        const double dp = static_cast<double>(static_cast<long double>(nu_s) + nu_i -
                                              spec.pump_hz);
        env = std::exp(-dp * dp / (2.0 * *sigma_pump_hz * *sigma_pump_hz));
      }
      out.push_back({nu_s, nu_i, env * std::sqrt(a_s * a_s_conj * a_i_conj * a_i),
                     env * jsi_approx(spec, nu_s, nu_i)});
    }
  }
  return out;
}

}  // namespace cavmux
