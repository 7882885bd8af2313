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

#include "cavmux/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cavmux/quadrature.hpp"
#include "cavmux/tmsv.hpp"

namespace cavmux {

namespace {

CheckResult bounded(std::string name, double measured, double tol,
                    std::string detail) {
  const CheckStatus s = measured <= tol ? CheckStatus::pass : CheckStatus::fail;
  return {std::move(name), s, measured, tol, std::move(detail)};
}

CheckResult skipped(std::string name, double tol, std::string why) {
  return {std::move(name), CheckStatus::skip, 0.0, tol, std::move(why)};
}

std::vector<int> sample_modes(int m) {
  std::vector<int> ks{-m, -m / 2, 0, m / 2, m};
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

}  // namespace

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skip: return "SKIP";
  }
  return "?";
}

bool VerifyReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckStatus::fail;
  });
}

double lorentzian_sum_deviation(const CavityParams& cav, int half_window,
                                std::size_t samples) {
  double worst = 0.0;
  const double fsr = cav.fsr();
  for (std::size_t j = 0; j < samples; ++j) {
    const double nu = fsr * (-0.5 + static_cast<double>(j) / static_cast<double>(samples - 1));
    const double d = std::abs(airy_lorentzian_sum(nu, cav, -half_window, half_window) -
                              airy_normalized(nu, cav));
    worst = std::max(worst, d);
  }
  return worst;
}

double quadrature_oracle_error(double fwhm_hz) {
  const double fsr = 1e9;
  const CavityParams cav(fsr, fsr / fwhm_hz);
  const SourceSpec spec = make_source_spec(1800.0 * fsr, cav, cav, {1000, 800}, 0);
  const NormalizationConstants c = normalization_constants(spec, 0);
  const double exact = 0.5 * std::numbers::pi * cav.fwhm();
  return std::max(std::abs(c.signal * c.signal / exact - 1.0),
                  std::abs(c.idler * c.idler / exact - 1.0));
}

double jsa_jsi_deviation(const SourceSpec& spec, int half_modes, std::size_t n) {
  const int h = std::min(half_modes, spec.modes_per_side);
  const double fs = spec.signal.fsr();
  const double fi = spec.idler.fsr();
  const double s_lo = signal_center(spec, -h) - 0.5 * fs;
  const double s_hi = signal_center(spec, h) + 0.5 * fs;
  const double i_lo = idler_center(spec, h) - 0.5 * fi;
  const double i_hi = idler_center(spec, -h) + 0.5 * fi;
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double nu_s = s_lo + (s_hi - s_lo) * static_cast<double>(a) / static_cast<double>(n - 1);
    for (std::size_t b = 0; b < n; ++b) {
      const double nu_i = i_lo + (i_hi - i_lo) * static_cast<double>(b) / static_cast<double>(n - 1);
      const double d = std::abs(std::norm(jsa_approx(spec, nu_s, nu_i)) -
                                jsi_approx(spec, nu_s, nu_i));
      worst = std::max(worst, d);
    }
  }
  return worst;
}

double mode_normalization_residual(const SourceSpec& spec, int k,
                                   const NormalizationConstants& c) {
  const double d = cluster_detuning(spec, k);
  const std::array<double, 2> centers{0.0, -d};
  const double width = 0.5 * std::min(spec.signal.fwhm(), spec.idler.fwhm());
  const double cs2 = c.signal * c.signal;
  const double ci2 = c.idler * c.idler;
  const quad::Result rs = quad::integrate_mapped(
      [&](double x) { return signal_density_at_offset(spec, k, x) / cs2; },
      centers, width);
  const quad::Result ri = quad::integrate_mapped(
      [&](double y) { return idler_density_at_offset(spec, k, y) / ci2; },
      centers, width);
  return std::max(std::abs(rs.value - 1.0), std::abs(ri.value - 1.0));
}

double mode_overlap(const SourceSpec& spec, int k, int j) {
  const NormalizationConstants ck = normalization_constants(spec, k);
  const NormalizationConstants cj = normalization_constants(spec, j);
  // Offsets are taken from the k-th signal centre.
  const double shift = (j - k) * spec.signal.fsr();
  const std::array<double, 4> centers{0.0, -cluster_detuning(spec, k), shift,
                                      shift - cluster_detuning(spec, j)};
  quad::PeakedOptions opts;
  opts.half_range = kQuadratureWindowLinewidths *
                    std::max(spec.signal.fwhm(), spec.idler.fwhm());
  opts.panel_rel_tol = 1e-8;
  const double width = 0.5 * std::min(spec.signal.fwhm(), spec.idler.fwhm());
  auto product = [&](double x) {
    return std::conj(signal_amplitude_at_offset(spec, k, x)) *
           signal_amplitude_at_offset(spec, j, x - shift);
  };
  const quad::Result re = quad::integrate_peaked(
      [&](double x) { return product(x).real(); }, centers, width, opts);
  const quad::Result im = quad::integrate_peaked(
      [&](double x) { return product(x).imag(); }, centers, width, opts);
  return std::hypot(re.value, im.value) / (ck.signal * cj.signal);
}

double thermal_sum_residual(const std::vector<double>& mus) {
  double worst = 0.0;
  for (double mu : mus) {
    const ThermalSums s = thermal_sums(mu);
    worst = std::max({worst, std::abs(s.norm - 1.0), std::abs(s.mean - mu)});
  }
  return worst;
}

VerifyReport run_verification(const SourceSpec& spec) {
  VerifyReport r;
  const int m = spec.modes_per_side;

  for (const auto& [cav, role] : {std::pair{spec.signal, "signal"}, std::pair{spec.idler, "idler"}}) {
    if (auto w = lorentzian_validity(cav, role)) r.warnings.push_back(*w);
  }
  {
    const double f = std::min(spec.signal.finesse(), spec.idler.finesse());
    std::ostringstream os;
    os << "lowest finesse " << f << ", bound " << kLorentzianFinesseBound;
    r.checks.push_back({"lorentzian-validity",
                        f >= kLorentzianFinesseBound ? CheckStatus::pass : CheckStatus::fail,
                        f, kLorentzianFinesseBound, os.str()});
  }

  for (const auto& [cav, role] : {std::pair{spec.signal, "signal"}, std::pair{spec.idler, "idler"}}) {
    const std::string name = std::string("lorentzian-sum-") + role;
    if (cav.finesse() < kLorentzSumMinFinesse) {
      r.checks.push_back(skipped(name, kLorentzSumTol, "finesse below 30"));
    } else {
      r.checks.push_back(bounded(name, lorentzian_sum_deviation(cav), kLorentzSumTol,
                                 "max |sum of 101 Lorentzians - Airy| over one FSR"));
    }
  }

  {
    double worst = 0.0;
    for (double g : {1e6, 2e6, 4e6}) worst = std::max(worst, quadrature_oracle_error(g));
    r.checks.push_back(bounded("quadrature-oracle", worst, kQuadratureOracleTol,
                               "|C^2 / (pi G/2) - 1| for G = 1, 2, 4 MHz"));
  }

  {
    const double tol = m == 0 ? kJsaJsiSingleModeTol : kJsaJsiTol;
    const int h = std::min(4, m);
    std::ostringstream os;
    os << "max ||jsa|^2 - jsi| on 200x200 grid over modes " << -h << ".." << h;
    r.checks.push_back(bounded("jsa-jsi-equivalence", jsa_jsi_deviation(spec), tol, os.str()));
  }

  {
    double worst = 0.0;
    for (int k : sample_modes(m)) {
      worst = std::max(worst, mode_normalization_residual(spec, k, normalization_constants(spec, k)));
    }
    r.checks.push_back(bounded("mode-normalization", worst, kModeNormTol,
                               "|norm - 1| by tan-mapped tanh-sinh, k in {-M, -M/2, 0, M/2, M}"));
  }

  {
    const double f = std::min(spec.signal.finesse(), spec.idler.finesse());
    if (m == 0) {
      r.checks.push_back(skipped("near-orthogonality", kOrthogonalityTol, "single mode"));
    } else if (f < kLorentzSumMinFinesse) {
      r.checks.push_back(skipped("near-orthogonality", kOrthogonalityTol, "finesse below 30"));
    } else {
      double worst = 0.0;
      int worst_j = 0;
      for (int j : {-1, 1, 2, 5}) {
        if (std::abs(j) > m) continue;
        const double o = mode_overlap(spec, 0, j);
        if (o > worst) {
          worst = o;
          worst_j = j;
        }
      }
      std::ostringstream os;
      os << "max |<psi_0|psi_j>| for j in {-1, 1, 2, 5}; worst at j = " << worst_j;
      r.checks.push_back(bounded("near-orthogonality", worst, kOrthogonalityTol, os.str()));
    }
  }

  r.checks.push_back(bounded("thermal-sums",
                             thermal_sum_residual({0.0, 1e-4, 0.01, 0.038, 0.1, 1.0, 5.0}),
                             kThermalTol, "|sum P - 1| and |sum nP - mu| for mu in [0, 5]"));
  return r;
}

}  // namespace cavmux
