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

#include "cavmux/cavity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "cavmux/units.hpp"

namespace cavmux {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << "mirror set: " << name << " must lie in [0, 1] (got " << v << ")";
    throw ConfigError(os.str());
  }
}

// Rounds to nearest with ties to even, under the default FP environment.
std::int64_t round_even(long double x) {
  return static_cast<std::int64_t>(std::nearbyint(x));
}

double require_sub_unit_gain(const MirrorSet& m) {
  m.validate();
  return m.round_trip_gain();
}

}  // namespace

double MirrorSet::round_trip_gain() const {
  return std::sqrt(r1 * r2 * r3 * r4 * loss);
}

void MirrorSet::validate() const {
  require_unit_interval(r1, "R1");
  require_unit_interval(r2, "R2");
  require_unit_interval(r3, "R3");
  require_unit_interval(r4, "R4");
  if (!(loss > 0.0 && loss <= 1.0)) {
    std::ostringstream os;
    os << "mirror set: round-trip loss factor G must lie in (0, 1] (got "
       << loss << ")";
    throw ConfigError(os.str());
  }
  if (!(path_length > 0.0)) {
    throw ConfigError("mirror set: round-trip optical path must be > 0");
  }
  if (!(exit_path >= 0.0 && exit_path <= path_length)) {
    throw ConfigError("mirror set: exit path must lie in [0, L_opt]");
  }
  if (!(round_trip_gain() < 1.0)) {
    throw ConfigError(
        "mirror set: round-trip gain g = 1 has no steady state (lossless "
        "closed cavity)");
  }
}

CavityParams::CavityParams(double fsr_hz, double finesse)
    : fsr_(fsr_hz), finesse_(finesse), fwhm_(fsr_hz / finesse) {
  if (!(fsr_hz > 0.0) || !std::isfinite(fsr_hz)) {
    std::ostringstream os;
    os << "cavity: free spectral range must be > 0 Hz (got " << fsr_hz << ")";
    throw ConfigError(os.str());
  }
  if (!(finesse > 0.0) || !std::isfinite(finesse)) {
    std::ostringstream os;
    os << "cavity: finesse must be > 0 (got " << finesse << ")";
    throw ConfigError(os.str());
  }
}

std::optional<Warning> lorentzian_validity(const CavityParams& cav,
                                           const char* role) {
  if (cav.lorentzian_valid()) return std::nullopt;
  std::ostringstream os;
  os << role << " cavity finesse " << cav.finesse()
     << " is below " << kLorentzianFinesseBound
     << "; the Lorentzian-sum approximation of the Airy profile is not "
        "trusted";
  return Warning{"low-finesse", os.str()};
}

double airy_normalized(double nu, const CavityParams& cav) {
  // remainder() is exact, so the phase keeps full precision at optical
  // frequencies where nu / FSR ~ 1e6.
  const double phase = std::numbers::pi * std::remainder(nu, cav.fsr()) / cav.fsr();
  const double s = std::sin(phase);
  const double coeff = 2.0 * cav.finesse() / std::numbers::pi;
  return 1.0 / (1.0 + coeff * coeff * s * s);
}

double airy_lorentzian_sum(double nu, const CavityParams& cav,
                           std::int64_t m_lo, std::int64_t m_hi) {
  if (m_lo > m_hi) {
    throw ConfigError("airy_lorentzian_sum: empty peak window (m_lo > m_hi)");
  }
  const double scale = 2.0 / cav.fwhm();
  double sum = 0.0;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    const double x = scale * (nu - static_cast<double>(m) * cav.fsr());
    sum += 1.0 / (1.0 + x * x);
  }
  return sum;
}

double finesse_from_mirrors(const MirrorSet& m) {
  const double g = require_sub_unit_gain(m);
  return std::numbers::pi * std::sqrt(g) / (1.0 - g);
}

double enhancement_factor(const MirrorSet& m) {
  const double g = require_sub_unit_gain(m);
  return m.r2 * m.r3 * (1.0 - m.r4) * m.loss / ((1.0 - g) * (1.0 - g));
}

CavityParams cavity_params(const MirrorSet& m) {
  return CavityParams(units::kSpeedOfLight / m.path_length,
                      finesse_from_mirrors(m));
}

std::complex<double> resonance_function(const MirrorSet& m, double nu) {
  const double g = require_sub_unit_gain(m);
  const double loop = 2.0 * std::numbers::pi * nu * m.path_length /
                      units::kSpeedOfLight;
  const std::complex<double> lead =
      std::sqrt(m.r2 * m.r3 * (1.0 - m.r4) * m.loss) *
      std::polar(1.0, -loop * m.exit_path / m.path_length);
  return lead / (1.0 - g * std::polar(1.0, -loop));
}

double airy_intensity(const MirrorSet& m, double nu) {
  return std::norm(resonance_function(m, nu));
}

double joint_detuning(const ResonanceIndices& idx, double nu_p0,
                      const CavityParams& sig, const CavityParams& idl) {
  const long double sum =
      static_cast<long double>(idx.signal) * sig.fsr() +
      static_cast<long double>(idx.idler) * idl.fsr() - nu_p0;
  return static_cast<double>(sum);
}

ResonanceIndices resonance_indices(double nu_s0, double nu_p0,
                                   const CavityParams& sig,
                                   const CavityParams& idl) {
  if (!(nu_s0 < nu_p0)) {
    throw ConfigError("resonance indices: signal seed must lie below the pump frequency");
  }
  ResonanceIndices idx;
  idx.signal = round_even(static_cast<long double>(nu_s0) / sig.fsr());
  const long double rest =
      static_cast<long double>(nu_p0) -
      static_cast<long double>(idx.signal) * sig.fsr();
  idx.idler = round_even(rest / idl.fsr());
  return idx;
}

ResonanceIndices locate_cluster_center(double nu_seed, double nu_p0,
                                       const CavityParams& sig,
                                       const CavityParams& idl) {
  const ResonanceIndices seed = resonance_indices(nu_seed, nu_p0, sig, idl);
  const double step = std::abs(sig.fsr() - idl.fsr());
  if (step == 0.0) return seed;

  const double half_period = 0.5 * idl.fsr() / step;
  if (half_period > 1.0e7) {
    throw ConfigError(
        "cluster search: signal and idler FSRs are too close to scan a "
        "cluster period; give k_signal/k_idler explicitly");
  }
  const auto reach = static_cast<std::int64_t>(std::ceil(half_period));

  ResonanceIndices best = seed;
  double best_abs = std::abs(joint_detuning(seed, nu_p0, sig, idl));
  for (std::int64_t ks = seed.signal - reach; ks <= seed.signal + reach; ++ks) {
    const double nu_s = static_cast<double>(ks) * sig.fsr();
    if (!(nu_s > 0.0 && nu_s < nu_p0)) continue;
    const ResonanceIndices cand = resonance_indices(nu_s, nu_p0, sig, idl);
    const double d = std::abs(joint_detuning(cand, nu_p0, sig, idl));
    if (d < best_abs || (d == best_abs && cand.signal < best.signal)) {
      best = cand;
      best_abs = d;
    }
  }
  return best;
}

}  // namespace cavmux
