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

#include <complex>
#include <cstdint>
#include <optional>

#include "cavmux/error.hpp"

namespace cavmux {

/// Below this finesse the Airy profile is no longer treated as a sum of
/// isolated Lorentzians.
inline constexpr double kLorentzianFinesseBound = 10.0;

/**
 * Mirror reflectivities and round-trip geometry of a four-mirror ring
 * (bow-tie) resonator. Output coupling is through mirror 4.
 *
 * Reflection and transmission phases are neglected against the round-trip
 * phase, so every coefficient is the square root of its intensity value.
 */
struct MirrorSet {
  double r1 = 1.0;
  double r2 = 1.0;
  double r3 = 1.0;
  double r4 = 0.0;
  double loss = 1.0;          ///< round-trip power factor G, 1 = lossless
  double path_length = 1.0;   ///< round-trip optical path L_opt (m)
  double exit_path = 0.0;     ///< crystal exit to output mirror, in [0, L_opt] (m)

  /// Round-trip field amplitude factor g = sqrt(R1 R2 R3 R4 G).
  double round_trip_gain() const;

  /// Throws ConfigError unless every invariant holds, including g < 1.
  void validate() const;
};

/// One resonator described by its free spectral range and finesse.
class CavityParams {
 public:
  /// Throws ConfigError for non-positive fsr or finesse.
  CavityParams(double fsr_hz, double finesse);

  double fsr() const noexcept { return fsr_; }
  double finesse() const noexcept { return finesse_; }
  /// Full width at half maximum, fsr / finesse.
  double fwhm() const noexcept { return fwhm_; }

  /// False when finesse < 10; exact Airy evaluation remains valid.
  bool lorentzian_valid() const noexcept {
    return finesse_ >= kLorentzianFinesseBound;
  }

 private:
  double fsr_;
  double finesse_;
  double fwhm_;
};

/// Warning for a cavity whose finesse is too low for the Lorentzian picture.
std::optional<Warning> lorentzian_validity(const CavityParams& cav,
                                           const char* role);

/// Peak-normalized Airy profile 1 / (1 + (2F/pi)^2 sin^2(pi nu / FSR)).
double airy_normalized(double nu, const CavityParams& cav);

/// Airy profile approximated by Lorentzians centred on m*FSR for m in
/// [m_lo, m_hi]. Throws ConfigError when m_lo > m_hi.
double airy_lorentzian_sum(double nu, const CavityParams& cav,
                           std::int64_t m_lo, std::int64_t m_hi);

/// Finesse pi*sqrt(g)/(1-g). Throws ConfigError when g >= 1.
double finesse_from_mirrors(const MirrorSet& m);

/// Peak buildup R2 R3 (1-R4) G / (1-g)^2. Throws ConfigError when g >= 1.
double enhancement_factor(const MirrorSet& m);

/// FSR = c / L_opt and the mirror finesse packaged as CavityParams.
CavityParams cavity_params(const MirrorSet& m);

/// Complex output/internal field ratio at frequency nu (closed form of the
/// partial-wave geometric series).
std::complex<double> resonance_function(const MirrorSet& m, double nu);

/// |resonance_function|^2, i.e. T_enh times the normalized Airy profile.
double airy_intensity(const MirrorSet& m, double nu);

struct ResonanceIndices {
  std::int64_t signal = 0;
  std::int64_t idler = 0;
};

/// Residual K_S*FSR_S + K_I*FSR_I - nu_p0 of an index pair, evaluated in
/// extended precision.
double joint_detuning(const ResonanceIndices& idx, double nu_p0,
                      const CavityParams& sig, const CavityParams& idl);

/**
 * Signal index by rounding nu_s0 / FSR_S, then the idler index that best
 * closes energy conservation against the pump. Halfway cases round to even.
 */
ResonanceIndices resonance_indices(double nu_s0, double nu_p0,
                                   const CavityParams& sig,
                                   const CavityParams& idl);

/**
 * Centre of the cluster closest to a rough signal seed frequency.
 *
 * Scans signal indices within half a cluster period of round(seed/FSR_S)
 * and keeps the pair from resonance_indices with the smallest
 * |joint_detuning|. Ties go to the lower signal index. With equal FSRs the
 * cluster period is unbounded and this reduces to resonance_indices.
 */
ResonanceIndices locate_cluster_center(double nu_seed, double nu_p0,
                                       const CavityParams& sig,
                                       const CavityParams& idl);

}  // namespace cavmux
