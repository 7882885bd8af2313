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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cavmux/cavity.hpp"

namespace cavmux {

/**
 * Doubly resonant CW-pumped source restricted to its main cluster.
 *
 * Mode k pairs signal resonance K_S + k with idler resonance K_I - k, for
 * k in [-M, M].
 */
struct SourceSpec {
  double pump_hz;
  CavityParams signal;
  CavityParams idler;
  std::int64_t k_signal;
  std::int64_t k_idler;
  int modes_per_side;

  int mode_count() const { return 2 * modes_per_side + 1; }
};

/// Builds a SourceSpec and checks |K_S FSR_S + K_I FSR_I - nu_p0| <= FSR_I/2
/// and M >= 0. Throws ConfigError otherwise.
SourceSpec make_source_spec(double pump_hz, const CavityParams& signal,
                            const CavityParams& idler, ResonanceIndices idx,
                            int modes_per_side);

/// (K_S+k) FSR_S + (K_I-k) FSR_I - nu_p0, in Hz.
double cluster_detuning(const SourceSpec& spec, int k);

/// Centre of the k-th signal resonance, (K_S+k) FSR_S.
double signal_center(const SourceSpec& spec, int k);
/// Centre of the k-th idler resonance, (K_I-k) FSR_I.
double idler_center(const SourceSpec& spec, int k);

// Unnormalized mode functions. Both are principal square roots of a product
// of two complex Lorentzians and have modulus <= 1.
std::complex<double> mode_amplitude_signal(const SourceSpec& spec, int k,
                                           double nu_s);
std::complex<double> mode_amplitude_idler(const SourceSpec& spec, int k,
                                          double nu_i);

// Same functions parameterised by the offset from the mode's own resonance
// centre. Keeps full precision when integrating.
std::complex<double> signal_amplitude_at_offset(const SourceSpec& spec, int k,
                                                double offset);
std::complex<double> idler_amplitude_at_offset(const SourceSpec& spec, int k,
                                               double offset);
/// |signal amplitude|^2 at an offset from the signal centre.
double signal_density_at_offset(const SourceSpec& spec, int k, double offset);
/// |idler amplitude|^2 at an offset from the idler centre.
double idler_density_at_offset(const SourceSpec& spec, int k, double offset);

/// Relative accuracy demanded from every normalization integral.
inline constexpr double kNormalizationRelTol = 1e-6;
/// Explicit quadrature window, in units of the wider linewidth.
inline constexpr double kQuadratureWindowLinewidths = 1e6;

struct NormalizationConstants {
  double signal;          ///< C_S (sqrt(Hz))
  double idler;           ///< C_I (sqrt(Hz))
  double relative_error;  ///< worst estimated relative error of C^2
};

/**
 * sqrt of the integral over frequency (Hz) of each unnormalized mode
 * density. Throws QuadratureError when the estimate exceeds
 * kNormalizationRelTol.
 */
NormalizationConstants normalization_constants(const SourceSpec& spec, int k);

/// Product of the two real Lorentzians centred at m_s FSR_S and m_i FSR_I.
double xi(const SourceSpec& spec, std::int64_t m_s, std::int64_t m_i,
          double nu_s, double nu_i);

/// Approximate joint spectral amplitude (sum over modes of square-rooted
/// complex Lorentzian products).
std::complex<double> jsa_approx(const SourceSpec& spec, double nu_s,
                                double nu_i);

/// Approximate joint spectral intensity; non-negative.
double jsi_approx(const SourceSpec& spec, double nu_s, double nu_i);
/// The k-th summand of jsi_approx.
double jsi_approx_term(const SourceSpec& spec, int k, double nu_s, double nu_i);

struct ModeRow {
  int k;
  double detuning_hz;
  double c_signal;
  double c_idler;
  double squeeze_ratio;   ///< C_S,k C_I,k / (C_S,0 C_I,0)
  double relative_error;  ///< quadrature estimate behind c_signal/c_idler
};

/// Per-mode constants ordered k = -M..M.
struct ModeTable {
  std::vector<ModeRow> rows;

  const ModeRow& at(int k) const;
  int modes_per_side() const { return static_cast<int>(rows.size() / 2); }
  /// Row with the largest C_S C_I. Lower k wins a tie.
  int envelope_argmax() const;
};

/// Integrates every mode. Work over k is spread across hardware threads and
/// collected in order, so the result is deterministic.
ModeTable build_mode_table(const SourceSpec& spec);

/// The k with the smallest |detuning|; ties go to the lower k.
int min_detuning_mode(const SourceSpec& spec);

struct SpectrumSample {
  double nu_s;          ///< signal frequency (Hz)
  double offset;        ///< nu_s - K_S FSR_S (Hz)
  double airy_product;  ///< exact A_S(nu_s) * A_I(nu_p0 - nu_s)
  double xi_center;     ///< Lorentzian pair of the k = 0 mode on the same line
  double xi_cluster;    ///< sum over modes of the Lorentzian pairs
  double jsi_line;      ///< jsi_approx(nu_s, nu_p0 - nu_s)
};

/**
 * Uniform sweep of the signal frequency on the energy-conservation line
 * across modes k_lo..k_hi, from half an FSR below the first centre to half
 * an FSR above the last. Throws ConfigError if n_points < 2 or k_lo > k_hi.
 */
std::vector<SpectrumSample> signal_spectrum_samples(const SourceSpec& spec,
                                                    int k_lo, int k_hi,
                                                    std::size_t n_points);

struct JsiSample {
  double nu_s;
  double nu_i;
  /// sqrt(A_S(nu_s) A_I(nu_p0-nu_s) A_S(nu_p0-nu_i) A_I(nu_i)) with the
  /// exact Airy profiles, times the pump envelope
  double exact;
  double approx;  ///< jsi_approx times the pump envelope
};

/**
 * n x n grid of the joint intensity over modes k_lo..k_hi. A Gaussian pump
 * envelope exp(-(nu_s+nu_i-nu_p0)^2 / (2 sigma^2)) is applied when
 * sigma_pump_hz is given; otherwise no envelope is applied.
 */
std::vector<JsiSample> jsi_grid_samples(const SourceSpec& spec, int k_lo,
                                        int k_hi, std::size_t n,
                                        std::optional<double> sigma_pump_hz);

}  // namespace cavmux
