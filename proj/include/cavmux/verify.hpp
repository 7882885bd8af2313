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
#include <string>
#include <vector>

#include "cavmux/error.hpp"
#include "cavmux/spectral.hpp"

namespace cavmux {

enum class CheckStatus { pass, fail, skip };

const char* status_name(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status;
  double measured;   ///< worst deviation found
  double tolerance;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<Warning> warnings;

  bool passed() const;
};

// Tolerances of the verification suite.
inline constexpr double kLorentzSumTol = 1e-3;
inline constexpr double kLorentzSumMinFinesse = 30.0;
inline constexpr double kQuadratureOracleTol = 1e-6;
inline constexpr double kJsaJsiTol = 1e-3;
inline constexpr double kJsaJsiSingleModeTol = 1e-12;
inline constexpr double kModeNormTol = 2e-6;
inline constexpr double kOrthogonalityTol = 5e-2;
inline constexpr double kThermalTol = 1e-9;

/// Max over one period of |Lorentzian sum over m in [-half, half] - Airy|,
/// scanned on @p samples points of [-FSR/2, FSR/2].
double lorentzian_sum_deviation(const CavityParams& cav, int half_window = 50,
                                std::size_t samples = 20001);

/// |C^2 / (pi G / 2) - 1| for a degenerate single-mode source (equal
/// linewidths G, zero detuning).
double quadrature_oracle_error(double fwhm_hz);

/// max | |jsa_approx|^2 - jsi_approx | over an n x n grid spanning modes
/// -half_modes..half_modes (clamped to the source's M).
double jsa_jsi_deviation(const SourceSpec& spec, int half_modes = 4,
                         std::size_t n = 200);

/// Worst |norm - 1| over signal and idler of mode k, where norm is the
/// integral of |amplitude / C|^2 by the independent mapped quadrature.
double mode_normalization_residual(const SourceSpec& spec, int k,
                                   const NormalizationConstants& c);

/// |integral of conj(psi_k / C_k) psi_j / C_j| over the signal frequency.
double mode_overlap(const SourceSpec& spec, int k, int j);

/// Worst of |sum P(n) - 1| and |sum n P(n) - mu| over @p mus.
double thermal_sum_residual(const std::vector<double>& mus);

/// Full suite on one source.
VerifyReport run_verification(const SourceSpec& spec);

}  // namespace cavmux
