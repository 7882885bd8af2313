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

#include <vector>

#include "cavmux/spectral.hpp"
#include "cavmux/tmsv.hpp"

namespace cavmux {

/// Fiber attenuation used when a config does not set one (dB/km).
inline constexpr double kDefaultAlphaDbPerKm = 0.2;
/// Memory absorption and demultiplexing efficiencies; both are ideal.
inline constexpr double kMemoryAbsorptionEfficiency = 1.0;
inline constexpr double kDemuxEfficiency = 1.0;

/// Symmetric elementary link; each node sits L/2 from the midpoint station.
struct LinkParams {
  double length_km = 0.0;
  double alpha_db_per_km = kDefaultAlphaDbPerKm;
  double eta_det = 1.0;
  double mu0 = 0.0;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  double eta_att() const;
};

struct LinkReport {
  LinkParams params;
  std::vector<int> k;
  std::vector<double> mu;
  std::vector<double> p_single;
  std::vector<double> fidelity;
  double p_multi = 0.0;
  double mu_multi = 0.0;
  double f_min = 1.0;
  int f_min_mode = 0;

  double p_single_center() const;
};

/// 10^(-alpha (L/2) / 10).
double attenuation(double length_km, double alpha_db_per_km);

/// 2 mu' / (mu' + 1)^2 with mu' = eta_att eta_det mu.
double heralding_probability_single(double mu, double eta_att, double eta_det);

/// (mu' + 1)^2 / (mu + 1)^3.
double fidelity_single(double mu, double eta_att, double eta_det);

/// 1 - prod(1 - p_k), accumulated through log1p.
double multiplexed_probability(const std::vector<double>& p);

/// Per-mode and aggregate link figures for the mode table at lp.mu0.
LinkReport evaluate_link(const ModeTable& modes, const LinkParams& lp);

/// Search bracket for solve_mu0_for_fidelity.
inline constexpr double kMu0SearchMax = 1.0;

/**
 * mu0 whose single-mode fidelity equals f_target, by bisection on
 * [0, kMu0SearchMax] to 1e-6 in fidelity. lp.mu0 is ignored. Throws
 * NumericError naming the bracket when the target is out of reach.
 */
double solve_mu0_for_fidelity(double f_target, const LinkParams& lp);

struct ImprovementRatios {
  double mu_ratio;  ///< mu_multi / mu0
  double p_ratio;   ///< p_multi / p_single at k = 0
};

/// Throws NumericError when mu0 = 0 makes the ratios undefined.
ImprovementRatios improvement_ratios(const LinkReport& report);

}  // namespace cavmux
