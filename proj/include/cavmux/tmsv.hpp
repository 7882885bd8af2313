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
#include <vector>

#include "cavmux/spectral.hpp"

namespace cavmux {

/// Tail mass below which a thermal sum is cut and closed analytically.
inline constexpr double kThermalTailCut = 1e-12;

/// C_S,k C_I,k / (C_S,0 C_I,0) for mode k of the table.
double squeeze_ratio(const ModeTable& modes, int k);

/// sinh^2(ratio * asinh(sqrt(mu0))). Throws ConfigError for mu0 < 0 or
/// ratio <= 0.
double mean_photon_number(double mu0, double ratio);

/// P(n) = mu^n / (mu+1)^(n+1).
double thermal_distribution(double mu, unsigned n);

struct ThermalSums {
  double norm;           ///< sum of P(n)
  double mean;           ///< sum of n P(n)
  std::size_t terms;     ///< explicit terms before the analytic tail
};

/// Explicit sums until the tail q^(N) drops below kThermalTailCut, then the
/// closed-form tails q^N and q^N (N + mu) are added.
ThermalSums thermal_sums(double mu);

struct SqueezeAssignment {
  double mu0;
  std::vector<int> k;
  std::vector<double> ratio;
  std::vector<double> mu;

  double total() const;
};

/// Mean photon number of every mode in the table for reference value mu0.
SqueezeAssignment assign_squeezing(const ModeTable& modes, double mu0);

}  // namespace cavmux
