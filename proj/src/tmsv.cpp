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

#include "cavmux/tmsv.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace cavmux {

double squeeze_ratio(const ModeTable& modes, int k) {
  return modes.at(k).squeeze_ratio;
}

double mean_photon_number(double mu0, double ratio) {
  if (!(mu0 >= 0.0) || !std::isfinite(mu0)) {
    std::ostringstream os;
    os << "mu0 must be >= 0 (got " << mu0 << ")";
    throw ConfigError(os.str());
  }
  if (!(ratio > 0.0)) {
    throw ConfigError("squeezing ratio must be > 0");
  }
  if (ratio == 1.0) return mu0;
  const double s = std::sinh(ratio * std::asinh(std::sqrt(mu0)));
  return s * s;
}

double thermal_distribution(double mu, unsigned n) {
  if (!(mu >= 0.0)) throw ConfigError("thermal distribution: mu must be >= 0");
  if (n == 0) return 1.0 / (mu + 1.0);
  return std::pow(mu / (mu + 1.0), n) / (mu + 1.0);
}

ThermalSums thermal_sums(double mu) {
  if (!(mu >= 0.0)) throw ConfigError("thermal distribution: mu must be >= 0");
  const double q = mu / (mu + 1.0);
  ThermalSums out{0.0, 0.0, 0};
  double p = 1.0 / (mu + 1.0);
  double tail = q;  // q^(n+1): mass of all terms beyond n
  std::size_t n = 0;
  for (;;) {
    out.norm += p;
    out.mean += static_cast<double>(n) * p;
    ++n;
    if (tail < kThermalTailCut) break;
    p *= q;
    tail *= q;
  }
  out.terms = n;
  out.norm += tail;
  out.mean += tail * (static_cast<double>(n) + mu);
  return out;
}

double SqueezeAssignment::total() const {
  return std::accumulate(mu.begin(), mu.end(), 0.0);
}

SqueezeAssignment assign_squeezing(const ModeTable& modes, double mu0) {
  SqueezeAssignment a;
  a.mu0 = mu0;
  a.k.reserve(modes.rows.size());
  a.ratio.reserve(modes.rows.size());
  a.mu.reserve(modes.rows.size());
  for (const ModeRow& r : modes.rows) {
    a.k.push_back(r.k);
    a.ratio.push_back(r.squeeze_ratio);
    a.mu.push_back(mean_photon_number(mu0, r.squeeze_ratio));
  }
  return a;
}

}  // namespace cavmux
