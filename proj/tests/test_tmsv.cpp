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

#include <cmath>
#include <random>

#include "doctest.h"

#include "cavmux/tmsv.hpp"
#include "cavmux/units.hpp"

using namespace cavmux;

TEST_CASE("mean photon number") {
  CHECK(mean_photon_number(0.010, 1.0) == 0.010);
  CHECK(mean_photon_number(0.0, 0.5) == 0.0);
  // sinh^2(0.5 asinh(1)) by hand: asinh(1) = ln(1 + sqrt 2).
  const double r = 0.5 * std::log(1.0 + std::sqrt(2.0));
  CHECK(mean_photon_number(1.0, 0.5) == doctest::Approx(std::pow(std::sinh(r), 2)).epsilon(1e-15));
  CHECK_THROWS_AS(mean_photon_number(-0.1, 1.0), ConfigError);
  CHECK_THROWS_AS(mean_photon_number(0.1, 0.0), ConfigError);
}

TEST_CASE("small-signal limit") {
  for (double mu0 : {1e-4, 1e-3, 0.01, 0.05, 0.1}) {
    for (double ratio : {0.3, 0.64, 0.9, 1.0}) {
      const double mu = mean_photon_number(mu0, ratio);
      const double lin = ratio * ratio * mu0;
      CHECK(std::abs(mu - lin) / lin <= 2.0 * mu0);
    }
  }
}

TEST_CASE("monotone loading and argmax preservation") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> ratios(101);
  for (double& r : ratios) r = u(rng);
  const auto best = std::max_element(ratios.begin(), ratios.end()) - ratios.begin();
  for (double mu0 : {1e-6, 0.01, 0.075, 0.5, 3.0}) {
    std::vector<double> mus;
    for (double r : ratios) mus.push_back(mean_photon_number(mu0, r));
    CHECK(std::max_element(mus.begin(), mus.end()) - mus.begin() == best);
  }
  for (double ratio : {0.2, 0.7, 1.0}) {
    double prev = mean_photon_number(0.0, ratio);
    for (int j = 1; j <= 200; ++j) {
      const double mu = mean_photon_number(0.005 * j, ratio);
      CHECK(mu > prev);
      prev = mu;
    }
  }
}

TEST_CASE("thermal distribution") {
  CHECK(thermal_distribution(0.0, 0) == 1.0);
  CHECK(thermal_distribution(0.0, 3) == 0.0);
  CHECK(thermal_distribution(1.0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(thermal_distribution(1.0, 0) == 0.5);
  CHECK_THROWS_AS(thermal_distribution(-1.0, 0), ConfigError);
  for (double mu : {0.0, 1e-4, 0.01, 0.038, 0.2, 1.0, 5.31, 20.0}) {
    const ThermalSums s = thermal_sums(mu);
    CHECK(std::abs(s.norm - 1.0) <= 1e-9);
    CHECK(std::abs(s.mean - mu) <= 1e-9 * std::max(1.0, mu));
    for (unsigned n = 0; n < 10; ++n) {
      const double p = thermal_distribution(mu, n);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
  // Truncation point: first N with q^N < 1e-12.
  const ThermalSums s = thermal_sums(1.0);
  CHECK(s.terms == 40);
}

TEST_CASE("squeeze assignment") {
  ModeTable t;
  for (int k = -2; k <= 2; ++k) {
    const double c = 10.0 - std::abs(k);
    t.rows.push_back({k, 0.0, c, c, c * c / 100.0, 0.0});
  }
  const SqueezeAssignment a = assign_squeezing(t, 0.05);
  CHECK(a.mu[2] == 0.05);
  CHECK(squeeze_ratio(t, 0) == 1.0);
  CHECK(squeeze_ratio(t, 2) == doctest::Approx(0.64));
  for (std::size_t j = 0; j < a.mu.size(); ++j) {
    CHECK(a.mu[j] <= 0.05);
    CHECK(a.mu[j] == doctest::Approx(std::pow(std::sinh(a.ratio[j] * std::asinh(std::sqrt(0.05))), 2)));
  }
  double total = 0.0;
  for (double m : a.mu) total += m;
  CHECK(a.total() == doctest::Approx(total));
}
