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

#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "cavmux/link.hpp"
#include "cavmux/units.hpp"

using namespace cavmux;

namespace {

SourceSpec reference_source(double fin_s, double fin_i, int m = 50) {
  return make_source_spec(units::nm_to_hz(435.5359), CavityParams(121.120e6, fin_s),
                          CavityParams(121.189e6, fin_i), {4084371, 1597761}, m);
}

LinkParams link(double km, double mu0) {
  LinkParams lp;
  lp.length_km = km;
  lp.alpha_db_per_km = 0.2;
  lp.eta_det = 0.9;
  lp.mu0 = mu0;
  return lp;
}

const ModeTable& hf_table() {
  static const ModeTable t = build_mode_table(reference_source(61.0, 83.0));
  return t;
}

}  // namespace

TEST_CASE("attenuation") {
  CHECK(attenuation(0.0, 0.2) == 1.0);
  CHECK(attenuation(100.0, 0.2) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(attenuation(25.0, 0.2) == doctest::Approx(0.5623413251903491).epsilon(1e-15));
  CHECK(attenuation(40.0, 0.0) == 1.0);
  CHECK_THROWS_AS(attenuation(-1.0, 0.2), ConfigError);
  CHECK_THROWS_AS(attenuation(1.0, -0.2), ConfigError);
}

TEST_CASE("single-mode heralding probability and fidelity") {
  const double e25 = attenuation(25.0, 0.2);
  const double e100 = attenuation(100.0, 0.2);
  CHECK(heralding_probability_single(0.0, e25, 0.9) == 0.0);
  CHECK(fidelity_single(0.0, e25, 0.9) == 1.0);
  CHECK(100.0 * heralding_probability_single(0.010, e25, 0.9) == doctest::Approx(1.00).epsilon(0.005));
  CHECK(100.0 * heralding_probability_single(0.038, e100, 0.9) == doctest::Approx(0.679).epsilon(0.001));
  CHECK(fidelity_single(0.010, e25, 0.9) == doctest::Approx(0.9804).epsilon(6e-5));
  CHECK(fidelity_single(0.038, e100, 0.9) == doctest::Approx(0.9003).epsilon(6e-5));
}

TEST_CASE("heralding probability bound") {
  CHECK(heralding_probability_single(1.0, 1.0, 1.0) == 0.5);
  for (int j = 0; j <= 400; ++j) {
    const double mu = 0.025 * j;
    CHECK(heralding_probability_single(mu, 1.0, 1.0) <= 0.5);
    CHECK(heralding_probability_single(mu, 0.3, 0.9) <= 0.5);
  }
}

TEST_CASE("fidelity monotone in mu and bounded") {
  for (double eta : {0.01, 0.1, 0.5623, 0.9, 1.0}) {
    double prev = fidelity_single(0.0, eta, 1.0);
    CHECK(prev == 1.0);
    for (int j = 1; j <= 1000; ++j) {
      const double f = fidelity_single(0.001 * j, eta, 1.0);
      CHECK(f < prev);
      CHECK(f < 1.0);
      prev = f;
    }
  }
}

TEST_CASE("distance monotonicity") {
  for (double mu : {0.001, 0.01, 0.075, 0.3}) {
    double p_prev = 1.0;
    double f_prev = 1.0;
    for (int km = 0; km <= 300; km += 5) {
      const double eta = attenuation(km, 0.2);
      const double p = heralding_probability_single(mu, eta, 0.9);
      const double f = fidelity_single(mu, eta, 0.9);
      CHECK(p <= p_prev);
      CHECK(f <= f_prev);
      p_prev = p;
      f_prev = f;
    }
  }
}

TEST_CASE("log-space aggregation matches the naive product") {
  const LinkReport r = evaluate_link(hf_table(), link(25.0, 0.075));
  double miss = 1.0;
  for (double p : r.p_single) miss *= 1.0 - p;
  CHECK(std::abs(r.p_multi - (1.0 - miss)) <= 1e-12);
  CHECK(r.p_multi >= *std::max_element(r.p_single.begin(), r.p_single.end()));
  CHECK(r.p_multi >= r.p_single_center());
}

TEST_CASE("single-mode link degenerates") {
  const ModeTable t = build_mode_table(reference_source(61.0, 83.0, 0));
  const LinkReport r = evaluate_link(t, link(50.0, 0.044));
  REQUIRE(r.k.size() == 1);
  CHECK(r.p_multi == doctest::Approx(r.p_single[0]).epsilon(1e-14));
  CHECK(r.mu_multi == 0.044);
  CHECK(r.f_min == r.fidelity[0]);
  const ImprovementRatios q = improvement_ratios(r);
  CHECK(q.mu_ratio == 1.0);
  CHECK(q.p_ratio == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(improvement_ratios(evaluate_link(t, link(50.0, 0.0))), NumericError);
}

TEST_CASE("multiplexed link, high finesse") {
  const LinkReport a = evaluate_link(hf_table(), link(25.0, 0.010));
  CHECK(std::abs(100.0 * a.p_multi - 51.2) <= 0.3);
  CHECK(std::abs(a.mu_multi - 0.711) <= 0.005);
  CHECK(std::abs(a.f_min - 0.9804) <= 2e-4);
  CHECK(a.f_min_mode == 0);
  const ImprovementRatios qa = improvement_ratios(a);
  CHECK(std::abs(qa.mu_ratio - 71.1) <= 0.5);
  CHECK(std::abs(qa.p_ratio - 51.1) <= 0.5);

  const LinkReport b = evaluate_link(hf_table(), link(25.0, 0.054));
  CHECK(std::abs(100.0 * b.p_multi - 97.8) <= 0.2);
  CHECK(std::abs(b.f_min - 0.9014) <= 2e-4);

  // Frozen from the independent-quadrature prototype of the same pipeline.
  CHECK(a.mu_multi == doctest::Approx(0.71151).epsilon(2e-5));
  CHECK(100.0 * a.p_multi == doctest::Approx(51.200).epsilon(2e-5));
}

TEST_CASE("low finesse link") {
  const ModeTable lf = build_mode_table(reference_source(30.0, 30.0));
  const LinkReport r = evaluate_link(lf, link(100.0, 0.038));
  CHECK(std::abs(r.mu_multi - 3.46) <= 0.02);
  CHECK(std::abs(100.0 * r.p_multi - 46.3) <= 0.5);
  const ImprovementRatios q = improvement_ratios(r);
  CHECK(std::abs(q.mu_ratio - 91.1) <= 0.5);
  CHECK(std::abs(q.p_ratio - 68.1) <= 0.5);
}

TEST_CASE("mu0 solver") {
  LinkParams lp = link(40.0, 0.0);
  const double f = fidelity_single(0.02, lp.eta_att(), lp.eta_det);
  CHECK(std::abs(solve_mu0_for_fidelity(f, lp) - 0.02) <= 1e-6);
  CHECK(std::abs(solve_mu0_for_fidelity(0.9014, link(25.0, 0.0)) - 0.054) <= 1e-3);
  CHECK(std::abs(solve_mu0_for_fidelity(0.9010, link(50.0, 0.0)) - 0.044) <= 1e-3);
  CHECK(std::abs(solve_mu0_for_fidelity(0.9003, link(100.0, 0.0)) - 0.038) <= 1e-3);
  for (double target : {0.999, 0.95, 0.9, 0.7}) {
    const double mu = solve_mu0_for_fidelity(target, lp);
    CHECK(std::abs(fidelity_single(mu, lp.eta_att(), lp.eta_det) - target) <= 1e-6);
  }
  CHECK_THROWS_AS(solve_mu0_for_fidelity(1.0, lp), NumericError);
  CHECK_THROWS_AS(solve_mu0_for_fidelity(0.05, lp), NumericError);
}

TEST_CASE("link parameter validation") {
  LinkParams lp = link(10.0, 0.01);
  lp.eta_det = 0.0;
  CHECK_THROWS_AS(lp.validate(), ConfigError);
  lp = link(10.0, -0.01);
  CHECK_THROWS_AS(lp.validate(), ConfigError);
  lp = link(-10.0, 0.01);
  CHECK_THROWS_AS(lp.validate(), ConfigError);
}
