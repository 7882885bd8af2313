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

#include <array>
#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cavmux/quadrature.hpp"

using namespace cavmux;

TEST_CASE("peaked quadrature on a Lorentzian") {
  for (double g : {1e6, 2e6, 4e6}) {
    auto f = [g](double x) { return 1.0 / (1.0 + 4.0 * x * x / (g * g)); };
    const std::array<double, 1> c{0.0};
    quad::PeakedOptions o;
    o.half_range = 1e6 * g;
    o.panel_rel_tol = 1e-8;
    const quad::Result r = quad::integrate_peaked(f, c, 0.5 * g, o);
    const double exact = 0.5 * std::numbers::pi * g;
    CHECK(std::abs(r.value / exact - 1.0) <= 1e-9);
    CHECK(r.error / r.value <= 1e-6);
  }
}

TEST_CASE("peaked quadrature on two separated peaks") {
  const double g = 2e6;
  auto lor = [g](double x) { return 1.0 / (1.0 + 4.0 * x * x / (g * g)); };
  auto f = [&](double x) { return lor(x) + 0.5 * lor(x - 3.3e7); };
  const std::array<double, 2> c{0.0, 3.3e7};
  quad::PeakedOptions o;
  o.half_range = 1e6 * g;
  const quad::Result r = quad::integrate_peaked(f, c, 0.5 * g, o);
  CHECK(r.value == doctest::Approx(1.5 * 0.5 * std::numbers::pi * g).epsilon(1e-9));
  const quad::Result m = quad::integrate_mapped(f, c, 0.5 * g);
  CHECK(m.value == doctest::Approx(1.5 * 0.5 * std::numbers::pi * g).epsilon(1e-9));
}

TEST_CASE("quadrature argument checks") {
  auto f = [](double) { return 1.0; };
  const std::array<double, 1> c{0.0};
  quad::PeakedOptions o;
  o.half_range = 1.0;
  CHECK_THROWS(quad::integrate_peaked(f, c, 1.0, o));
  CHECK_THROWS(quad::integrate_peaked(f, std::span<const double>{}, 1.0, o));
  CHECK_THROWS(quad::integrate_mapped(f, c, 0.0));
}
