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

#include <functional>
#include <span>

namespace cavmux::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  ///< absolute error estimate, including the tail model
};

struct PeakedOptions {
  double half_range = 0.0;      ///< integrate [mid - W, mid + W] explicitly
  double panel_rel_tol = 1e-10; ///< per-panel Gauss-Kronrod tolerance
  unsigned max_depth = 20;      ///< bisection depth per panel
};

/**
 * Integral over the real line of a function made of a few narrow peaks with
 * inverse-square tails.
 *
 * Panels are laid out geometrically around each peak centre so adaptive
 * Gauss-Kronrod sees a smooth integrand on every piece. Outside the explicit
 * window the integrand is modelled as A/(x - mid)^2, with A fitted at each
 * window edge, and that analytic tail is added to the result. The residual
 * of the tail model is folded into the error estimate.
 *
 * @p width is the narrowest peak half-width; @p centers must be non-empty.
 */
Result integrate_peaked(const std::function<double(double)>& f,
                        std::span<const double> centers, double width,
                        const PeakedOptions& opts);

/**
 * Same integral by an unrelated route: x = mid + s*tan(theta) maps the real
 * line onto (-pi/2, pi/2) and tanh-sinh quadrature runs on the mapped
 * integrand, split at the mapped centres. Used to cross-check
 * integrate_peaked.
 */
Result integrate_mapped(const std::function<double(double)>& f,
                        std::span<const double> centers, double width);

}  // namespace cavmux::quad
