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

#include "cavmux/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cavmux/error.hpp"

namespace cavmux::quad {

namespace {

std::vector<double> sorted_unique(std::vector<double> pts, double min_gap) {
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  out.reserve(pts.size());
  for (double p : pts) {
    if (out.empty() || p - out.back() > min_gap) out.push_back(p);
  }
  return out;
}

}  // namespace

Result integrate_peaked(const std::function<double(double)>& f,
                        std::span<const double> centers, double width,
                        const PeakedOptions& opts) {
  if (centers.empty() || !(width > 0.0)) {
    throw NumericError("integrate_peaked: need at least one centre and a positive width");
  }
  const auto [lo_it, hi_it] = std::minmax_element(centers.begin(), centers.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double mid = 0.5 * (lo + hi);
  const double spread = 0.5 * (hi - lo) + width;
  const double half = opts.half_range;
  if (!(half > 4.0 * spread)) {
    throw NumericError("integrate_peaked: window must be much wider than the peak cluster");
  }
  const double a = mid - half;
  const double b = mid + half;

  std::vector<double> pts{a, b};
  for (double c : centers) {
    pts.push_back(c);
    for (double h = width; c - h > a || c + h < b; h *= 4.0) {
      if (c - h > a) pts.push_back(c - h);
      if (c + h < b) pts.push_back(c + h);
    }
  }
  pts = sorted_unique(std::move(pts), 1e-9 * width);

  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  Result r;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0.0;
    r.value += GK::integrate(f, pts[i], pts[i + 1], opts.max_depth,
                             opts.panel_rel_tol, &err);
    r.error += err;
  }

  // Inverse-square tails fitted at the window edges.
  const double left = f(a) * half;
  const double right = f(b) * half;
  r.value += left + right;
  r.error += (std::abs(left) + std::abs(right)) * spread / half;
  return r;
}

Result integrate_mapped(const std::function<double(double)>& f,
                        std::span<const double> centers, double width) {
  if (centers.empty() || !(width > 0.0)) {
    throw NumericError("integrate_mapped: need at least one centre and a positive width");
  }
  const auto [lo_it, hi_it] = std::minmax_element(centers.begin(), centers.end());
  const double mid = 0.5 * (*lo_it + *hi_it);
  const double s = width;
  const double half_pi = 0.5 * std::numbers::pi;

  auto g = [&](double t) {
    const double c = std::cos(t);
    if (c == 0.0) return 0.0;
    return f(mid + s * std::tan(t)) * s / (c * c);
  };

  std::vector<double> cuts{-half_pi, half_pi};
  for (double c : centers) cuts.push_back(std::atan((c - mid) / s));
  cuts = sorted_unique(std::move(cuts), 1e-12);

  boost::math::quadrature::tanh_sinh<double> integrator;
  Result r;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    double l1 = 0.0;
    r.value += integrator.integrate(g, cuts[i], cuts[i + 1], 1e-12, &err, &l1);
    r.error += err;
  }
  return r;
}

}  // namespace cavmux::quad
