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

#include "cavmux/link.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/tools/roots.hpp>

namespace cavmux {

namespace {

void require_range(bool ok, const char* field, double v, const char* rule) {
  if (ok) return;
  std::ostringstream os;
  os << "link: " << field << " must be " << rule << " (got " << v << ")";
  throw ConfigError(os.str());
}

}  // namespace

void LinkParams::validate() const {
  require_range(length_km >= 0.0 && std::isfinite(length_km), "distance_km",
                length_km, ">= 0");
  require_range(alpha_db_per_km >= 0.0 && std::isfinite(alpha_db_per_km),
                "alpha_db_per_km", alpha_db_per_km, ">= 0");
  require_range(eta_det > 0.0 && eta_det <= 1.0, "eta_det", eta_det,
                "in (0, 1]");
  require_range(mu0 >= 0.0 && std::isfinite(mu0), "mu0", mu0, ">= 0");
}

double LinkParams::eta_att() const {
  return attenuation(length_km, alpha_db_per_km);
}

double LinkReport::p_single_center() const {
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k[j] == 0) return p_single[j];
  }
  throw NumericError("link report has no centre mode");
}

double attenuation(double length_km, double alpha_db_per_km) {
  require_range(length_km >= 0.0, "distance_km", length_km, ">= 0");
  require_range(alpha_db_per_km >= 0.0, "alpha_db_per_km", alpha_db_per_km,
                ">= 0");
  return std::pow(10.0, -alpha_db_per_km * (0.5 * length_km) / 10.0);
}

double heralding_probability_single(double mu, double eta_att, double eta_det) {
  const double m = eta_att * eta_det * kMemoryAbsorptionEfficiency *
                   kDemuxEfficiency * mu;
  return 2.0 * m / ((m + 1.0) * (m + 1.0));
}

double fidelity_single(double mu, double eta_att, double eta_det) {
  const double m = eta_att * eta_det * kMemoryAbsorptionEfficiency *
                   kDemuxEfficiency * mu;
  return (m + 1.0) * (m + 1.0) / std::pow(mu + 1.0, 3);
}

double multiplexed_probability(const std::vector<double>& p) {
  double log_miss = 0.0;
  for (double pk : p) log_miss += std::log1p(-pk);
  return -std::expm1(log_miss);
}

LinkReport evaluate_link(const ModeTable& modes, const LinkParams& lp) {
  lp.validate();
  const double eta = lp.eta_att();
  const SqueezeAssignment sq = assign_squeezing(modes, lp.mu0);

  LinkReport r;
  r.params = lp;
  r.k = sq.k;
  r.mu = sq.mu;
  r.p_single.reserve(sq.mu.size());
  r.fidelity.reserve(sq.mu.size());
  for (std::size_t j = 0; j < sq.mu.size(); ++j) {
    r.p_single.push_back(heralding_probability_single(sq.mu[j], eta, lp.eta_det));
    r.fidelity.push_back(fidelity_single(sq.mu[j], eta, lp.eta_det));
    if (j == 0 || r.fidelity[j] < r.f_min) {
      r.f_min = r.fidelity[j];
      r.f_min_mode = r.k[j];
    }
  }
  r.p_multi = multiplexed_probability(r.p_single);
  r.mu_multi = sq.total();
  return r;
}

double solve_mu0_for_fidelity(double f_target, const LinkParams& lp) {
  LinkParams probe = lp;
  probe.mu0 = 0.0;
  probe.validate();
  const double eta = probe.eta_att();
  auto f = [&](double mu) { return fidelity_single(mu, eta, lp.eta_det); };
  const double f_hi = f(0.0);
  const double f_lo = f(kMu0SearchMax);
  if (!(f_target > f_lo && f_target < f_hi)) {
    std::ostringstream os;
    os.precision(6);
    os << "fidelity target " << f_target << " is outside the reachable range ("
       << f_lo << ", " << f_hi << ") for mu0 in [0, " << kMu0SearchMax
       << "] at " << lp.length_km << " km";
    throw NumericError(os.str());
  }
  // Stop once the bracket maps to a fidelity interval below 1e-7, well
  // inside the 1e-6 target.
  auto done = [&](double a, double b) { return std::abs(f(a) - f(b)) < 1e-7; };
  const auto [a, b] = boost::math::tools::bisect(
      [&](double mu) { return f(mu) - f_target; }, 0.0, kMu0SearchMax, done);
  return 0.5 * (a + b);
}

ImprovementRatios improvement_ratios(const LinkReport& report) {
  const double p0 = report.p_single_center();
  if (!(report.params.mu0 > 0.0) || !(p0 > 0.0)) {
    throw NumericError("improvement ratios are undefined for mu0 = 0");
  }
  return {report.mu_multi / report.params.mu0, report.p_multi / p0};
}

}  // namespace cavmux
