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
#include <numbers>
#include <random>

#include "doctest.h"

#include "cavmux/spectral.hpp"
#include "cavmux/units.hpp"
#include "cavmux/verify.hpp"

using namespace cavmux;

namespace {

SourceSpec reference_source(double fin_s, double fin_i, int m = 50) {
  return make_source_spec(units::nm_to_hz(435.5359), CavityParams(121.120e6, fin_s),
                          CavityParams(121.189e6, fin_i), {4084371, 1597761}, m);
}

// Source with every joint resonance exactly on the pump.
SourceSpec resonant_source(double fwhm_s, double fwhm_i, int m) {
  const double fsr = 1e9;
  return make_source_spec(1800.0 * fsr, CavityParams(fsr, fsr / fwhm_s),
                          CavityParams(fsr, fsr / fwhm_i), {1000, 800}, m);
}

// Reference-frame re-implementation of one Lorentzian pair.
double xi_reference(double xs, double xi, double gs, double gi) {
  return 1.0 / ((1.0 + 4.0 * xs * xs / (gs * gs)) * (1.0 + 4.0 * xi * xi / (gi * gi)));
}

}  // namespace

TEST_CASE("cluster detuning") {
  const SourceSpec s = reference_source(61.0, 83.0);
  for (int k = -50; k < 50; ++k) {
    CHECK(cluster_detuning(s, k + 1) - cluster_detuning(s, k) ==
          doctest::Approx(-69000.0).epsilon(1e-9));
  }
  CHECK(std::abs(cluster_detuning(s, 0)) <= 0.5 * s.idler.fsr());
  const SourceSpec r = resonant_source(2e6, 2e6, 3);
  for (int k = -3; k <= 3; ++k) CHECK(cluster_detuning(r, k) == 0.0);
}

TEST_CASE("source spec validation") {
  const CavityParams sig(121.120e6, 61.0);
  const CavityParams idl(121.189e6, 83.0);
  const double pump = units::nm_to_hz(435.5359);
  CHECK_THROWS_AS(make_source_spec(pump, sig, idl, {4084371, 1597761}, -1), ConfigError);
  CHECK_THROWS_AS(make_source_spec(pump, sig, idl, {4084371, 1597762}, 5), ConfigError);
  CHECK_NOTHROW(make_source_spec(pump, sig, idl, {4084371, 1597761}, 0));
}

TEST_CASE("mode amplitudes at resonance and half width") {
  const SourceSpec s = resonant_source(2e6, 2e6, 2);
  for (int k = -2; k <= 2; ++k) {
    CHECK(std::abs(mode_amplitude_signal(s, k, signal_center(s, k))) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(mode_amplitude_idler(s, k, idler_center(s, k))) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::norm(mode_amplitude_signal(s, k, signal_center(s, k) + 1e6)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::norm(mode_amplitude_idler(s, k, idler_center(s, k) - 1e6)) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mode_amplitude_signal(s, 3, 0.0), ConfigError);
}

TEST_CASE("mode amplitude modulus bounded by one") {
  const SourceSpec s = reference_source(61.0, 83.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5e8, 5e8);
  for (int j = 0; j < 2000; ++j) {
    const int k = static_cast<int>(rng() % 101) - 50;
    CHECK(std::abs(mode_amplitude_signal(s, k, signal_center(s, k) + u(rng))) <= 1.0);
    CHECK(std::abs(mode_amplitude_idler(s, k, idler_center(s, k) + u(rng))) <= 1.0);
  }
}

TEST_CASE("mode densities factor the joint intensity summand") {
  const SourceSpec s = reference_source(61.0, 83.0, 10);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4e6, 4e6);
  for (int j = 0; j < 500; ++j) {
    const int k = static_cast<int>(rng() % 21) - 10;
    const double nu_s = signal_center(s, k) + u(rng);
    const double nu_i = idler_center(s, k) + u(rng);
    const double lhs = std::norm(mode_amplitude_signal(s, k, nu_s)) *
                       std::norm(mode_amplitude_idler(s, k, nu_i));
    CHECK(lhs == doctest::Approx(jsi_approx_term(s, k, nu_s, nu_i)).epsilon(1e-12));
  }
}

TEST_CASE("degenerate normalization constant") {
  for (double g : {1e6, 2e6, 4e6}) {
    const SourceSpec s = resonant_source(g, g, 0);
    const NormalizationConstants c = normalization_constants(s, 0);
    CHECK(c.signal * c.signal == doctest::Approx(0.5 * std::numbers::pi * g).epsilon(1e-6));
    CHECK(c.idler * c.idler == doctest::Approx(0.5 * std::numbers::pi * g).epsilon(1e-6));
    CHECK(c.relative_error <= kNormalizationRelTol);
  }
  const NormalizationConstants c2 = normalization_constants(resonant_source(2e6, 2e6, 0), 0);
  CHECK(c2.signal == doctest::Approx(1772.4538509055160).epsilon(1e-7));
}

TEST_CASE("normalization constants match an independent quadrature") {
  // Oracle: scipy quad after x = (G_S/2) tan(t), split at the peaks.
  const ModeTable hf = build_mode_table(reference_source(61.0, 83.0));
  CHECK(hf.at(0).c_signal == doctest::Approx(1630.5865534429904).epsilon(1e-9));
  CHECK(hf.at(50).c_signal == doctest::Approx(1304.5981927408193).epsilon(1e-9));
  CHECK(hf.at(-50).c_idler == doctest::Approx(1307.463203470338).epsilon(1e-9));
  double sum_sq = 0.0;
  for (const ModeRow& r : hf.rows) sum_sq += r.squeeze_ratio * r.squeeze_ratio;
  CHECK(sum_sq == doctest::Approx(71.2081008770951).epsilon(1e-8));
  CHECK(std::abs(sum_sq - 71.1) <= 0.5);

  const ModeTable lf = build_mode_table(reference_source(30.0, 30.0));
  CHECK(lf.at(0).c_signal == doctest::Approx(2518.6524483103553).epsilon(1e-9));
  double lf_sq = 0.0;
  for (const ModeRow& r : lf.rows) lf_sq += r.squeeze_ratio * r.squeeze_ratio;
  CHECK(lf_sq == doctest::Approx(91.23485713790255).epsilon(1e-8));
}

TEST_CASE("mode table envelope") {
  const SourceSpec s = reference_source(61.0, 83.0);
  const ModeTable t = build_mode_table(s);
  REQUIRE(t.rows.size() == 101);
  CHECK(t.at(0).squeeze_ratio == 1.0);
  for (int k = -50; k <= 50; ++k) {
    CHECK(t.at(k).k == k);
    CHECK(t.at(k).c_signal > 0.0);
    CHECK(t.at(k).c_idler > 0.0);
    CHECK(t.at(0).c_signal >= t.at(k).c_signal);
    CHECK(t.at(k).squeeze_ratio <= 1.0);
  }
  // Non-increasing in |detuning|.
  std::vector<ModeRow> rows = t.rows;
  std::sort(rows.begin(), rows.end(), [](const ModeRow& a, const ModeRow& b) {
    return std::abs(a.detuning_hz) < std::abs(b.detuning_hz);
  });
  for (std::size_t j = 1; j < rows.size(); ++j) {
    CHECK(rows[j].c_signal * rows[j].c_idler <=
          rows[j - 1].c_signal * rows[j - 1].c_idler * (1.0 + 1e-12));
  }
  CHECK(t.envelope_argmax() == min_detuning_mode(s));
  CHECK(t.envelope_argmax() == 0);

  // Parallel build is deterministic.
  const ModeTable again = build_mode_table(s);
  for (std::size_t j = 0; j < t.rows.size(); ++j) {
    CHECK(again.rows[j].c_signal == t.rows[j].c_signal);
    CHECK(again.rows[j].c_idler == t.rows[j].c_idler);
  }
}

TEST_CASE("low finesse envelope decays more slowly") {
  const ModeTable hf = build_mode_table(reference_source(61.0, 83.0));
  const ModeTable lf = build_mode_table(reference_source(30.0, 30.0));
  CHECK(lf.at(50).c_signal / lf.at(0).c_signal > hf.at(50).c_signal / hf.at(0).c_signal);
  CHECK(lf.at(-50).c_signal / lf.at(0).c_signal > hf.at(-50).c_signal / hf.at(0).c_signal);
}

TEST_CASE("envelope tie goes to the lower k") {
  // Detuning of mode 0 is half the per-mode step, so modes -1 and 0 tie.
  const double fsr_s = 100e6;
  const double fsr_i = 100.1e6;
  const ResonanceIndices idx{2000, 1500};
  const long double base = 2000.0L * fsr_s + 1500.0L * fsr_i;
  const double pump = static_cast<double>(base - 0.5L * (fsr_s - fsr_i));
  const SourceSpec s = make_source_spec(pump, CavityParams(fsr_s, 50.0),
                                        CavityParams(fsr_i, 50.0), idx, 3);
  CHECK(std::abs(cluster_detuning(s, 0)) == std::abs(cluster_detuning(s, -1)));
  CHECK(min_detuning_mode(s) == -1);
}

TEST_CASE("xi lorentzian pair") {
  const SourceSpec s = reference_source(61.0, 83.0);
  const std::int64_t ms = 4084380;
  const std::int64_t mi = 1597750;
  const double cs = ms * s.signal.fsr();
  const double ci = mi * s.idler.fsr();
  CHECK(xi(s, ms, mi, cs, ci) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(xi(s, ms, mi, cs + 0.5 * s.signal.fwhm(), ci) == doctest::Approx(0.5).epsilon(1e-6));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2e7, 2e7);
  for (int j = 0; j < 200; ++j) {
    const double xs = std::round(u(rng));
    const double xi_ = std::round(u(rng));
    CHECK(xi(s, ms, mi, cs + xs, ci + xi_) ==
          doctest::Approx(xi_reference(xs, xi_, s.signal.fwhm(), s.idler.fwhm())).epsilon(1e-9));
  }
}

TEST_CASE("joint spectrum single mode") {
  const SourceSpec s = resonant_source(2e6, 3e6, 0);
  const double a = signal_center(s, 0);
  const double b = idler_center(s, 0);
  CHECK(std::abs(jsa_approx(s, a, b)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jsi_approx(s, a, b) == doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2e7, 2e7);
  for (int j = 0; j < 500; ++j) {
    const double ns = a + u(rng);
    const double ni = b + u(rng);
    CHECK(std::abs(std::norm(jsa_approx(s, ns, ni)) - jsi_approx(s, ns, ni)) <= 1e-14);
  }
  CHECK(jsa_jsi_deviation(s) <= 1e-12);
}

TEST_CASE("joint spectrum cross-mode suppression and bounds") {
  const SourceSpec s = reference_source(61.0, 83.0);
  for (int j = -4; j <= 4; ++j) {
    for (int k = -4; k <= 4; ++k) {
      const double v = jsi_approx(s, signal_center(s, j), idler_center(s, k));
      CHECK(v >= 0.0);
      if (j != k) CHECK(v <= 1e-2);
      if (j == k) CHECK(v > 0.5);
    }
  }
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.5, 5.5);
  for (int j = 0; j < 2000; ++j) {
    const double ns = signal_center(s, 0) + u(rng) * s.signal.fsr();
    const double ni = idler_center(s, 0) + u(rng) * s.idler.fsr();
    CHECK(jsi_approx(s, ns, ni) >= 0.0);
    CHECK(std::abs(jsa_approx(s, ns, ni)) <= 1.0 + 1e-2);
  }
}

TEST_CASE("joint intensity summand symmetry") {
  // Equal linewidths and zero detuning: the k-th summand is symmetric under
  // reflecting both offsets through the mode centres and swapping them.
  const SourceSpec s = resonant_source(2e6, 2e6, 2);
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-6e6, 6e6);
  for (int j = 0; j < 300; ++j) {
    const int k = static_cast<int>(rng() % 5) - 2;
    const double x = std::round(u(rng));
    const double y = std::round(u(rng));
    const double a = signal_center(s, k);
    const double b = idler_center(s, k);
    CHECK(jsi_approx_term(s, k, a + x, b + y) ==
          doctest::Approx(jsi_approx_term(s, k, a + y, b + x)).epsilon(1e-12));
    CHECK(jsi_approx_term(s, k, a + x, b + y) ==
          doctest::Approx(jsi_approx_term(s, k, a - x, b - y)).epsilon(1e-12));
  }
}

TEST_CASE("joint amplitude vs intensity deviation shrinks with finesse") {
  const double hf = jsa_jsi_deviation(reference_source(61.0, 83.0));
  const double lf = jsa_jsi_deviation(reference_source(30.0, 30.0));
  CHECK(hf <= 1e-3);
  CHECK(hf <= lf);
}

TEST_CASE("normalized mode functions integrate to one") {
  for (const SourceSpec& s : {reference_source(61.0, 83.0), reference_source(30.0, 30.0)}) {
    for (int k : {-50, -17, 0, 9, 50}) {
      CHECK(mode_normalization_residual(s, k, normalization_constants(s, k)) <= 2e-6);
    }
  }
}

TEST_CASE("spectrum samples") {
  const SourceSpec s = reference_source(61.0, 83.0);
  const auto line = signal_spectrum_samples(s, -1, 1, 3001);
  REQUIRE(line.size() == 3001);
  const double step = line[1].offset - line[0].offset;
  CHECK(line.front().offset == doctest::Approx(-1.5 * s.signal.fsr()));
  CHECK(line.back().offset == doctest::Approx(1.5 * s.signal.fsr()));

  auto argmax = [&](auto field) {
    return std::max_element(line.begin(), line.end(), [&](const auto& a, const auto& b) {
      return field(a) < field(b);
    });
  };
  const auto pa = argmax([](const SpectrumSample& x) { return x.airy_product; });
  const auto px = argmax([](const SpectrumSample& x) { return x.xi_center; });
  CHECK(std::abs(pa->offset - px->offset) <= step * (1.0 + 1e-9));
  CHECK(pa->airy_product >= 0.99);
  CHECK(px->xi_center >= 0.99);

  // Three peaks one FSR apart on the cluster sum.
  std::vector<double> peaks;
  for (std::size_t j = 1; j + 1 < line.size(); ++j) {
    if (line[j].xi_cluster > line[j - 1].xi_cluster && line[j].xi_cluster >= line[j + 1].xi_cluster &&
        line[j].xi_cluster > 0.5) {
      peaks.push_back(line[j].offset);
    }
  }
  REQUIRE(peaks.size() == 3);
  CHECK(peaks[1] - peaks[0] == doctest::Approx(s.signal.fsr()).epsilon(2.0 * step / s.signal.fsr()));
  CHECK(peaks[2] - peaks[1] == doctest::Approx(s.signal.fsr()).epsilon(2.0 * step / s.signal.fsr()));

  CHECK_THROWS_AS(signal_spectrum_samples(s, -1, 1, 1), ConfigError);
  CHECK_THROWS_AS(signal_spectrum_samples(s, 1, -1, 10), ConfigError);
}

TEST_CASE("low finesse cluster is wider") {
  // Count modes whose peak exact Airy product exceeds half the largest one.
  auto wide_modes = [](const SourceSpec& s) {
    const int per_mode = 20;
    const auto line = signal_spectrum_samples(s, -50, 50, 101 * per_mode + 1);
    std::vector<double> heights;
    for (int k = -50; k <= 50; ++k) {
      heights.push_back(line[static_cast<std::size_t>((k + 50) * per_mode + per_mode / 2)].airy_product);
    }
    const double top = *std::max_element(heights.begin(), heights.end());
    return std::count_if(heights.begin(), heights.end(), [&](double h) { return h > 0.5 * top; });
  };
  CHECK(wide_modes(reference_source(30.0, 30.0)) > wide_modes(reference_source(61.0, 83.0)));
}

TEST_CASE("jsi grid") {
  const SourceSpec s = reference_source(61.0, 83.0, 5);
  const auto g = jsi_grid_samples(s, -1, 1, 30, std::nullopt);
  REQUIRE(g.size() == 900);
  for (const JsiSample& p : g) {
    CHECK(p.exact >= 0.0);
    CHECK(p.exact <= 1.0);
    CHECK(p.approx >= 0.0);
  }
  const auto env = jsi_grid_samples(s, -1, 1, 30, 1e6);
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(env[j].approx <= g[j].approx);
  }
  CHECK_THROWS_AS(jsi_grid_samples(s, -1, 1, 30, -1.0), ConfigError);
}
