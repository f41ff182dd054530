/* Copyright 2026 The corrperiod Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "test_support.hpp"

namespace corrperiod {
namespace {

using testing::make_curve;

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

bool near_harmonic(double r) {
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      if (std::abs(r - static_cast<double>(a) / b) < 0.03) return true;
    }
  }
  return false;
}

std::vector<double> non_harmonic_ratios(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  std::vector<double> out;
  while (static_cast<int>(out.size()) < count) {
    const double r = u(rng);
    if (!near_harmonic(r)) out.push_back(r);
  }
  return out;
}

TEST(LombScargleTest, NoiselessSinusoidPeaksAtTrueFrequency) {
  const double period = 3.7;
  const LightCurve c = testing::noiseless_sinusoid(period, 400, 300.0);
  const FrequencyGrid grid = lomb_scargle_grid(c, 0.2, 200.0);
  const Spectrum s = lomb_scargle(c, grid);
  const double peak = s.frequencies[argmax(s.powers)];

  // Dense direct scan around the truth.
  std::vector<double> fine;
  for (int i = -200; i <= 200; ++i) fine.push_back(1.0 / period + i * grid.step / 100.0);
  const Spectrum dense = lomb_scargle(c, std::span<const double>(fine));
  const double dense_peak = dense.frequencies[argmax(dense.powers)];
  EXPECT_LE(std::abs(peak - dense_peak), grid.step);
  EXPECT_LE(std::abs(peak - 1.0 / period), grid.step);
}

TEST(LombScargleTest, ConstantInputGivesZeroPower) {
  const LightCurve c = make_curve({0, 1.5, 2, 4, 7}, std::vector<double>(5, 0.0));
  for (double p : lomb_scargle(c, lomb_scargle_grid(c, 0.5, 10.0)).powers) EXPECT_EQ(p, 0.0);
}

TEST(LombScargleTest, EvenSamplingAgreesWithPeriodogram) {
  std::vector<double> x;
  const double f0 = 0.1237;
  for (int i = 0; i < 256; ++i) x.push_back(std::sin(2.0 * std::numbers::pi * f0 * i) + 0.3);
  const LightCurve c = testing::even_curve(x, 1.0);
  const FrequencyGrid grid = lomb_scargle_grid(c, 2.1, 100.0);
  const Spectrum ls = lomb_scargle(c, grid);
  std::vector<double> classical;
  const double mean = 0.3;
  for (double f : ls.frequencies) {
    std::complex<double> sum = 0.0;
    for (int i = 0; i < 256; ++i) {
      sum += (x[i] - mean) * std::polar(1.0, -2.0 * std::numbers::pi * f * i);
    }
    classical.push_back(std::norm(sum));
  }
  EXPECT_EQ(argmax(ls.powers), argmax(classical));
}

TEST(LombScargleTest, RecurrenceMatchesDirectEvaluation) {
  const LightCurve c = testing::white_noise_curve(300, 4, 900.0);
  const FrequencyGrid grid = lomb_scargle_grid(c, 0.2, 200.0);
  const Spectrum fast = lomb_scargle(c, grid);
  const Spectrum direct = lomb_scargle(c, std::span<const double>(fast.frequencies));
  for (std::size_t i = 0; i < fast.size(); ++i) {
    EXPECT_NEAR(fast.powers[i], direct.powers[i], 1e-9);
    EXPECT_GE(fast.powers[i], 0.0);
  }
}

TEST(LombScargleTest, TranslationInvariant) {
  const LightCurve c = testing::noiseless_sinusoid(5.5, 200, 150.0);
  std::vector<double> f;
  for (int i = 1; i < 200; ++i) f.push_back(0.005 * i);
  const Spectrum a = lomb_scargle(c, std::span<const double>(f));
  const Spectrum b = lomb_scargle(c.shifted(123.456), std::span<const double>(f));
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(a.powers[i], b.powers[i], 1e-9);
}

TEST(AovTest, TruePeriodBeatsNonHarmonicTrials) {
  const double period = 2.9;
  const LightCurve c = testing::noiseless_sinusoid(period, 500, 400.0);
  const double at_truth = aov_statistic(c, period, Binning::fixed(10));
  for (double r : non_harmonic_ratios(20, 8)) {
    EXPECT_GT(at_truth, aov_statistic(c, r * period, Binning::fixed(10))) << r;
  }
}

TEST(AovTest, WhiteNoiseNearOne) {
  int inside = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const double theta = aov_statistic(testing::white_noise_curve(1000, seed), 7.31);
    inside += theta >= 0.3 && theta <= 3.0;
  }
  EXPECT_GE(inside, 95);
}

TEST(AovTest, EqualBinMeansGiveZero) {
  std::vector<double> t, x;
  for (int h = 0; h < 10; ++h) {
    t.push_back(0.1 * h + 0.02);
    x.push_back(1.0);
    t.push_back(0.1 * h + 0.07);
    x.push_back(-1.0);
  }
  EXPECT_EQ(aov_statistic(make_curve(t, x), 1.0, Binning::fixed(10)), 0.0);
}

TEST(AovTest, PerfectFitAndScaleInvariance) {
  std::vector<double> t, x;
  for (int i = 0; i < 40; ++i) {
    t.push_back(0.025 * i);
    x.push_back(i < 20 ? 1.0 : -1.0);
  }
  EXPECT_EQ(aov_statistic(make_curve(t, x), 1.0, Binning::fixed(2)), kAovPerfectFit);

  const LightCurve c = testing::white_noise_curve(300, 6);
  std::vector<double> scaled(c.magnitudes().begin(), c.magnitudes().end());
  for (double& v : scaled) v *= -3.5;
  for (double p : {1.7, 13.3}) {
    EXPECT_NEAR(aov_statistic(c, p), aov_statistic(c.with_magnitudes(scaled), p), 1e-9);
  }
}

TEST(SllkTest, TruePeriodBeatsNonHarmonicTrials) {
  const double period = 2.9;
  const LightCurve c = testing::noiseless_sinusoid(period, 500, 400.0);
  const double at_truth = sllk_string_length(c, period);
  for (double r : non_harmonic_ratios(20, 9)) {
    EXPECT_LT(at_truth, sllk_string_length(c, r * period)) << r;
  }
}

TEST(SllkTest, ConstantCurveIsDegenerate) {
  EXPECT_THROW(sllk_string_length(make_curve({0, 1, 2}, {4, 4, 4}), 1.3), DegenerateCurveError);
}

TEST(SllkTest, WhiteNoiseNearTwo) {
  int inside = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const double v = sllk_string_length(testing::white_noise_curve(1000, seed), 7.31);
    inside += v >= 1.6 && v <= 2.4;
  }
  EXPECT_GE(inside, 95);
}

TEST(SllkTest, ScaleInvariant) {
  const LightCurve c = testing::white_noise_curve(300, 16);
  std::vector<double> scaled(c.magnitudes().begin(), c.magnitudes().end());
  for (double& v : scaled) v *= 0.01;
  EXPECT_NEAR(sllk_string_length(c, 3.3), sllk_string_length(c.with_magnitudes(scaled), 3.3),
              1e-9);
}

TEST(SllkTest, EvaluatorMatchesOneShot) {
  const LightCurve c = testing::white_noise_curve(400, 2);
  SllkEvaluator e(c);
  for (double p : {1.0, 1.001, 1.002, 5.0, 0.3}) {
    EXPECT_NEAR(e(p), sllk_string_length(c, p), 1e-12);
  }
}

TEST(ScanTest, StringLengthFindsSinusoid) {
  const double period = 6.18;
  const LightCurve c = testing::noiseless_sinusoid(period, 300, 300.0);
  const auto best = scan_extremum(c, {0.2, 200.0, 1e-3}, ScanStatistic::sllk_min, 5);
  ASSERT_FALSE(best.empty());
  EXPECT_LT(std::abs(best[0].period - period) / period, 0.005);
  EXPECT_LE(best.size(), 5u);
  for (std::size_t i = 1; i < best.size(); ++i) EXPECT_GE(best[i].score, best[i - 1].score);
}

TEST(ScanTest, ExactGridPeriodComesFirst) {
  const double period = 2.5;
  const LightCurve c = testing::noiseless_sinusoid(period, 300, 200.0);
  for (ScanStatistic stat : {ScanStatistic::aov_max, ScanStatistic::sllk_min}) {
    const auto best = scan_extremum(c, {2.0, 3.0, 1e-3}, stat, 1);
    ASSERT_EQ(best.size(), 1u);
    EXPECT_NEAR(best[0].period, period, 1e-9);
  }
}

TEST(ScanTest, WhiteNoiseStillReturnsCandidates) {
  const LightCurve c = testing::white_noise_curve(200, 44);
  const auto best = scan_extremum(c, {1.0, 20.0, 1e-2}, ScanStatistic::aov_max, 3);
  EXPECT_EQ(best.size(), 3u);
  EXPECT_THROW(scan_extremum(c, {1.0, 20.0, 1e-2}, ScanStatistic::aov_max, 0),
               InvalidParameterError);
  EXPECT_THROW(scan_extremum(c, {1.0, 0.5, 1e-2}, ScanStatistic::aov_max, 1),
               InvalidParameterError);
}

TEST(ScanTest, ExtremaStayExtremalAfterTranslation) {
  const double period = 2.5;
  const LightCurve c = testing::noiseless_sinusoid(period, 300, 200.0).shifted(1000.3);
  EXPECT_NEAR(scan_extremum(c, {2.0, 3.0, 1e-3}, ScanStatistic::sllk_min, 1)[0].period,
              period, 1e-9);
  EXPECT_NEAR(scan_extremum(c, {2.0, 3.0, 1e-3}, ScanStatistic::aov_max, 1)[0].period,
              period, 1e-9);
}

}  // namespace
}  // namespace corrperiod
