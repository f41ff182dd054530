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

#include <algorithm>
#include <cmath>

#include "corrperiod/pipeline.hpp"
#include "corrperiod/synthetic.hpp"
#include "test_support.hpp"

namespace corrperiod {
namespace {

bool within(double estimate, double truth, double tolerance = 0.005) {
  return std::abs(estimate - truth) / truth < tolerance;
}

LightCurve noiseless_sinusoid_fixture() {
  SyntheticSpec s;
  s.period = 3.7;
  s.seed = 11;
  s.id = "sine";
  return generate(s).curve;
}

// Unequal eclipses; the half-period fold stacks the deep and shallow dips.
LightCurve eclipsing_fixture() {
  SyntheticSpec s;
  s.shape = Template::eclipsing_binary;
  s.period = 14.0;
  s.noise_sigma = 0.1;
  s.eclipse_width = 0.05;
  s.seed = 3;
  s.id = "eb";
  return generate(s).curve;
}

// Nearly equal eclipses under heavy noise: the string length prefers the
// half period while the Q metric still prefers the full one.
LightCurve near_equal_eclipse_fixture() {
  SyntheticSpec s;
  s.shape = Template::eclipsing_binary;
  s.period = 14.0;
  s.noise_sigma = 0.2;
  s.eclipse_width = 0.1;
  s.secondary_depth = 0.9;
  s.seed = 2;
  return generate(s).curve;
}

PipelineConfig narrow_band() {
  PipelineConfig c;
  c.period_min = 1.0;
  c.period_max = 60.0;
  return c;
}

class PipelineFixtureTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    sine_ = new EstimationReport(estimate_period(noiseless_sinusoid_fixture()));
    eb_ = new EstimationReport(estimate_period(eclipsing_fixture(), narrow_band()));
  }
  static void TearDownTestSuite() {
    delete sine_;
    delete eb_;
  }
  static EstimationReport* sine_;
  static EstimationReport* eb_;
};

EstimationReport* PipelineFixtureTest::sine_ = nullptr;
EstimationReport* PipelineFixtureTest::eb_ = nullptr;

TEST_F(PipelineFixtureTest, RecoversNoiselessSinusoid) {
  EXPECT_TRUE(within(sine_->best.period, 3.7)) << sine_->best.period;
  EXPECT_EQ(sine_->method, Method::correntropy_ip);
  EXPECT_EQ(sine_->curve_id, "sine");
}

TEST_F(PipelineFixtureTest, PrefersFullEclipsingPeriod) {
  EXPECT_TRUE(within(eb_->best.period, 14.0)) << eb_->best.period;
  EXPECT_FALSE(within(eb_->best.period, 7.0));
}

TEST_F(PipelineFixtureTest, BestIsTopCandidate) {
  for (const EstimationReport* r : {sine_, eb_}) {
    ASSERT_FALSE(r->candidates.empty());
    EXPECT_EQ(r->best.period, r->candidates.front().period);
    for (const auto& c : r->candidates) EXPECT_LE(c.score, r->best.score);
  }
}

TEST_F(PipelineFixtureTest, CandidatesAreDeduplicated) {
  for (const EstimationReport* r : {sine_, eb_}) {
    for (std::size_t i = 0; i < r->candidates.size(); ++i) {
      for (std::size_t j = i + 1; j < r->candidates.size(); ++j) {
        const double a = r->candidates[i].period, b = r->candidates[j].period;
        EXPECT_GT(std::abs(a - b) / std::min(a, b), 1e-3);
      }
    }
  }
}

TEST_F(PipelineFixtureTest, BestInsideBand) {
  EXPECT_GE(sine_->best.period, 0.2);
  EXPECT_LE(sine_->best.period, 200.0);
  EXPECT_GE(eb_->best.period, 1.0);
  EXPECT_LE(eb_->best.period, 60.0);
}

TEST_F(PipelineFixtureTest, BothWindowsInProvenance) {
  for (const EstimationReport* r : {sine_, eb_}) {
    ASSERT_EQ(r->windows.size(), 2u);
    bool full = false, dense = false;
    for (const auto& s : r->seeds) {
      full |= s.window == WindowTag::full;
      dense |= s.window == WindowTag::dense_half;
      EXPECT_TRUE(s.kernel_sigma.has_value());
    }
    EXPECT_TRUE(full);
    EXPECT_TRUE(dense);
  }
}

TEST_F(PipelineFixtureTest, SeedsCoverEveryKernelSize) {
  const PipelineConfig defaults;
  for (double sigma : defaults.sigma_grid) {
    EXPECT_TRUE(std::any_of(sine_->seeds.begin(), sine_->seeds.end(), [&](const auto& s) {
      return s.kernel_sigma && *s.kernel_sigma == sigma;
    })) << sigma;
  }
}

TEST_F(PipelineFixtureTest, WhiteNoiseScoresBelowSignals) {
  const EstimationReport noise = estimate_period(testing::white_noise_curve(1000, 21, 2700.0));
  EXPECT_FALSE(noise.candidates.empty());
  EXPECT_LT(noise.best.score, sine_->best.score);
  EXPECT_LT(noise.best.score, eb_->best.score);
}

TEST(PipelineTest, Deterministic) {
  PipelineConfig c = narrow_band();
  c.sigma_grid = {0.1, 0.5, 2.0};
  const LightCurve curve = eclipsing_fixture();
  const EstimationReport a = estimate_period(curve, c);
  const EstimationReport b = estimate_period(curve, c);
  EXPECT_EQ(a.best.period, b.best.period);
  EXPECT_EQ(a.best.score, b.best.score);
  ASSERT_EQ(a.candidates.size(), b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    EXPECT_EQ(a.candidates[i].period, b.candidates[i].period);
    EXPECT_EQ(a.candidates[i].score, b.candidates[i].score);
  }
}

TEST(PipelineTest, AddingKernelSizeNeverLowersBestScore) {
  PipelineConfig small = narrow_band();
  small.fine_tune_limit = 0;
  small.n_peaks = 4;
  small.sigma_grid = {0.05, 0.5};
  PipelineConfig large = small;
  large.sigma_grid.push_back(3.0);
  const LightCurve curve = testing::white_noise_curve(400, 5, 1500.0);
  EXPECT_GE(estimate_period(curve, large).best.score,
            estimate_period(curve, small).best.score);
}

TEST(PipelineTest, LombScargleDispatchMatchesPeriodogram) {
  const LightCurve curve = noiseless_sinusoid_fixture();
  const PipelineConfig c;
  const EstimationReport r = estimate_with_method(curve, Method::lomb_scargle, c);
  const LightCurve n = normalize(curve);
  const Spectrum ls =
      lomb_scargle(n, lomb_scargle_grid(n, c.period_min, c.period_max, c.ls_oversampling));
  const PeakSet top = extract_peaks(ls, 1, c.period_min, c.period_max);
  ASSERT_EQ(top.entries.size(), 1u);
  EXPECT_EQ(r.best.period, top.entries[0].period);
  EXPECT_EQ(r.method, Method::lomb_scargle);
}

TEST(PipelineTest, IpRescuesStringLengthFromHalfPeriod) {
  const LightCurve curve = near_equal_eclipse_fixture();
  const PipelineConfig c = narrow_band();
  const EstimationReport plain = estimate_with_method(curve, Method::sllk, c);
  const EstimationReport hybrid = estimate_with_method(curve, Method::sllk_ip, c);
  EXPECT_TRUE(within(plain.best.period, 7.0)) << plain.best.period;
  EXPECT_TRUE(within(hybrid.best.period, 14.0)) << hybrid.best.period;
}

TEST(PipelineTest, CorrelationPoolLeadsWithHalfPeriod) {
  const EstimationReport r =
      estimate_with_method(eclipsing_fixture(), Method::correlation_ip, narrow_band());
  ASSERT_FALSE(r.seeds.empty());
  EXPECT_EQ(r.seeds.front().origin, CandidateOrigin::psd_peak);
  EXPECT_EQ(r.seeds.front().rank, 0u);
  EXPECT_TRUE(within(r.seeds.front().period, 7.0)) << r.seeds.front().period;
}

TEST(PipelineTest, CoarseScoreFindsOffsetPeak) {
  // Objective peaked at 10 d; the seed sits one coarse step away in frequency.
  const auto objective = [](double p) { return -std::abs(p - 10.0); };
  FineTuneConfig tune;
  tune.min_period = 1.0;
  tune.max_period = 100.0;
  PeriodCandidate seed;
  seed.period = 1.0 / (0.1 + 1e-3);
  const PeriodCandidate c = detail::coarse_score(objective, seed, tune, 3, 1e-3);
  EXPECT_NEAR(c.period, 10.0, 1e-9);
  EXPECT_EQ(c.seed_period, seed.period);
  EXPECT_GE(c.score, objective(seed.period));
  const PeriodCandidate none = detail::coarse_score(objective, seed, tune, 0, 1e-3);
  EXPECT_EQ(none.period, seed.period);
}

TEST(PipelineTest, MethodNamesRoundTrip) {
  for (const auto& entry : kMethodNames) EXPECT_EQ(parse_method(entry.name), entry.method);
  try {
    parse_method("fourier");
    FAIL();
  } catch (const InvalidParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("correntropy+ip"), std::string::npos);
  }
}

TEST(PipelineTest, ValidatesInputs) {
  const LightCurve curve = noiseless_sinusoid_fixture();
  PipelineConfig c;
  c.sigma_grid = {};
  EXPECT_THROW(estimate_period(curve, c), InvalidParameterError);
  c = {};
  c.sigma_grid = {0.5, 0.1};
  EXPECT_THROW(estimate_period(curve, c), InvalidParameterError);
  c = {};
  c.period_min = 10.0;
  c.period_max = 5.0;
  EXPECT_THROW(estimate_period(curve, c), InvalidParameterError);
  c = {};
  c.max_lag_fraction = 1.5;
  EXPECT_THROW(estimate_period(curve, c), InvalidParameterError);
  c = {};
  c.n_peaks = 0;
  EXPECT_THROW(estimate_period(curve, c), InvalidParameterError);

  const LightCurve tiny = testing::white_noise_curve(40, 1);
  EXPECT_THROW(estimate_period(tiny), InsufficientDataError);
  std::vector<double> t(60), x(60, 3.0);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i);
  EXPECT_THROW(estimate_period(testing::make_curve(t, x)), DegenerateCurveError);
}

TEST(PipelineTest, LogGridEndpoints) {
  const auto g = log_sigma_grid();
  ASSERT_EQ(g.size(), 25u);
  EXPECT_EQ(g.front(), 0.01);
  EXPECT_EQ(g.back(), 5.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_NEAR(g[i] / g[i - 1], std::pow(500.0, 1.0 / 24.0), 1e-12);
  }
}

}  // namespace
}  // namespace corrperiod
