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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "corrperiod/benchkit.hpp"
#include "test_support.hpp"

namespace corrperiod {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("corrperiod-bench-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

PipelineConfig fast_ls() {
  PipelineConfig c;
  c.period_min = 1.0;
  c.period_max = 20.0;
  return c;
}

TEST(ClassifyTest, PublishedPairs) {
  EXPECT_EQ(classify_period(14.0055, 14.0063), PeriodClass::hit);
  EXPECT_EQ(classify_period(7.0024, 14.0063), PeriodClass::multiple);
  EXPECT_EQ(classify_period(10.0, 14.0063), PeriodClass::miss);
}

TEST(ClassifyTest, IdentityAndIntegerMultiples) {
  for (double x : {0.21, 1.0, 3.7, 14.0063, 199.9}) {
    EXPECT_EQ(classify_period(x, x), PeriodClass::hit);
    for (int n = 2; n <= 10; ++n) {
      EXPECT_EQ(classify_period(n * x, x), PeriodClass::multiple) << n;
      EXPECT_EQ(classify_period(x / n, x), PeriodClass::multiple) << n;
    }
    EXPECT_EQ(classify_period(11.0 * x, x), PeriodClass::miss);
    EXPECT_EQ(classify_period(1.5 * x, x), PeriodClass::miss);
  }
}

TEST(ClassifyTest, ToleranceEdges) {
  EXPECT_EQ(classify_period(10.049, 10.0), PeriodClass::hit);
  EXPECT_EQ(classify_period(10.051, 10.0), PeriodClass::miss);
  // Tolerance is relative to the multiple, not to the truth.
  EXPECT_EQ(classify_period(20.09, 10.0), PeriodClass::multiple);
  EXPECT_EQ(classify_period(20.11, 10.0), PeriodClass::miss);
  EXPECT_THROW(classify_period(0.0, 1.0), InvalidParameterError);
  EXPECT_THROW(classify_period(1.0, -1.0), InvalidParameterError);
}

TEST(SummaryTest, RoundsToOneDecimal) {
  MethodSummary s;
  s.curves = 3;
  s.hits = s.multiples = s.misses = 1;
  EXPECT_EQ(s.hit_percent(), 33.3);
  EXPECT_EQ(s.multiple_percent(), 33.3);
  EXPECT_EQ(s.miss_percent(), 33.3);
  s.curves = 0;
  EXPECT_EQ(s.hit_percent(), 0.0);
}

TEST(GenerateTest, NoiselessSinusoidIsExact) {
  SyntheticSpec s;
  s.period = 5.3;
  s.amplitude = 1.7;
  s.n_samples = 200;
  s.sampling = Sampling::uniform_random;
  const SyntheticCurve c = generate(s);
  EXPECT_EQ(c.true_period, 5.3);
  ASSERT_EQ(c.curve.size(), 200u);
  for (std::size_t i = 0; i < c.curve.size(); ++i) {
    const double t = c.curve.times()[i];
    EXPECT_EQ(c.curve.magnitudes()[i], 1.7 * std::sin(2.0 * std::numbers::pi * t / 5.3));
  }
}

TEST(GenerateTest, SameSeedSameCurve) {
  SyntheticSpec s;
  s.shape = Template::eclipsing_binary;
  s.period = 9.1;
  s.noise_sigma = 0.3;
  s.seed = 77;
  const LightCurve a = generate(s).curve, b = generate(s).curve;
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.times()[i], b.times()[i]);
    EXPECT_EQ(a.magnitudes()[i], b.magnitudes()[i]);
    EXPECT_EQ(a.errors()[i], b.errors()[i]);
  }
  s.seed = 78;
  EXPECT_NE(generate(s).curve.magnitudes()[0], a.magnitudes()[0]);
}

TEST(GenerateTest, SeasonalSamplingSkipsGapAndDaytime) {
  SyntheticSpec s;
  s.n_samples = 2000;
  for (double t : generate(s).curve.times()) {
    EXPECT_LT(std::fmod(t, 365.25), 365.25 - 120.0 + 1.0);
    EXPECT_LE(t - std::floor(t), 8.0 / 24.0);
  }
}

TEST(GenerateTest, EclipsingTemplateFoldsToTwoMinima) {
  SyntheticSpec s;
  s.shape = Template::eclipsing_binary;
  s.period = 14.0063;
  s.eclipse_width = 0.05;
  const LightCurve c = generate(s).curve;
  const FoldedCurve f = fold(c, s.period);
  const auto optima = find_local_optima(f.phases, smooth_folded(f, 20), {});
  std::size_t minima = 0;
  for (const auto& o : optima) minima += o.kind == OptimumKind::minimum;
  EXPECT_EQ(minima, 2u);
  // Primary dip twice as deep as the secondary.
  EXPECT_NEAR(template_value(Template::eclipsing_binary, 0.0, 1.0, 0.05),
              -1.0 - 0.5 * std::exp(-0.25 / (2 * 0.05 * 0.05)), 1e-15);
  EXPECT_NEAR(template_value(Template::eclipsing_binary, 0.5, 1.0, 0.05),
              -0.5 - std::exp(-0.25 / (2 * 0.05 * 0.05)), 1e-15);
}

TEST(GenerateTest, RejectsInvalidSpecs) {
  SyntheticSpec s;
  s.period = 1000.0;
  EXPECT_THROW(generate(s), InvalidParameterError);
  s = {};
  s.n_samples = 10;
  EXPECT_THROW(generate(s), InvalidParameterError);
  s = {};
  s.noise_sigma = -1.0;
  EXPECT_THROW(generate(s), InvalidParameterError);
}

TEST(GenerateTest, SuiteIsDeterministicAndInRange) {
  const auto a = generate_suite(sinusoid_suite(6, 5));
  const auto b = generate_suite(sinusoid_suite(6, 5));
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].true_period, b[i].true_period);
    EXPECT_EQ(a[i].curve.id(), b[i].curve.id());
    EXPECT_GE(a[i].true_period, 0.5);
    EXPECT_LE(a[i].true_period, 100.0);
  }
  EXPECT_EQ(a[0].curve.id(), "sin-000");
}

TEST(BatchTest, PerfectEstimatesScoreFullHits) {
  std::vector<LabeledCurve> curves;
  for (double p : {2.3, 4.1, 7.9}) curves.push_back({testing::noiseless_sinusoid(p, 400, 400.0), p});
  const BatchResult r =
      evaluate_batch(curves, {Method::lomb_scargle, Method::aov}, fast_ls());
  ASSERT_EQ(r.summaries.size(), 2u);
  for (const auto& s : r.summaries) {
    EXPECT_EQ(s.curves, 3u);
    EXPECT_EQ(s.hit_percent(), 100.0);
    EXPECT_EQ(s.multiple_percent(), 0.0);
    EXPECT_EQ(s.miss_percent(), 0.0);
  }
  ASSERT_EQ(r.outcomes.size(), 6u);
  EXPECT_EQ(r.outcomes[0].method, Method::lomb_scargle);
  EXPECT_EQ(r.outcomes[1].method, Method::aov);
}

TEST(BatchTest, MixedOutcomesAndFailures) {
  const LightCurve sine = testing::noiseless_sinusoid(3.7, 400, 400.0);
  // Same curve under three labels: true, twice the estimate, unrelated.
  std::vector<LabeledCurve> curves = {
      {sine, 3.7}, {sine, 1.85}, {sine, 2.9}, {testing::white_noise_curve(30, 1), 5.0}};
  const BatchResult r = evaluate_batch(curves, {Method::lomb_scargle}, fast_ls());
  const auto& s = r.summaries.at(0);
  EXPECT_EQ(s.hits, 1u);
  EXPECT_EQ(s.multiples, 1u);
  EXPECT_EQ(s.misses, 2u);
  EXPECT_EQ(s.failures, 1u);
  EXPECT_NEAR(s.hit_percent() + s.multiple_percent() + s.miss_percent(), 100.0, 0.1);
  EXPECT_TRUE(std::isnan(r.outcomes[3].estimated_period));
  EXPECT_FALSE(r.outcomes[3].error.empty());
  EXPECT_TRUE(r.outcomes[0].error.empty());

  std::ostringstream table, rows;
  write_summary_table(table, r.summaries);
  EXPECT_EQ(table.str(),
            "method\thits%\tmultiples%\tmisses%\tcurves\tfailures\n"
            "ls\t25.0\t25.0\t50.0\t4\t1\n");
  write_outcomes(rows, r.outcomes);
  EXPECT_NE(rows.str().find("\tnan\tmiss\tnan\t"), std::string::npos);
}

TEST(BatchTest, ThreadCountDoesNotChangeResults) {
  std::vector<LabeledCurve> curves;
  for (double p : {2.3, 4.1, 7.9, 11.2}) {
    curves.push_back({testing::noiseless_sinusoid(p, 300, 300.0), p});
  }
  const std::vector<Method> methods = {Method::lomb_scargle, Method::sllk};
  const BatchResult one = evaluate_batch(curves, methods, fast_ls(), {1});
  const BatchResult many = evaluate_batch(curves, methods, fast_ls(), {3});
  ASSERT_EQ(one.outcomes.size(), many.outcomes.size());
  for (std::size_t i = 0; i < one.outcomes.size(); ++i) {
    EXPECT_EQ(one.outcomes[i].estimated_period, many.outcomes[i].estimated_period);
    EXPECT_EQ(one.outcomes[i].curve_id, many.outcomes[i].curve_id);
  }
}

TEST(BatchTest, RejectsEmptyInputs) {
  EXPECT_THROW(evaluate_batch({}, {Method::aov}, {}), InvalidParameterError);
  std::vector<LabeledCurve> one = {{testing::white_noise_curve(60, 1), 2.0}};
  EXPECT_THROW(evaluate_batch(one, {}, {}), InvalidParameterError);
  one[0].true_period = 0.0;
  EXPECT_THROW(evaluate_batch(one, {Method::aov}, {}), InvalidParameterError);
}

TEST(TruthFileTest, ParsesAndRejects) {
  TempDir dir;
  write_text(dir.path() / "ok.txt", "# id period\nalpha 1.5\nbeta,2.25\n\n");
  const auto truth = load_truth(dir.path() / "ok.txt");
  ASSERT_EQ(truth.size(), 2u);
  EXPECT_EQ(truth.at("alpha"), 1.5);
  EXPECT_EQ(truth.at("beta"), 2.25);

  write_text(dir.path() / "bad.txt", "alpha 1.5\nbeta\n");
  EXPECT_THROW(load_truth(dir.path() / "bad.txt"), ParseError);
  write_text(dir.path() / "neg.txt", "alpha -1\n");
  EXPECT_THROW(load_truth(dir.path() / "neg.txt"), ParseError);
  write_text(dir.path() / "dup.txt", "alpha 1\nalpha 2\n");
  EXPECT_THROW(load_truth(dir.path() / "dup.txt"), ParseError);
  EXPECT_THROW(load_truth(dir.path() / "missing.txt"), Error);
}

TEST(TruthFileTest, DirectoryMismatchNamesTheId) {
  TempDir dir;
  const fs::path data = dir.path() / "curves";
  fs::create_directories(data);
  for (const char* id : {"a", "b"}) {
    std::ofstream out(data / (std::string(id) + ".dat"));
    write_lightcurve(out, testing::noiseless_sinusoid(3.0, 60, 50.0));
  }
  write_text(dir.path() / "truth.txt", "a 3\nb 3\n");
  const auto loaded = load_labeled_directory(data, dir.path() / "truth.txt");
  ASSERT_EQ(loaded.size(), 2u);
  EXPECT_EQ(loaded[0].curve.id(), "a");
  EXPECT_EQ(loaded[1].true_period, 3.0);

  write_text(dir.path() / "truth.txt", "a 3\n");
  try {
    load_labeled_directory(data, dir.path() / "truth.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos);
  }
  write_text(dir.path() / "truth.txt", "a 3\nb 3\nc 4\n");
  try {
    load_labeled_directory(data, dir.path() / "truth.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("'c'"), std::string::npos);
  }
}

}  // namespace
}  // namespace corrperiod
