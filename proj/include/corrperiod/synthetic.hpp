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

#ifndef CORRPERIOD_SYNTHETIC_HPP_
#define CORRPERIOD_SYNTHETIC_HPP_

///
/// Synthetic light curves with known periods.
///

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "corrperiod/error.hpp"
#include "corrperiod/lightcurve.hpp"

namespace corrperiod {

enum class Template { sinusoid, eclipsing_binary, sawtooth };
enum class Sampling { uniform_random, seasonal };

inline std::string_view to_string(Template t) {
  switch (t) {
    case Template::sinusoid: return "sinusoid";
    case Template::eclipsing_binary: return "eclipsing-binary";
    case Template::sawtooth: return "sawtooth";
  }
  return "?";
}

struct SyntheticSpec {
  Template shape = Template::sinusoid;
  double period = 1.0;
  double amplitude = 1.0;
  double noise_sigma = 0.0;
  std::size_t n_samples = 1000;
  double time_span = 2700.0;
  Sampling sampling = Sampling::seasonal;
  std::uint64_t seed = 1;
  /// Gaussian width of each eclipse, in phase units.
  double eclipse_width = 0.02;
  /// Depth of the secondary eclipse relative to the primary.
  double secondary_depth = 0.5;
  std::string id = "synthetic";

  void validate() const {
    if (!(time_span > 0.0)) throw InvalidParameterError("time span must be positive");
    if (!(period > 0.0) || period > time_span / 3.0) {
      throw InvalidParameterError("period must lie in (0, time_span / 3]");
    }
    if (n_samples < 50) throw InvalidParameterError("need at least 50 samples");
    if (!(noise_sigma >= 0.0)) throw InvalidParameterError("noise must be >= 0");
    if (!(amplitude > 0.0)) throw InvalidParameterError("amplitude must be positive");
    if (!(eclipse_width > 0.0)) throw InvalidParameterError("eclipse width must be positive");
    if (!(secondary_depth >= 0.0 && secondary_depth <= 1.0)) {
      throw InvalidParameterError("secondary depth must lie in [0, 1]");
    }
  }
};

struct SyntheticCurve {
  LightCurve curve;
  double true_period;
};

/// Template value at phase in [0, 1). The eclipsing binary dips at phase 0
/// (primary eclipse) and phase 0.5 (shallower secondary). The sawtooth rises over 15% of the
/// cycle and declines over the rest.
inline double template_value(Template shape, double phase, double amplitude,
                             double eclipse_width, double secondary_depth = 0.5) {
  switch (shape) {
    case Template::sinusoid:
      return amplitude * std::sin(2.0 * std::numbers::pi * phase);
    case Template::eclipsing_binary: {
      const double d1 = std::min(phase, 1.0 - phase);
      const double d2 = std::abs(phase - 0.5);
      const double w2 = 2.0 * eclipse_width * eclipse_width;
      return -amplitude * (std::exp(-d1 * d1 / w2) +
                           secondary_depth * std::exp(-d2 * d2 / w2));
    }
    case Template::sawtooth: {
      constexpr double kRise = 0.15;
      return phase < kRise
                 ? amplitude * (0.5 - phase / kRise)
                 : amplitude * (-0.5 + (phase - kRise) / (1.0 - kRise));
    }
  }
  return 0.0;
}

/// Deterministic for a given spec. Seasonal sampling draws nights outside a
/// 120-day annual gap and places each sample inside an 8-hour window of its
/// night.
inline SyntheticCurve generate(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> t;
  t.reserve(spec.n_samples);
  if (spec.sampling == Sampling::uniform_random) {
    for (std::size_t i = 0; i < spec.n_samples; ++i) {
      t.push_back(spec.time_span * unit(rng));
    }
  } else {
    constexpr double kYear = 365.25;
    constexpr double kGap = 120.0;
    constexpr double kNight = 8.0 / 24.0;
    std::vector<double> nights;
    for (double day = 0.0; day + kNight <= spec.time_span; day += 1.0) {
      if (std::fmod(day, kYear) < kYear - kGap) nights.push_back(day);
    }
    if (nights.empty()) throw InvalidParameterError("time span has no observable night");
    std::uniform_int_distribution<std::size_t> pick(0, nights.size() - 1);
    for (std::size_t i = 0; i < spec.n_samples; ++i) {
      t.push_back(nights[pick(rng)] + kNight * unit(rng));
    }
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());

  std::normal_distribution<double> noise(0.0, 1.0);
  const double error_scale = spec.noise_sigma > 0.0 ? spec.noise_sigma : 0.01;
  std::vector<double> x(t.size()), e(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (spec.shape == Template::sinusoid) {
      x[i] = spec.amplitude * std::sin(2.0 * std::numbers::pi * t[i] / spec.period);
    } else {
      x[i] = template_value(spec.shape, fold_phase(t[i], spec.period),
                            spec.amplitude, spec.eclipse_width, spec.secondary_depth);
    }
    if (spec.noise_sigma > 0.0) x[i] += spec.noise_sigma * noise(rng);
    e[i] = error_scale * (0.9 + 0.2 * unit(rng));
  }
  return {LightCurve(std::move(t), std::move(x), std::move(e), spec.id),
          spec.period};
}

/// Suite settings shared by every curve; periods are drawn log-uniformly.
struct SuiteSpec {
  Template shape = Template::sinusoid;
  std::size_t count = 50;
  double min_period = 0.5;
  double max_period = 100.0;
  double amplitude = 1.0;
  double noise_sigma = 0.2;
  std::size_t n_samples = 1000;
  double time_span = 2700.0;
  Sampling sampling = Sampling::seasonal;
  double eclipse_width = 0.02;
  double secondary_depth = 0.5;
  std::uint64_t seed = 2011;
};

inline std::vector<SyntheticCurve> generate_suite(const SuiteSpec& suite) {
  std::mt19937_64 rng(suite.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = std::log(suite.min_period);
  const double hi = std::log(suite.max_period);
  std::vector<SyntheticCurve> out;
  out.reserve(suite.count);
  for (std::size_t i = 0; i < suite.count; ++i) {
    SyntheticSpec spec;
    spec.shape = suite.shape;
    spec.period = std::exp(lo + (hi - lo) * unit(rng));
    spec.amplitude = suite.amplitude;
    spec.noise_sigma = suite.noise_sigma;
    spec.n_samples = suite.n_samples;
    spec.time_span = suite.time_span;
    spec.sampling = suite.sampling;
    spec.eclipse_width = suite.eclipse_width;
    spec.secondary_depth = suite.secondary_depth;
    spec.seed = suite.seed * 1000003ULL + i;
    char id[32];
    std::snprintf(id, sizeof(id), "%.3s-%03zu",
                  std::string(to_string(suite.shape)).c_str(), i);
    spec.id = id;
    out.push_back(generate(spec));
  }
  return out;
}

/// Sinusoids with periods in [0.5, 100] d, 1000 seasonal samples over
/// 2700 d and noise 0.2.
inline SuiteSpec sinusoid_suite(std::size_t count = 50, std::uint64_t seed = 2011) {
  SuiteSpec s;
  s.count = count;
  s.seed = seed;
  return s;
}

/// Eclipsing binaries with periods in [1, 30] d, eclipses 0.05 wide in
/// phase, a secondary at half the primary depth and noise 0.1.
inline SuiteSpec eclipsing_binary_suite(std::size_t count = 30,
                                        std::uint64_t seed = 2011) {
  SuiteSpec s;
  s.shape = Template::eclipsing_binary;
  s.count = count;
  s.seed = seed;
  s.min_period = 1.0;
  s.max_period = 30.0;
  s.noise_sigma = 0.1;
  s.eclipse_width = 0.05;
  return s;
}

}  // namespace corrperiod

#endif  // CORRPERIOD_SYNTHETIC_HPP_
