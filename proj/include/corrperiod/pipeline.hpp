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

#ifndef CORRPERIOD_PIPELINE_HPP_
#define CORRPERIOD_PIPELINE_HPP_

///
/// End-to-end period estimation.
///
/// The default method (correntropy + IP):
///   1. normalize the curve and drop samples with outlying errors;
///   2. analyse the whole curve and its densest half-span window;
///   3. for every kernel size, compute slotted correntropy up to
///      max_lag_fraction * span and its spectral density;
///   4. take the n_peaks strongest spectral peaks in the period band as
///      seeds and fine-tune each by maximizing Q;
///   5. keep the candidate with the largest Q.
///
/// The other methods swap the seed source (slotted correlation PSD,
/// Lomb-Scargle, string-length minima) or the discriminator (AoV, string
/// length), or return a baseline's own extremum.
///

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corrperiod/baselines.hpp"
#include "corrperiod/binning.hpp"
#include "corrperiod/candidate.hpp"
#include "corrperiod/error.hpp"
#include "corrperiod/information.hpp"
#include "corrperiod/kernel.hpp"
#include "corrperiod/lightcurve.hpp"
#include "corrperiod/slotted.hpp"
#include "corrperiod/spectral.hpp"

namespace corrperiod {

enum class Method {
  correntropy_ip,
  correlation_ip,
  lomb_scargle,
  lomb_scargle_ip,
  aov,
  sllk,
  sllk_ip,
  correntropy_aov,
  correntropy_sllk,
};

struct MethodName {
  Method method;
  std::string_view name;
};

inline constexpr MethodName kMethodNames[] = {
    {Method::correntropy_ip, "correntropy+ip"},
    {Method::correlation_ip, "correlation+ip"},
    {Method::lomb_scargle, "ls"},
    {Method::lomb_scargle_ip, "ls+ip"},
    {Method::aov, "aov"},
    {Method::sllk, "sllk"},
    {Method::sllk_ip, "sllk+ip"},
    {Method::correntropy_aov, "correntropy+aov"},
    {Method::correntropy_sllk, "correntropy+sllk"},
};

inline std::string_view to_string(Method m) {
  for (const auto& entry : kMethodNames) {
    if (entry.method == m) return entry.name;
  }
  return "?";
}

inline std::string method_list() {
  std::string out;
  for (const auto& entry : kMethodNames) {
    if (!out.empty()) out += ", ";
    out += entry.name;
  }
  return out;
}

inline Method parse_method(std::string_view name) {
  for (const auto& entry : kMethodNames) {
    if (entry.name == name) return entry.method;
  }
  throw InvalidParameterError("unknown method '" + std::string(name) +
                              "'; valid methods: " + method_list());
}

/// Kernel sizes logarithmically spaced over [lo, hi].
inline std::vector<double> log_sigma_grid(std::size_t count = 25, double lo = 0.01,
                                          double hi = 5.0) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::exp(a + (b - a) * static_cast<double>(i) /
                               static_cast<double>(count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

struct PipelineConfig {
  std::vector<double> sigma_grid = log_sigma_grid();
  /// Slot size, days.
  double slot_size = 0.25;
  /// Maximum lag as a fraction of the analysed series' time span.
  double max_lag_fraction = 0.1;
  std::size_t n_peaks = 10;
  double period_min = 0.2;
  double period_max = 200.0;
  std::size_t oversample = 8;
  Binning binning = Binning::dynamic();
  /// Kernel size of the Q metric. Unset: each seed is scored with the
  /// kernel size whose spectrum produced it.
  std::optional<double> discrimination_sigma = 0.5;
  /// Kernel size of Q for seeds without one (PSD, LS, string length).
  double hybrid_sigma = 0.5;
  double fine_tune_half_width = 0.5;
  /// Seeds per window (and kernel size) that get the full grid search,
  /// chosen by their score at the seed period; the rest keep that score.
  /// 0 searches around every seed.
  std::size_t fine_tune_limit = 10;
  /// Coarse look around each seed before choosing which to search: this
  /// many frequency steps on each side, each `prescreen_step` cycles over
  /// the window's time span.
  std::size_t prescreen_points = 6;
  double prescreen_step = 0.2;
  double fine_tune_step = 1e-3;
  /// Relative tolerance for merging near-identical periods.
  double dedup_tolerance = 1e-3;
  bool analyze_dense_window = true;
  /// Period step of the AoV and string-length scans.
  double scan_step = 1e-3;
  double ls_oversampling = 5.0;
  std::size_t aov_bins = 10;

  void validate() const {
    if (sigma_grid.empty()) throw InvalidParameterError("sigma grid is empty");
    for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
      if (!(sigma_grid[i] > 0.0) || !std::isfinite(sigma_grid[i])) {
        throw InvalidParameterError("kernel sizes must be positive");
      }
      if (i > 0 && !(sigma_grid[i] > sigma_grid[i - 1])) {
        throw InvalidParameterError("sigma grid must be strictly ascending");
      }
    }
    if (!(slot_size > 0.0)) throw InvalidParameterError("slot size must be positive");
    if (!(max_lag_fraction > 0.0) || max_lag_fraction > 1.0) {
      throw InvalidParameterError("max lag fraction must lie in (0, 1]");
    }
    if (n_peaks < 1) throw InvalidParameterError("n_peaks must be >= 1");
    if (!(period_min > 0.0) || !(period_max > period_min)) {
      throw InvalidParameterError("period band must satisfy 0 < min < max");
    }
    if (oversample < 1) throw InvalidParameterError("oversample must be >= 1");
    if (discrimination_sigma && !(*discrimination_sigma > 0.0)) {
      throw InvalidParameterError("discrimination sigma must be positive");
    }
    if (!(hybrid_sigma > 0.0)) throw InvalidParameterError("hybrid sigma must be positive");
    if (!(fine_tune_step > 0.0) || !(fine_tune_half_width >= 0.0)) {
      throw InvalidParameterError("invalid fine-tune grid");
    }
    if (!(prescreen_step > 0.0)) throw InvalidParameterError("prescreen step must be positive");
    if (!(dedup_tolerance >= 0.0)) throw InvalidParameterError("invalid dedup tolerance");
    if (!(scan_step > 0.0)) throw InvalidParameterError("scan step must be positive");
    if (!(ls_oversampling > 0.0)) throw InvalidParameterError("LS oversampling must be positive");
    if (aov_bins < 2) throw InvalidParameterError("AoV needs >= 2 bins");
  }

  FineTuneConfig fine_tune_config() const {
    FineTuneConfig f;
    f.half_width = fine_tune_half_width;
    f.step = fine_tune_step;
    f.min_period = period_min;
    f.max_period = period_max;
    return f;
  }
  PeriodGrid scan_grid() const { return {period_min, period_max, scan_step}; }
};

struct WindowSummary {
  WindowTag tag = WindowTag::full;
  std::size_t samples = 0;
  double start = 0.0;
  double span = 0.0;
  double max_lag = 0.0;
};

struct EstimationReport {
  std::string curve_id;
  Method method = Method::correntropy_ip;
  PeriodCandidate best;
  /// Scored candidates after deduplication, best first.
  std::vector<PeriodCandidate> candidates;
  /// Every seed in discovery order (window, kernel size, rank).
  std::vector<PeriodCandidate> seeds;
  std::vector<WindowSummary> windows;
  std::size_t samples_in = 0;
  std::size_t samples_used = 0;
  /// Wall-clock seconds per stage.
  std::vector<std::pair<std::string, double>> timings;
};

namespace detail {

class StageClock {
 public:
  explicit StageClock(EstimationReport& report) : report_(report) {}
  void lap(std::string name) {
    const auto now = std::chrono::steady_clock::now();
    report_.timings.emplace_back(
        std::move(name), std::chrono::duration<double>(now - last_).count());
    last_ = now;
  }

 private:
  EstimationReport& report_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

inline bool same_period(double a, double b, double tolerance) {
  return std::abs(a - b) <= tolerance * std::max(a, b);
}

// Best-first list with near-duplicate periods (relative tolerance) merged;
// the higher-scoring entry survives, earlier entries win ties.
inline std::vector<PeriodCandidate> deduplicate(std::vector<PeriodCandidate> all,
                                                double tolerance, bool larger_is_better) {
  std::stable_sort(all.begin(), all.end(),
                   [&](const PeriodCandidate& a, const PeriodCandidate& b) {
                     return larger_is_better ? a.score > b.score : a.score < b.score;
                   });
  std::vector<PeriodCandidate> kept;
  for (const PeriodCandidate& c : all) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const PeriodCandidate& k) {
      return same_period(k.period, c.period, tolerance);
    });
    if (!dup) kept.push_back(c);
  }
  return kept;
}

// Seeds whose periods repeat (relative tolerance) within one window, keeping
// the first occurrence.
inline std::vector<PeriodCandidate> distinct_seeds(
    const std::vector<PeriodCandidate>& seeds, double tolerance) {
  std::vector<PeriodCandidate> out;
  for (const PeriodCandidate& s : seeds) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const PeriodCandidate& k) {
      return k.window == s.window && same_period(k.period, s.period, tolerance);
    });
    if (!dup) out.push_back(s);
  }
  return out;
}

struct AnalysisWindow {
  WindowTag tag;
  LightCurve curve;
};

inline std::vector<AnalysisWindow> analysis_windows(const LightCurve& normalized,
                                                    const PipelineConfig& config) {
  std::vector<AnalysisWindow> windows;
  windows.push_back({WindowTag::full, normalized});
  if (config.analyze_dense_window) {
    LightCurve dense = select_dense_window(normalized);
    if (dense.size() >= 3 && dense.size() < normalized.size() &&
        dense.time_span() >= 2.0 * config.slot_size) {
      windows.push_back({WindowTag::dense_half, std::move(dense)});
    }
  }
  return windows;
}

// Spectral seeds from slotted correntropy (one spectrum per kernel size) or
// slotted correlation (one PSD).
inline void spectral_seeds(const AnalysisWindow& window, bool correntropy,
                           const PipelineConfig& config, EstimationReport& report) {
  const double max_lag = config.max_lag_fraction * window.curve.time_span();
  WindowSummary summary{window.tag, window.curve.size(), window.curve.times().front(),
                        window.curve.time_span(), max_lag};
  report.windows.push_back(summary);
  if (max_lag < config.slot_size) return;
  const SlotPairs pairs(window.curve, config.slot_size, max_lag);

  const auto add_peaks = [&](const Spectrum& spectrum, std::optional<double> sigma,
                             CandidateOrigin origin) {
    const PeakSet peaks =
        extract_peaks(spectrum, config.n_peaks, config.period_min, config.period_max);
    for (std::size_t r = 0; r < peaks.entries.size(); ++r) {
      PeriodCandidate c;
      c.period = peaks.entries[r].period;
      c.seed_period = c.period;
      c.score = 0.0;
      c.origin = origin;
      c.kernel_sigma = sigma;
      c.window = window.tag;
      c.rank = r;
      report.seeds.push_back(c);
    }
  };

  if (correntropy) {
    for (double sigma : config.sigma_grid) {
      const SlottedSeries series = slotted_correntropy(pairs, KernelConfig(sigma));
      add_peaks(csd(series, config.oversample), sigma, CandidateOrigin::csd_peak);
    }
  } else {
    const SlottedSeries series = slotted_autocorrelation(pairs);
    add_peaks(csd(series, config.oversample), std::nullopt, CandidateOrigin::psd_peak);
  }
}

enum class Discriminator { ip, aov, sllk };

// Relative spacing under which two seeds count as the same spectral line when
// choosing which ones to grid-search.
inline constexpr double kSearchSpacing = 0.01;

// Best objective over seed frequency +- k * step, k = 0 .. points. The
// spectral peak locates a period only to a fraction of a bin, which at long
// periods smears the fold; the coarse look keeps good seeds from ranking low.
template <typename Objective>
PeriodCandidate coarse_score(Objective& objective, PeriodCandidate seed,
                             const FineTuneConfig& tune, std::size_t points,
                             double step) {
  const double f0 = 1.0 / seed.period;
  seed.seed_period = seed.period;
  seed.score = objective(seed.period);
  for (std::size_t k = 1; k <= points; ++k) {
    for (double sign : {-1.0, 1.0}) {
      const double f = f0 + sign * static_cast<double>(k) * step;
      if (!(f > 0.0)) continue;
      const double period = 1.0 / f;
      if (period < tune.min_period || period > tune.max_period) continue;
      const double value = objective(period);
      if (value > seed.score) {
        seed.score = value;
        seed.period = period;
      }
    }
  }
  return seed;
}

// Scores every seed with `objective` (larger is better) on a coarse grid,
// then grid-searches around the `limit` best seeds that are not within the
// search spacing of a better one. A limit of 0 searches around every seed.
template <typename Objective>
void tune_group(Objective&& objective, std::vector<PeriodCandidate> seeds,
                const FineTuneConfig& tune, std::size_t limit, std::size_t points,
                double step, std::vector<PeriodCandidate>& out) {
  std::vector<PeriodCandidate> scored;
  scored.reserve(seeds.size());
  for (const auto& s : seeds) {
    scored.push_back(limit == 0 ? s : coarse_score(objective, s, tune, points, step));
  }
  std::vector<char> search(seeds.size(), limit == 0 ? 1 : 0);
  if (limit != 0) {
    std::vector<std::size_t> order(seeds.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return scored[a].score > scored[b].score;
    });
    std::vector<double> chosen;
    for (std::size_t i : order) {
      if (chosen.size() == limit) break;
      const double p = seeds[i].period;
      const bool covered = std::any_of(chosen.begin(), chosen.end(), [&](double c) {
        return std::abs(p - c) <= std::min(kSearchSpacing * c, tune.half_width);
      });
      if (covered) continue;
      chosen.push_back(p);
      search[i] = 1;
    }
  }
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!search[i]) {
      out.push_back(scored[i]);
      continue;
    }
    PeriodCandidate best = fine_tune_with(objective, seeds[i], tune);
    if (scored[i].score > best.score) best = scored[i];
    out.push_back(best);
  }
}

// Fine-tunes seeds on their window's curve. Scores are Q (ip), Theta (aov)
// or the string length T (sllk, smaller is better).
inline std::vector<PeriodCandidate> tune_seeds(
    const std::vector<AnalysisWindow>& windows, const std::vector<PeriodCandidate>& seeds,
    Discriminator discriminator, const PipelineConfig& config) {
  const FineTuneConfig tune = config.fine_tune_config();
  std::vector<PeriodCandidate> tuned;
  const bool shared_sigma = config.discrimination_sigma.has_value();
  const auto work = (discriminator != Discriminator::ip || shared_sigma)
                        ? distinct_seeds(seeds, config.dedup_tolerance)
                        : seeds;

  for (const auto& window : windows) {
    std::vector<PeriodCandidate> mine;
    for (const auto& s : work) {
      if (s.window == window.tag) mine.push_back(s);
    }
    if (mine.empty()) continue;
    const std::size_t points = config.prescreen_points;
    const double step = config.prescreen_step / window.curve.time_span();

    if (discriminator == Discriminator::ip) {
      // Group by the kernel size that scores each seed.
      std::map<double, std::vector<PeriodCandidate>> groups;
      for (const auto& s : mine) {
        const double sigma = shared_sigma     ? *config.discrimination_sigma
                             : s.kernel_sigma ? *s.kernel_sigma
                                              : config.hybrid_sigma;
        groups[sigma].push_back(s);
      }
      for (auto& [sigma, group] : groups) {
        QMetricEvaluator q(window.curve, KernelConfig(sigma), config.binning);
        tune_group(q, std::move(group), tune, config.fine_tune_limit, points, step, tuned);
      }
    } else if (discriminator == Discriminator::aov) {
      AovEvaluator aov(window.curve, config.binning);
      const auto objective = [&](double p) {
        try {
          return aov(p);
        } catch (const InvalidParameterError&) {
          return 0.0;
        }
      };
      tune_group(objective, std::move(mine), tune, config.fine_tune_limit, points, step,
                 tuned);
    } else {
      SllkEvaluator sllk(window.curve);
      const auto objective = [&](double p) { return -sllk(p); };
      const std::size_t first = tuned.size();
      tune_group(objective, std::move(mine), tune, config.fine_tune_limit, points, step,
                 tuned);
      for (std::size_t i = first; i < tuned.size(); ++i) tuned[i].score = -tuned[i].score;
    }
  }
  return tuned;
}

inline void finish(EstimationReport& report, std::vector<PeriodCandidate> tuned,
                   double tolerance, bool larger_is_better) {
  if (tuned.empty()) {
    throw EmptyReportError("no candidate period inside the search band for '" +
                           report.curve_id + "'");
  }
  report.candidates = deduplicate(std::move(tuned), tolerance, larger_is_better);
  report.best = report.candidates.front();
}

}  // namespace detail

/// Runs `method` on a raw (unnormalized) curve of at least 50 samples.
inline EstimationReport estimate_with_method(const LightCurve& curve, Method method,
                                             const PipelineConfig& config = {}) {
  config.validate();
  if (curve.size() < 50) {
    throw InsufficientDataError("period estimation needs at least 50 samples");
  }
  EstimationReport report;
  report.curve_id = curve.id();
  report.method = method;
  report.samples_in = curve.size();
  detail::StageClock clock(report);

  const LightCurve normalized = normalize(curve);
  report.samples_used = normalized.size();
  clock.lap("normalize");

  using detail::Discriminator;
  switch (method) {
    case Method::correntropy_ip:
    case Method::correntropy_aov:
    case Method::correntropy_sllk:
    case Method::correlation_ip: {
      const auto windows = detail::analysis_windows(normalized, config);
      clock.lap("windows");
      const bool correntropy = method != Method::correlation_ip;
      for (const auto& w : windows) detail::spectral_seeds(w, correntropy, config, report);
      clock.lap("spectra");
      const Discriminator d = method == Method::correntropy_aov    ? Discriminator::aov
                              : method == Method::correntropy_sllk ? Discriminator::sllk
                                                                   : Discriminator::ip;
      PipelineConfig tuning = config;
      if (method == Method::correlation_ip) tuning.discrimination_sigma = config.hybrid_sigma;
      auto tuned = detail::tune_seeds(windows, report.seeds, d, tuning);
      clock.lap("fine-tune");
      detail::finish(report, std::move(tuned), config.dedup_tolerance,
                     d != Discriminator::sllk);
      break;
    }
    case Method::lomb_scargle:
    case Method::lomb_scargle_ip: {
      report.windows.push_back({WindowTag::full, normalized.size(),
                                normalized.times().front(), normalized.time_span(), 0.0});
      const Spectrum ls = lomb_scargle(
          normalized, lomb_scargle_grid(normalized, config.period_min, config.period_max,
                                        config.ls_oversampling));
      const PeakSet peaks =
          extract_peaks(ls, config.n_peaks, config.period_min, config.period_max);
      for (std::size_t r = 0; r < peaks.entries.size(); ++r) {
        PeriodCandidate c;
        c.period = c.seed_period = peaks.entries[r].period;
        c.score = peaks.entries[r].power;
        c.origin = CandidateOrigin::ls_peak;
        c.rank = r;
        report.seeds.push_back(c);
      }
      clock.lap("lomb-scargle");
      if (method == Method::lomb_scargle) {
        detail::finish(report, report.seeds, config.dedup_tolerance, true);
      } else {
        PipelineConfig tuning = config;
        tuning.discrimination_sigma = config.hybrid_sigma;
        auto tuned = detail::tune_seeds({{WindowTag::full, normalized}},
                                        report.seeds,
                                        Discriminator::ip, tuning);
        clock.lap("fine-tune");
        detail::finish(report, std::move(tuned), config.dedup_tolerance, true);
      }
      break;
    }
    case Method::aov:
    case Method::sllk:
    case Method::sllk_ip: {
      report.windows.push_back({WindowTag::full, normalized.size(),
                                normalized.times().front(), normalized.time_span(), 0.0});
      const bool aov = method == Method::aov;
      report.seeds = scan_extremum(normalized, config.scan_grid(),
                                   aov ? ScanStatistic::aov_max : ScanStatistic::sllk_min,
                                   config.n_peaks, Binning::fixed(config.aov_bins));
      clock.lap("scan");
      if (method != Method::sllk_ip) {
        detail::finish(report, report.seeds, config.dedup_tolerance, aov);
      } else {
        PipelineConfig tuning = config;
        tuning.discrimination_sigma = config.hybrid_sigma;
        auto tuned = detail::tune_seeds({{WindowTag::full, normalized}},
                                        report.seeds,
                                        Discriminator::ip, tuning);
        clock.lap("fine-tune");
        detail::finish(report, std::move(tuned), config.dedup_tolerance, true);
      }
      break;
    }
  }
  return report;
}

/// Slotted correntropy + IP.
inline EstimationReport estimate_period(const LightCurve& curve,
                                        const PipelineConfig& config = {}) {
  return estimate_with_method(curve, Method::correntropy_ip, config);
}

}  // namespace corrperiod

#endif  // CORRPERIOD_PIPELINE_HPP_
