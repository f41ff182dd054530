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

#ifndef CORRPERIOD_BASELINES_HPP_
#define CORRPERIOD_BASELINES_HPP_

///
/// Classical period searches: the Lomb-Scargle periodogram, the
/// analysis-of-variance statistic on a binned fold, and the Lafler-Kinman
/// string length.
///

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrperiod/binning.hpp"
#include "corrperiod/candidate.hpp"
#include "corrperiod/error.hpp"
#include "corrperiod/lightcurve.hpp"
#include "corrperiod/spectral.hpp"

namespace corrperiod {

/// Trial periods min_period + i * step, i = 0 .. size() - 1.
struct PeriodGrid {
  double min_period = 0.2;
  double max_period = 200.0;
  double step = 1e-3;

  void validate() const {
    if (!(min_period > 0.0) || !(max_period > min_period) || !(step > 0.0)) {
      throw InvalidParameterError("invalid period grid");
    }
  }
  std::size_t size() const {
    return static_cast<std::size_t>(
               std::floor((max_period - min_period) / step + 1e-9)) + 1;
  }
  double period(std::size_t i) const {
    return min_period + static_cast<double>(i) * step;
  }
};

/// Uniform frequency grid in cycles/day.
struct FrequencyGrid {
  double min_frequency = 0.0;
  double step = 0.0;
  std::size_t count = 0;

  double frequency(std::size_t i) const {
    return min_frequency + static_cast<double>(i) * step;
  }
};

/// Frequencies 1/max_period .. 1/min_period spaced 1/(oversampling * T).
inline FrequencyGrid lomb_scargle_grid(const LightCurve& curve,
                                       double min_period, double max_period,
                                       double oversampling = 5.0) {
  if (!(min_period > 0.0) || !(max_period > min_period) ||
      !(oversampling > 0.0)) {
    throw InvalidParameterError("invalid Lomb-Scargle grid");
  }
  FrequencyGrid grid;
  grid.min_frequency = 1.0 / max_period;
  grid.step = 1.0 / (oversampling * curve.time_span());
  const double f_max = 1.0 / min_period;
  grid.count = static_cast<std::size_t>(
                   std::floor((f_max - grid.min_frequency) / grid.step + 1e-9)) + 1;
  return grid;
}

namespace detail {

struct LsSums {
  double yc = 0.0, ys = 0.0, cc = 0.0, ss = 0.0;
};

inline double ls_power(const LsSums& s, double variance, std::size_t n) {
  const double tiny = 1e-12 * static_cast<double>(n);
  if (!(variance > 0.0) || s.cc < tiny || s.ss < tiny) return 0.0;
  return 0.5 * (s.yc * s.yc / s.cc + s.ys * s.ys / s.ss) / variance;
}

inline std::vector<double> centered(std::span<const double> x, double& variance) {
  std::vector<double> y(x.begin(), x.end());
  const double mean = sample_mean(y);
  double ss = 0.0;
  for (double& v : y) {
    v -= mean;
    ss += v * v;
  }
  variance = ss / static_cast<double>(y.size() - 1);
  return y;
}

// Sums at angular frequency omega given cos/sin of omega * t per sample.
inline LsSums ls_sums(std::span<const double> y, std::span<const double> c,
                      std::span<const double> s) {
  double c2 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    c2 += c[i] * c[i] - s[i] * s[i];
    s2 += 2.0 * s[i] * c[i];
  }
  // tan(2 omega tau) = sum sin(2 omega t) / sum cos(2 omega t)
  const double two_wt = std::atan2(s2, c2);
  const double ct = std::cos(0.5 * two_wt);
  const double st = std::sin(0.5 * two_wt);
  LsSums sums;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double cos_arg = c[i] * ct + s[i] * st;  // cos(w(t - tau))
    const double sin_arg = s[i] * ct - c[i] * st;  // sin(w(t - tau))
    sums.yc += y[i] * cos_arg;
    sums.ys += y[i] * sin_arg;
    sums.cc += cos_arg * cos_arg;
    sums.ss += sin_arg * sin_arg;
  }
  return sums;
}

}  // namespace detail

/// Normalized Lomb-Scargle power at arbitrary frequencies (cycles/day),
/// evaluated directly.
inline Spectrum lomb_scargle(const LightCurve& curve,
                             std::span<const double> frequencies) {
  double variance = 0.0;
  const auto y = detail::centered(curve.magnitudes(), variance);
  const auto t = curve.times();
  const std::size_t n = curve.size();
  std::vector<double> c(n), s(n);
  Spectrum out;
  out.kind = SpectrumKind::lomb_scargle;
  out.frequencies.assign(frequencies.begin(), frequencies.end());
  out.powers.resize(frequencies.size());
  for (std::size_t q = 0; q < frequencies.size(); ++q) {
    if (!(frequencies[q] > 0.0)) {
      throw InvalidParameterError("Lomb-Scargle frequencies must be positive");
    }
    const double w = 2.0 * std::numbers::pi * frequencies[q];
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = std::cos(w * t[i]);
      s[i] = std::sin(w * t[i]);
    }
    out.powers[q] = detail::ls_power(detail::ls_sums(y, c, s), variance, n);
  }
  out.raw = out.powers;
  return out;
}

/// Lomb-Scargle on a uniform grid. The per-sample phasors advance by a
/// rotation each step and are recomputed exactly every 128 steps.
inline Spectrum lomb_scargle(const LightCurve& curve, const FrequencyGrid& grid) {
  if (!(grid.min_frequency > 0.0) || !(grid.step > 0.0) || grid.count == 0) {
    throw InvalidParameterError("invalid Lomb-Scargle grid");
  }
  double variance = 0.0;
  const auto y = detail::centered(curve.magnitudes(), variance);
  const auto t = curve.times();
  const std::size_t n = curve.size();
  std::vector<double> c(n), s(n), dc(n), ds(n);
  for (std::size_t i = 0; i < n; ++i) {
    dc[i] = std::cos(2.0 * std::numbers::pi * grid.step * t[i]);
    ds[i] = std::sin(2.0 * std::numbers::pi * grid.step * t[i]);
  }
  Spectrum out;
  out.kind = SpectrumKind::lomb_scargle;
  out.frequencies.resize(grid.count);
  out.powers.resize(grid.count);
  for (std::size_t q = 0; q < grid.count; ++q) {
    const double f = grid.frequency(q);
    out.frequencies[q] = f;
    if (q % 128 == 0) {
      const double w = 2.0 * std::numbers::pi * f;
      for (std::size_t i = 0; i < n; ++i) {
        c[i] = std::cos(w * t[i]);
        s[i] = std::sin(w * t[i]);
      }
    }
    out.powers[q] = detail::ls_power(detail::ls_sums(y, c, s), variance, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double cn = c[i] * dc[i] - s[i] * ds[i];
      s[i] = s[i] * dc[i] + c[i] * ds[i];
      c[i] = cn;
    }
  }
  out.raw = out.powers;
  return out;
}

/// Returned by aov_statistic when the within-bin variance vanishes.
inline constexpr double kAovPerfectFit = std::numeric_limits<double>::max();

namespace detail {

inline double aov_from_bins(std::span<const double> magnitudes,
                            std::span<const std::size_t> bin_of_sample,
                            std::size_t bins) {
  const std::size_t n = magnitudes.size();
  std::vector<double> sum(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum[bin_of_sample[i]] += magnitudes[i];
    ++count[bin_of_sample[i]];
    total += magnitudes[i];
  }
  const double mean = total / static_cast<double>(n);
  std::size_t occupied = 0;
  double between = 0.0;
  for (std::size_t h = 0; h < bins; ++h) {
    if (count[h] == 0) continue;
    ++occupied;
    sum[h] /= static_cast<double>(count[h]);  // now the bin mean
    const double d = sum[h] - mean;
    between += static_cast<double>(count[h]) * d * d;
  }
  if (occupied < 2 || n <= occupied) {
    throw InvalidParameterError("AoV needs at least 2 occupied bins");
  }
  double within = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = magnitudes[i] - sum[bin_of_sample[i]];
    within += d * d;
  }
  const double s1 = between / static_cast<double>(occupied - 1);
  const double s2 = within / static_cast<double>(n - occupied);
  if (!(s2 > 0.0)) return kAovPerfectFit;
  return s1 / s2;
}

}  // namespace detail

/// One-way AoV ratio s1^2 / s2^2 over the phase bins of a fold; larger
/// means a better period. Empty bins are ignored.
class AovEvaluator {
 public:
  AovEvaluator(const LightCurve& curve, const Binning& binning)
      : binning_(binning),
        buffer_(curve.times(), curve.magnitudes()),
        times_(curve.times().begin(), curve.times().end()),
        bin_of_(curve.size()) {
    if (!binning_.is_dynamic()) fixed_ = fixed_partition(binning_.fixed_bins());
  }

  double operator()(double period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
      throw InvalidParameterError("trial period must be positive");
    }
    if (!binning_.is_dynamic()) {
      // Fixed bins need no sorting.
      const std::size_t bins = fixed_.bin_count();
      for (std::size_t i = 0; i < times_.size(); ++i) {
        bin_of_[i] = fixed_.bin_of(fold_phase(times_[i], period));
      }
      return detail::aov_from_bins(buffer_.raw_magnitudes(), bin_of_, bins);
    }
    buffer_.fold(period);
    const BinPartition partition =
        partition_phases(buffer_.phases(), buffer_.magnitudes(), binning_);
    const auto starts = bin_starts(buffer_.phases(), partition);
    for (std::size_t h = 0; h + 1 < starts.size(); ++h) {
      for (std::size_t k = starts[h]; k < starts[h + 1]; ++k) bin_of_[k] = h;
    }
    return detail::aov_from_bins(buffer_.magnitudes(), bin_of_,
                                 partition.bin_count());
  }

 private:
  Binning binning_;
  detail::FoldBuffer buffer_;
  std::vector<double> times_;
  std::vector<std::size_t> bin_of_;
  BinPartition fixed_;
};

inline double aov_statistic(const LightCurve& curve, double period,
                            const Binning& binning = Binning::fixed(10)) {
  AovEvaluator evaluate(curve, binning);
  return evaluate(period);
}

/// Lafler-Kinman string length
///   T(P) = sum_i (x_(i+1) - x_(i))^2 / sum_i (x_i - mean)^2
/// over the phase-sorted fold, closing the string from the last sample back
/// to the first. Small T means a smooth fold.
class SllkEvaluator {
 public:
  explicit SllkEvaluator(const LightCurve& curve)
      : times_(curve.times().begin(), curve.times().end()),
        magnitudes_(curve.magnitudes().begin(), curve.magnitudes().end()),
        order_(curve.size()),
        phases_(curve.size()) {
    if (curve.size() < 3) {
      throw InsufficientDataError("string length needs at least 3 samples");
    }
    const double mean = detail::sample_mean(magnitudes_);
    for (double x : magnitudes_) denominator_ += (x - mean) * (x - mean);
    if (!(denominator_ > 0.0)) {
      throw DegenerateCurveError("string length of constant magnitudes");
    }
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  }

  double operator()(double period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
      throw InvalidParameterError("trial period must be positive");
    }
    sort_by_phase(period);
    const std::size_t n = order_.size();
    double length = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = magnitudes_[order_[(k + 1) % n]] - magnitudes_[order_[k]];
      length += d * d;
    }
    return length / denominator_;
  }

 private:
  // Starts from the previous order: neighbouring trial periods give nearly
  // sorted input, where insertion sort is cheap. Bails out to std::sort when
  // it is not.
  void sort_by_phase(double period) {
    const std::size_t n = order_.size();
    for (std::size_t i = 0; i < n; ++i) {
      phases_[i] = fold_phase(times_[i], period);
    }
    const auto less = [&](std::size_t a, std::size_t b) {
      return phases_[a] < phases_[b] || (phases_[a] == phases_[b] && a < b);
    };
    std::size_t budget = 8 * n;
    bool finished = true;
    for (std::size_t i = 1; i < n && finished; ++i) {
      const std::size_t v = order_[i];
      std::size_t j = i;
      while (j > 0 && less(v, order_[j - 1])) {
        order_[j] = order_[j - 1];
        --j;
        if (--budget == 0) {
          finished = false;
          break;
        }
      }
      order_[j] = v;
    }
    if (!finished) std::sort(order_.begin(), order_.end(), less);
  }

  std::vector<double> times_;
  std::vector<double> magnitudes_;
  std::vector<std::size_t> order_;
  std::vector<double> phases_;
  double denominator_ = 0.0;
};

inline double sllk_string_length(const LightCurve& curve, double period) {
  SllkEvaluator evaluate(curve);
  return evaluate(period);
}

enum class ScanStatistic { aov_max, sllk_min };

inline std::string_view to_string(ScanStatistic s) {
  return s == ScanStatistic::aov_max ? "aov" : "sllk";
}

/// Statistic value at every grid period.
struct StatisticCurve {
  ScanStatistic statistic = ScanStatistic::aov_max;
  std::vector<double> periods;
  std::vector<double> values;
};

inline StatisticCurve scan_statistic(const LightCurve& curve,
                                     const PeriodGrid& grid,
                                     ScanStatistic statistic,
                                     const Binning& binning = Binning::fixed(10)) {
  grid.validate();
  StatisticCurve out;
  out.statistic = statistic;
  const std::size_t total = grid.size();
  out.periods.resize(total);
  out.values.resize(total);
  if (statistic == ScanStatistic::aov_max) {
    AovEvaluator evaluate(curve, binning);
    for (std::size_t i = 0; i < total; ++i) {
      out.periods[i] = grid.period(i);
      try {
        out.values[i] = evaluate(out.periods[i]);
      } catch (const InvalidParameterError&) {
        out.values[i] = 0.0;  // fewer than 2 occupied bins
      }
    }
  } else {
    SllkEvaluator evaluate(curve);
    for (std::size_t i = 0; i < total; ++i) {
      out.periods[i] = grid.period(i);
      out.values[i] = evaluate(out.periods[i]);
    }
  }
  return out;
}

/// The `n` best local extrema of a statistic curve, best first (largest
/// AoV, smallest string length). Falls back to the global extremum when
/// the curve has no interior extremum.
inline std::vector<PeriodCandidate> best_extrema(const StatisticCurve& scan,
                                                 std::size_t n) {
  const bool maximize = scan.statistic == ScanStatistic::aov_max;
  const auto better = [&](double a, double b) { return maximize ? a > b : a < b; };
  const auto& v = scan.values;
  std::vector<std::size_t> picks;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (better(v[i], v[i - 1]) && better(v[i], v[i + 1])) picks.push_back(i);
  }
  if (picks.empty() && !v.empty()) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (better(v[i], v[arg])) arg = i;
    }
    picks.push_back(arg);
  }
  std::stable_sort(picks.begin(), picks.end(),
                   [&](std::size_t a, std::size_t b) { return better(v[a], v[b]); });
  if (picks.size() > n) picks.resize(n);

  std::vector<PeriodCandidate> out;
  for (std::size_t r = 0; r < picks.size(); ++r) {
    PeriodCandidate c;
    c.period = scan.periods[picks[r]];
    c.seed_period = c.period;
    c.score = v[picks[r]];
    c.origin = maximize ? CandidateOrigin::aov_extremum
                        : CandidateOrigin::sllk_string;
    c.rank = r;
    out.push_back(c);
  }
  return out;
}

inline std::vector<PeriodCandidate> scan_extremum(
    const LightCurve& curve, const PeriodGrid& grid, ScanStatistic statistic,
    std::size_t n, const Binning& binning = Binning::fixed(10)) {
  if (n < 1) throw InvalidParameterError("candidate count must be >= 1");
  return best_extrema(scan_statistic(curve, grid, statistic, binning), n);
}

}  // namespace corrperiod

#endif  // CORRPERIOD_BASELINES_HPP_
