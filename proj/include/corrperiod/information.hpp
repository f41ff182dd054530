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

#ifndef CORRPERIOD_INFORMATION_HPP_
#define CORRPERIOD_INFORMATION_HPP_

///
/// Information potential and the bin-IP discrimination metric.
///
/// IP({x}) = 1/n^2 sum_i sum_j G(x_i - x_j) is the Parzen estimate of the
/// quadratic entropy argument (-log IP is Renyi's quadratic entropy). For a
/// trial period the curve is folded and binned, and
///
///   Q(P) = 1/H sum_h (IP(bin h) - IP(all))^2
///
/// is large when the bins carry information the whole curve does not.
///

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "corrperiod/binning.hpp"
#include "corrperiod/candidate.hpp"
#include "corrperiod/error.hpp"
#include "corrperiod/kernel.hpp"
#include "corrperiod/lightcurve.hpp"

namespace corrperiod {

namespace detail {

// Beyond this many kernel widths exp() underflows to zero, so skipping those
// pairs leaves every term unchanged.
inline constexpr double kKernelReach = 38.7;

// sum_i sum_j exp(scale (x_i - x_j)^2) for ascending `sorted`.
inline double sorted_pair_sum(std::span<const double> sorted, double scale,
                              double reach) {
  const std::size_t n = sorted.size();
  double off_diagonal = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = sorted[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = sorted[j] - xi;
      if (d > reach) break;
      off_diagonal += std::exp(d * d * scale);
    }
  }
  return static_cast<double>(n) + 2.0 * off_diagonal;
}

}  // namespace detail

inline double information_potential(std::span<const double> values,
                                    const KernelConfig& config) {
  if (values.empty()) {
    throw InvalidParameterError("information potential of an empty set");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  return config.peak() *
         detail::sorted_pair_sum(sorted, config.exponent_scale(),
                                 detail::kKernelReach * config.sigma()) /
         (n * n);
}

/// Evaluates Q for many trial periods of one curve, reusing the global IP
/// and scratch buffers. For curves up to kMatrixLimit samples the kernel
/// values of every magnitude pair are tabulated once, so each evaluation is
/// table lookups. Not safe to share between threads.
class QMetricEvaluator {
 public:
  static constexpr std::size_t kMatrixLimit = 4096;

  QMetricEvaluator(const LightCurve& curve, const KernelConfig& kernel,
                   const Binning& binning)
      : kernel_(kernel),
        binning_(binning),
        buffer_(curve.times(), curve.magnitudes()),
        global_ip_(information_potential(curve.magnitudes(), kernel)) {
    const std::size_t n = curve.size();
    if (n > kMatrixLimit) return;
    const auto x = curve.magnitudes();
    std::vector<std::uint32_t> by_value(n);
    for (std::size_t i = 0; i < n; ++i) by_value[i] = static_cast<std::uint32_t>(i);
    std::stable_sort(by_value.begin(), by_value.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return x[a] < x[b]; });
    rank_.resize(n);
    for (std::size_t r = 0; r < n; ++r) rank_[by_value[r]] = static_cast<std::uint32_t>(r);
    // Row r holds exp(scale (x_(c) - x_(r))^2) for c > r.
    row_start_.resize(n);
    table_.resize(n * (n - 1) / 2);
    const double scale = kernel_.exponent_scale();
    std::size_t at = 0;
    for (std::size_t r = 0; r < n; ++r) {
      row_start_[r] = at - (r + 1);
      const double xr = x[by_value[r]];
      for (std::size_t c = r + 1; c < n; ++c) {
        const double d = x[by_value[c]] - xr;
        table_[at++] = std::exp(d * d * scale);
      }
    }
  }

  double global_ip() const noexcept { return global_ip_; }
  const KernelConfig& kernel() const noexcept { return kernel_; }

  double operator()(double period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
      throw InvalidParameterError("trial period must be positive");
    }
    buffer_.fold(period);
    const BinPartition partition =
        partition_phases(buffer_.phases(), buffer_.magnitudes(), binning_);
    return score(partition);
  }

  /// Q for the current fold under an explicit partition.
  double score(const BinPartition& partition) {
    const auto starts = bin_starts(buffer_.phases(), partition);
    double sum = 0.0;
    std::size_t kept = 0;
    for (std::size_t h = 0; h + 1 < starts.size(); ++h) {
      const std::size_t count = starts[h + 1] - starts[h];
      if (count < 2) continue;
      const double n = static_cast<double>(count);
      const double ip = kernel_.peak() * bin_pair_sum(starts[h], starts[h + 1]) / (n * n);
      sum += (ip - global_ip_) * (ip - global_ip_);
      ++kept;
    }
    return kept == 0 ? 0.0 : sum / static_cast<double>(kept);
  }

  /// The last fold (phase-sorted), for diagnostics.
  std::span<const double> folded_phases() const { return buffer_.phases(); }
  std::span<const double> folded_magnitudes() const {
    return buffer_.magnitudes();
  }

 private:
  // Unnormalized double sum over folded samples [first, last).
  double bin_pair_sum(std::size_t first, std::size_t last) {
    const std::size_t m = last - first;
    if (table_.empty()) {
      const auto mags = buffer_.magnitudes();
      values_.assign(mags.begin() + static_cast<long>(first),
                     mags.begin() + static_cast<long>(last));
      std::sort(values_.begin(), values_.end());
      return detail::sorted_pair_sum(values_, kernel_.exponent_scale(),
                                     detail::kKernelReach * kernel_.sigma());
    }
    const auto order = buffer_.order();
    ranks_.resize(m);
    for (std::size_t k = 0; k < m; ++k) ranks_[k] = rank_[order[first + k]];
    std::sort(ranks_.begin(), ranks_.end());
    double off_diagonal = 0.0;
    for (std::size_t a = 0; a + 1 < m; ++a) {
      const double* row = table_.data() + row_start_[ranks_[a]];
      for (std::size_t b = a + 1; b < m; ++b) off_diagonal += row[ranks_[b]];
    }
    return static_cast<double>(m) + 2.0 * off_diagonal;
  }

  KernelConfig kernel_;
  Binning binning_;
  detail::FoldBuffer buffer_;
  double global_ip_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::size_t> row_start_;
  std::vector<double> table_;
  std::vector<std::uint32_t> ranks_;
  std::vector<double> values_;
};

/// Q(P): folds, bins the raw folded magnitudes and averages the squared
/// IP deviation of bins holding at least 2 samples. Returns 0 when no bin
/// qualifies.
inline double q_metric(const LightCurve& curve, double period,
                       const KernelConfig& kernel, const Binning& binning) {
  QMetricEvaluator evaluate(curve, kernel, binning);
  return evaluate(period);
}

struct FineTuneConfig {
  double half_width = 0.5;
  double step = 1e-3;
  /// Absolute lower bound of the search interval.
  double floor_period = 0.05;
  /// Search band; the interval is clipped to it.
  double min_period = 0.0;
  double max_period = std::numeric_limits<double>::infinity();
};

/// Grid search of `objective` (larger is better) over seed +- half_width,
/// with the lower end raised to max(floor_period, seed / 2). Grid points
/// are seed + i * step, so the seed itself is always evaluated when inside
/// the band. Ties go to the point nearest the seed.
template <typename Objective>
PeriodCandidate fine_tune_with(Objective&& objective,
                               const PeriodCandidate& seed,
                               const FineTuneConfig& config = {}) {
  if (!(seed.period > 0.0)) {
    throw InvalidParameterError("seed period must be positive");
  }
  if (!(config.step > 0.0) || !(config.half_width >= 0.0)) {
    throw InvalidParameterError("invalid fine-tune grid");
  }
  const double p = seed.period;
  const double lower = std::max({p - config.half_width, config.floor_period,
                                 0.5 * p, config.min_period});
  const double upper = std::min(p + config.half_width, config.max_period);
  const long first = static_cast<long>(std::ceil((lower - p) / config.step - 1e-9));
  const long last = static_cast<long>(std::floor((upper - p) / config.step + 1e-9));

  PeriodCandidate best = seed;
  best.seed_period = p;
  bool have = false;
  long best_offset = 0;
  for (long i = first; i <= last; ++i) {
    const double period = p + static_cast<double>(i) * config.step;
    if (!(period > 0.0)) continue;
    const double value = objective(period);
    const bool closer = std::labs(i) < std::labs(best_offset) ||
                        (std::labs(i) == std::labs(best_offset) && i < best_offset);
    if (!have || value > best.score || (value == best.score && closer)) {
      have = true;
      best.period = period;
      best.score = value;
      best_offset = i;
    }
  }
  if (!have) best.score = objective(p);
  return best;
}

/// Fine-tunes a seed period by maximizing Q.
inline PeriodCandidate fine_tune(const LightCurve& curve,
                                 const PeriodCandidate& seed,
                                 const KernelConfig& kernel,
                                 const Binning& binning,
                                 const FineTuneConfig& config = {}) {
  QMetricEvaluator evaluate(curve, kernel, binning);
  return fine_tune_with(evaluate, seed, config);
}

}  // namespace corrperiod

#endif  // CORRPERIOD_INFORMATION_HPP_
