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

#ifndef CORRPERIOD_SLOTTED_HPP_
#define CORRPERIOD_SLOTTED_HPP_

///
/// Lagged estimators for irregularly sampled series. Pair time differences
/// are assigned to lag slots k * slot_size (slot half-width slot_size / 2,
/// exclusive); each slot averages a pair statistic over its members:
///
///   V[k] = sum_{i,j} s(x_i, x_j) B_k(t_i, t_j) / sum_{i,j} B_k(t_i, t_j)
///
/// with s = Gaussian kernel of x_i - x_j (correntropy) or x_i * x_j
/// (correlation). All ordered pairs are used, including i == j.
///

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "corrperiod/error.hpp"
#include "corrperiod/kernel.hpp"
#include "corrperiod/lightcurve.hpp"

namespace corrperiod {

enum class SlottedKind { correntropy, correlation };

/// Estimator values on the lag grid k * slot_size, k = 0 .. last_slot().
struct SlottedSeries {
  double slot_size = 0.0;
  double max_lag = 0.0;
  SlottedKind kind = SlottedKind::correntropy;
  std::vector<double> values;
  /// Contributing ordered pairs per slot. Zero marks an interpolated slot.
  std::vector<std::size_t> counts;

  std::size_t last_slot() const noexcept { return values.size() - 1; }
  double lag(std::size_t k) const noexcept {
    return static_cast<double>(k) * slot_size;
  }
};

/// 1 iff |(t_i - t_j) - k * slot_size| < slot_size / 2.
inline bool slot_indicator(double t_i, double t_j, long k, double slot_size) {
  return std::abs((t_i - t_j) - static_cast<double>(k) * slot_size) <
         0.5 * slot_size;
}

/// Index of the last slot, round(max_lag / slot_size).
inline std::size_t slot_count_for(double slot_size, double max_lag) {
  if (!(slot_size > 0.0) || !std::isfinite(slot_size)) {
    throw InvalidParameterError("slot size must be positive");
  }
  if (!(max_lag >= slot_size) || !std::isfinite(max_lag)) {
    throw InvalidParameterError("maximum lag must be at least one slot");
  }
  return static_cast<std::size_t>(std::lround(max_lag / slot_size));
}

/// Sample pairs grouped by lag slot. Building this once lets several kernel
/// sizes share the O(N^2) pair enumeration.
class SlotPairs {
 public:
  SlotPairs(const LightCurve& curve, double slot_size, double max_lag)
      : slot_size_(slot_size), max_lag_(max_lag) {
    const std::size_t last = slot_count_for(slot_size, max_lag);
    const auto t = curve.times();
    const auto x = curve.magnitudes();
    const std::size_t n = curve.size();
    // Pairs with t_i - t_j beyond this cannot fall in any slot.
    const double reach = (static_cast<double>(last) + 0.5) * slot_size;

    struct Member {
      std::size_t slot, i, j;
    };
    std::vector<Member> members;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = j; i < n && t[i] - t[j] < reach; ++i) {
        const double d = t[i] - t[j];
        const long centre = static_cast<long>(std::floor(d / slot_size + 0.5));
        for (long k = centre - 1; k <= centre + 1; ++k) {
          if (k < 0 || k > static_cast<long>(last)) continue;
          if (!slot_indicator(t[i], t[j], k, slot_size)) continue;
          members.push_back({static_cast<std::size_t>(k), i, j});
          // The mirrored pair (j, i) has a negative difference and can only
          // land in slot 0.
          if (k == 0 && i != j && slot_indicator(t[j], t[i], 0, slot_size)) {
            members.push_back({0, j, i});
          }
          break;
        }
      }
    }

    offsets_.assign(last + 2, 0);
    for (const Member& m : members) ++offsets_[m.slot + 1];
    for (std::size_t k = 0; k <= last; ++k) offsets_[k + 1] += offsets_[k];
    differences_.resize(members.size());
    products_.resize(members.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Member& m : members) {
      const std::size_t at = cursor[m.slot]++;
      differences_[at] = x[m.i] - x[m.j];
      products_[at] = x[m.i] * x[m.j];
    }
  }

  double slot_size() const noexcept { return slot_size_; }
  double max_lag() const noexcept { return max_lag_; }
  std::size_t slot_total() const noexcept { return offsets_.size() - 1; }
  std::size_t count(std::size_t k) const noexcept {
    return offsets_[k + 1] - offsets_[k];
  }
  /// x_i - x_j for the ordered pairs of slot k.
  std::span<const double> differences(std::size_t k) const noexcept {
    return std::span<const double>(differences_).subspan(offsets_[k], count(k));
  }
  /// x_i * x_j for the ordered pairs of slot k.
  std::span<const double> products(std::size_t k) const noexcept {
    return std::span<const double>(products_).subspan(offsets_[k], count(k));
  }

 private:
  double slot_size_;
  double max_lag_;
  std::vector<std::size_t> offsets_;
  std::vector<double> differences_;
  std::vector<double> products_;
};

namespace detail {

// Empty slots take the linear interpolation of the nearest populated
// neighbours; leading and trailing runs copy the nearest populated value.
inline void fill_empty_slots(std::vector<double>& values,
                             const std::vector<std::size_t>& counts) {
  const std::size_t n = values.size();
  std::size_t prev = n;  // last populated slot seen
  for (std::size_t k = 0; k < n; ++k) {
    if (counts[k] == 0) continue;
    if (prev == n) {
      for (std::size_t m = 0; m < k; ++m) values[m] = values[k];
    } else if (k > prev + 1) {
      const double span = static_cast<double>(k - prev);
      for (std::size_t m = prev + 1; m < k; ++m) {
        const double w = static_cast<double>(m - prev) / span;
        values[m] = (1.0 - w) * values[prev] + w * values[k];
      }
    }
    prev = k;
  }
  if (prev == n) throw InsufficientPairsError("every lag slot is empty");
  for (std::size_t m = prev + 1; m < n; ++m) values[m] = values[prev];
}

template <typename PairStatistic>
SlottedSeries slot_average(const SlotPairs& pairs, SlottedKind kind,
                           PairStatistic&& statistic) {
  SlottedSeries series;
  series.slot_size = pairs.slot_size();
  series.max_lag = pairs.max_lag();
  series.kind = kind;
  const std::size_t total = pairs.slot_total();
  series.values.assign(total, 0.0);
  series.counts.assign(total, 0);
  for (std::size_t k = 0; k < total; ++k) {
    const std::size_t count = pairs.count(k);
    series.counts[k] = count;
    if (count == 0) continue;
    series.values[k] = statistic(k) / static_cast<double>(count);
  }
  fill_empty_slots(series.values, series.counts);
  return series;
}

}  // namespace detail

inline SlottedSeries slotted_correntropy(const SlotPairs& pairs,
                                         const KernelConfig& config) {
  const double scale = config.exponent_scale();
  return detail::slot_average(
      pairs, SlottedKind::correntropy, [&](std::size_t k) {
        double sum = 0.0;
        for (double d : pairs.differences(k)) sum += std::exp(d * d * scale);
        return config.peak() * sum;
      });
}

inline SlottedSeries slotted_correntropy(const LightCurve& curve,
                                         const KernelConfig& config,
                                         double slot_size, double max_lag) {
  return slotted_correntropy(SlotPairs(curve, slot_size, max_lag), config);
}

inline SlottedSeries slotted_autocorrelation(const SlotPairs& pairs) {
  return detail::slot_average(pairs, SlottedKind::correlation,
                              [&](std::size_t k) {
                                double sum = 0.0;
                                for (double p : pairs.products(k)) sum += p;
                                return sum;
                              });
}

inline SlottedSeries slotted_autocorrelation(const LightCurve& curve,
                                             double slot_size, double max_lag) {
  return slotted_autocorrelation(SlotPairs(curve, slot_size, max_lag));
}

/// Correntropy of an evenly sampled sequence by direct lag averages:
/// V[m] = 1/(N-m) sum_{n=m}^{N-1} G(x_n - x_{n-m}), m = 0 .. N-1.
inline std::vector<double> even_correntropy(std::span<const double> values,
                                            const KernelConfig& config) {
  const std::size_t n = values.size();
  if (n < 2) throw InvalidParameterError("sequence needs at least 2 values");
  std::vector<double> out(n);
  const double scale = config.exponent_scale();
  for (std::size_t m = 0; m < n; ++m) {
    double sum = 0.0;
    for (std::size_t i = m; i < n; ++i) {
      const double d = values[i] - values[i - m];
      sum += std::exp(d * d * scale);
    }
    out[m] = config.peak() * sum / static_cast<double>(n - m);
  }
  return out;
}

}  // namespace corrperiod

#endif  // CORRPERIOD_SLOTTED_HPP_
