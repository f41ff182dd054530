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

#ifndef CORRPERIOD_BINNING_HPP_
#define CORRPERIOD_BINNING_HPP_

///
/// Phase binning of folded curves. Fixed mode splits [0, 1) into H equal
/// bins. Dynamic mode smooths the folded magnitudes, finds local maxima and
/// minima with overlapping windows, and puts bin boundaries at the midpoints
/// between consecutive optima, giving one optimum per bin.
///

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrperiod/error.hpp"
#include "corrperiod/lightcurve.hpp"

namespace corrperiod {

struct DynamicBinningConfig {
  /// Moving-average width, in samples.
  std::size_t smoothing_span = 20;
  /// Extremum search window M in samples; 0 selects round(N / 10), min 4.
  std::size_t extrema_window = 0;

  /// Effective M for a fold of n samples, capped at n / 2.
  std::size_t window_for(std::size_t n) const noexcept {
    std::size_t m = extrema_window;
    if (m == 0) {
      m = std::max<std::size_t>(
          4, static_cast<std::size_t>(std::lround(static_cast<double>(n) / 10.0)));
    }
    return std::max<std::size_t>(2, std::min(m, n / 2));
  }
};

enum class BinningMode { dynamic, fixed };

class Binning {
 public:
  static Binning dynamic(DynamicBinningConfig config = {}) {
    if (config.smoothing_span < 1) {
      throw InvalidParameterError("smoothing span must be >= 1");
    }
    if (config.extrema_window == 1) {
      throw InvalidParameterError("extrema window must be >= 2");
    }
    Binning b;
    b.mode_ = BinningMode::dynamic;
    b.dynamic_ = config;
    return b;
  }
  static Binning fixed(std::size_t bins) {
    if (bins < 1) throw InvalidParameterError("fixed binning needs >= 1 bin");
    Binning b;
    b.mode_ = BinningMode::fixed;
    b.bins_ = bins;
    return b;
  }

  /// "dynamic" or "fixed:H".
  static Binning parse(std::string_view text) {
    if (text == "dynamic") return dynamic();
    if (text.starts_with("fixed:")) {
      const std::string_view digits = text.substr(6);
      std::size_t h = 0;
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), h);
      if (ec == std::errc() && ptr == digits.data() + digits.size() && h >= 1) {
        return fixed(h);
      }
    }
    throw InvalidParameterError("binning must be 'dynamic' or 'fixed:H', got '" +
                                std::string(text) + "'");
  }

  BinningMode mode() const noexcept { return mode_; }
  bool is_dynamic() const noexcept { return mode_ == BinningMode::dynamic; }
  std::size_t fixed_bins() const noexcept { return bins_; }
  const DynamicBinningConfig& dynamic_config() const noexcept {
    return dynamic_;
  }

  std::string to_string() const {
    return is_dynamic() ? "dynamic" : "fixed:" + std::to_string(bins_);
  }

 private:
  Binning() = default;
  BinningMode mode_ = BinningMode::dynamic;
  std::size_t bins_ = 10;
  DynamicBinningConfig dynamic_{};
};

enum class OptimumKind { maximum, minimum };

struct Optimum {
  double phase = 0.0;
  /// Position in the phase-sorted fold.
  std::size_t index = 0;
  OptimumKind kind = OptimumKind::maximum;
};

struct BinPartition {
  /// Ascending, first 0 and last 1.
  std::vector<double> boundaries;
  std::vector<double> optima_phases;
  BinningMode mode = BinningMode::dynamic;

  std::size_t bin_count() const noexcept { return boundaries.size() - 1; }

  std::size_t bin_of(double phase) const noexcept {
    const auto it =
        std::upper_bound(boundaries.begin(), boundaries.end(), phase);
    const auto h = static_cast<std::size_t>(it - boundaries.begin());
    return std::min(h == 0 ? 0 : h - 1, bin_count() - 1);
  }
};

/// Circular centred moving average of `span` samples over phase-sorted
/// magnitudes. Even spans take one extra sample before the centre.
inline std::vector<double> smooth_circular(std::span<const double> values,
                                           std::size_t span) {
  const std::size_t n = values.size();
  std::vector<double> out(n);
  if (n == 0) return out;
  span = std::clamp<std::size_t>(span, 1, n);
  if (span == 1) {
    std::copy(values.begin(), values.end(), out.begin());
    return out;
  }
  const std::size_t back = span / 2;
  // Running sum over the circular window [i - back, i - back + span).
  double sum = 0.0;
  std::size_t tail = (n - back) % n;
  std::size_t head = tail;
  for (std::size_t k = 0; k < span; ++k) {
    sum += values[head];
    if (++head == n) head = 0;
  }
  const double scale = 1.0 / static_cast<double>(span);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = sum * scale;
    sum += values[head] - values[tail];
    if (++head == n) head = 0;
    if (++tail == n) tail = 0;
  }
  return out;
}

inline std::vector<double> smooth_folded(const FoldedCurve& fold,
                                         std::size_t span) {
  if (span < 1) throw InvalidParameterError("smoothing span must be >= 1");
  return smooth_circular(fold.magnitudes, span);
}

/// Local extrema of a smoothed fold. Windows of M samples advance by M / 2
/// and wrap around phase 1 -> 0; a window's argmax (argmin) counts only when
/// it is not on the window edge. Duplicates across windows are merged.
/// Falls back to the global argmax and argmin when fewer than 2 optima turn
/// up. Result is in phase order.
inline std::vector<Optimum> find_local_optima(std::span<const double> phases,
                                              std::span<const double> smoothed,
                                              const DynamicBinningConfig& config) {
  const std::size_t n = smoothed.size();
  std::vector<Optimum> found;
  if (n == 0) return found;
  const std::size_t m = config.window_for(n);
  const std::size_t stride = std::max<std::size_t>(1, m / 2);

  std::vector<char> taken(n, 0);
  if (m >= 3) {
    for (std::size_t start = 0; start < n; start += stride) {
      std::size_t arg_max = 0, arg_min = 0;
      double hi = smoothed[start], lo = smoothed[start];
      for (std::size_t j = 1; j < m; ++j) {
        const double v = smoothed[(start + j) % n];
        if (v > hi) {
          hi = v;
          arg_max = j;
        }
        if (v < lo) {
          lo = v;
          arg_min = j;
        }
      }
      const auto record = [&](std::size_t j, OptimumKind kind) {
        if (j == 0 || j == m - 1) return;
        const std::size_t at = (start + j) % n;
        if (taken[at]) return;
        taken[at] = 1;
        found.push_back({phases[at], at, kind});
      };
      record(arg_max, OptimumKind::maximum);
      record(arg_min, OptimumKind::minimum);
    }
  }

  if (found.size() < 2) {
    found.clear();
    const auto max_it = std::max_element(smoothed.begin(), smoothed.end());
    const auto min_it = std::min_element(smoothed.begin(), smoothed.end());
    const auto max_at = static_cast<std::size_t>(max_it - smoothed.begin());
    const auto min_at = static_cast<std::size_t>(min_it - smoothed.begin());
    found.push_back({phases[max_at], max_at, OptimumKind::maximum});
    if (min_at != max_at) {
      found.push_back({phases[min_at], min_at, OptimumKind::minimum});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const Optimum& a, const Optimum& b) { return a.index < b.index; });
  return found;
}

/// Bin boundaries at 0, the midpoints between consecutive optima, and 1.
inline BinPartition make_partition(std::span<const Optimum> optima) {
  if (optima.empty()) {
    throw InvalidParameterError("partition needs at least one optimum");
  }
  BinPartition p;
  p.mode = BinningMode::dynamic;
  p.boundaries.reserve(optima.size() + 1);
  p.boundaries.push_back(0.0);
  for (std::size_t i = 0; i < optima.size(); ++i) {
    p.optima_phases.push_back(optima[i].phase);
    if (i + 1 < optima.size()) {
      p.boundaries.push_back(0.5 * (optima[i].phase + optima[i + 1].phase));
    }
  }
  p.boundaries.push_back(1.0);
  return p;
}

inline BinPartition fixed_partition(std::size_t bins) {
  if (bins < 1) throw InvalidParameterError("fixed binning needs >= 1 bin");
  BinPartition p;
  p.mode = BinningMode::fixed;
  p.boundaries.resize(bins + 1);
  for (std::size_t h = 0; h <= bins; ++h) {
    p.boundaries[h] = static_cast<double>(h) / static_cast<double>(bins);
  }
  return p;
}

/// Partition for phase-sorted samples, dynamic or fixed.
inline BinPartition partition_phases(std::span<const double> phases,
                                     std::span<const double> magnitudes,
                                     const Binning& binning) {
  if (!binning.is_dynamic()) return fixed_partition(binning.fixed_bins());
  const auto& cfg = binning.dynamic_config();
  const std::vector<double> smoothed =
      smooth_circular(magnitudes, cfg.smoothing_span);
  const std::vector<Optimum> optima = find_local_optima(phases, smoothed, cfg);
  return make_partition(optima);
}

inline BinPartition partition_fold(const FoldedCurve& fold,
                                   const Binning& binning) {
  return partition_phases(fold.phases, fold.magnitudes, binning);
}

/// First sorted-sample index of each bin plus a final n; bin h covers
/// [starts[h], starts[h + 1]).
inline std::vector<std::size_t> bin_starts(std::span<const double> sorted_phases,
                                           const BinPartition& partition) {
  const std::size_t bins = partition.bin_count();
  std::vector<std::size_t> starts(bins + 1);
  starts[0] = 0;
  for (std::size_t h = 1; h < bins; ++h) {
    starts[h] = static_cast<std::size_t>(
        std::lower_bound(sorted_phases.begin(), sorted_phases.end(),
                         partition.boundaries[h]) -
        sorted_phases.begin());
  }
  starts[bins] = sorted_phases.size();
  return starts;
}

namespace detail {

// Stable LSD radix sort of `order` by the bit patterns of nonnegative
// doubles, 8 bits per pass. Passes where every key shares the digit are
// skipped.
inline void radix_sort_nonnegative(std::span<const double> keys,
                                   std::vector<std::uint32_t>& order,
                                   std::vector<std::uint32_t>& scratch) {
  const std::size_t n = keys.size();
  order.resize(n);
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  std::vector<std::uint64_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = std::bit_cast<std::uint64_t>(keys[i]);
  std::size_t count[256];
  for (int shift = 0; shift < 64; shift += 8) {
    std::fill(std::begin(count), std::end(count), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) ++count[(bits[i] >> shift) & 0xFF];
    if (n == 0 || count[(bits[0] >> shift) & 0xFF] == n) continue;
    std::size_t total = 0;
    for (std::size_t& c : count) {
      const std::size_t here = c;
      c = total;
      total += here;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint32_t i = order[k];
      scratch[count[(bits[i] >> shift) & 0xFF]++] = i;
    }
    order.swap(scratch);
  }
}

// Phase-sorts a curve into reusable buffers; equal phases keep time order.
class FoldBuffer {
 public:
  FoldBuffer(std::span<const double> times, std::span<const double> magnitudes)
      : times_(times.begin(), times.end()),
        magnitudes_(magnitudes.begin(), magnitudes.end()),
        raw_phases_(times.size()),
        phases_(times.size()),
        folded_(times.size()) {}

  void fold(double period) {
    const std::size_t n = times_.size();
    for (std::size_t i = 0; i < n; ++i) {
      raw_phases_[i] = fold_phase(times_[i], period);
    }
    radix_sort_nonnegative(raw_phases_, order_, scratch_);
    for (std::size_t k = 0; k < n; ++k) {
      phases_[k] = raw_phases_[order_[k]];
      folded_[k] = magnitudes_[order_[k]];
    }
  }

  std::span<const double> phases() const noexcept { return phases_; }
  std::span<const double> magnitudes() const noexcept { return folded_; }
  /// Source index of each folded sample.
  std::span<const std::uint32_t> order() const noexcept { return order_; }
  std::span<const double> raw_magnitudes() const noexcept { return magnitudes_; }
  std::size_t size() const noexcept { return times_.size(); }

 private:
  std::vector<double> times_;
  std::vector<double> magnitudes_;
  std::vector<double> raw_phases_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> scratch_;
  std::vector<double> phases_;
  std::vector<double> folded_;
};

}  // namespace detail

}  // namespace corrperiod

#endif  // CORRPERIOD_BINNING_HPP_
