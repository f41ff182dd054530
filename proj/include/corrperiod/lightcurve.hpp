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

#ifndef CORRPERIOD_LIGHTCURVE_HPP_
#define CORRPERIOD_LIGHTCURVE_HPP_

///
/// Light-curve data model: file I/O, normalization with error-based outlier
/// rejection, dense-window selection and phase folding.
///

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corrperiod/error.hpp"

namespace corrperiod {

/// An irregularly sampled time series: times in days, magnitudes and
/// per-sample magnitude errors. Construction enforces the invariants
/// (equal lengths, N >= 2, strictly increasing finite times, errors >= 0).
class LightCurve {
 public:
  LightCurve(std::vector<double> times, std::vector<double> magnitudes,
             std::vector<double> errors, std::string id = {})
      : times_(std::move(times)),
        magnitudes_(std::move(magnitudes)),
        errors_(std::move(errors)),
        id_(std::move(id)) {
    if (times_.size() != magnitudes_.size() ||
        times_.size() != errors_.size()) {
      throw InvalidParameterError("light curve columns differ in length");
    }
    if (times_.size() < 2) {
      throw InsufficientDataError("light curve needs at least 2 samples");
    }
    for (std::size_t i = 0; i < times_.size(); ++i) {
      if (!std::isfinite(times_[i]) || !std::isfinite(magnitudes_[i]) ||
          !std::isfinite(errors_[i])) {
        throw InvalidParameterError("non-finite light curve sample");
      }
      if (errors_[i] < 0.0) {
        throw InvalidParameterError("negative magnitude error");
      }
      if (i > 0 && !(times_[i] > times_[i - 1])) {
        throw InvalidParameterError("times must be strictly increasing");
      }
    }
  }

  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> magnitudes() const noexcept { return magnitudes_; }
  std::span<const double> errors() const noexcept { return errors_; }
  const std::string& id() const noexcept { return id_; }
  std::size_t size() const noexcept { return times_.size(); }

  double time_span() const noexcept { return times_.back() - times_.front(); }

  /// Samples [first, last) as a new curve.
  LightCurve slice(std::size_t first, std::size_t last,
                   std::string id) const {
    auto cut = [&](const std::vector<double>& v) {
      return std::vector<double>(v.begin() + static_cast<long>(first),
                                 v.begin() + static_cast<long>(last));
    };
    return LightCurve(cut(times_), cut(magnitudes_), cut(errors_),
                      std::move(id));
  }

  LightCurve with_magnitudes(std::vector<double> magnitudes) const {
    return LightCurve(times_, std::move(magnitudes), errors_, id_);
  }

  LightCurve shifted(double offset) const {
    std::vector<double> t = times_;
    for (double& v : t) v += offset;
    return LightCurve(std::move(t), magnitudes_, errors_, id_);
  }

 private:
  std::vector<double> times_;
  std::vector<double> magnitudes_;
  std::vector<double> errors_;
  std::string id_;
};

/// A light curve folded at a trial period and sorted by phase.
struct FoldedCurve {
  std::vector<double> phases;
  std::vector<double> magnitudes;
  /// Index of each folded sample in the source curve.
  std::vector<std::size_t> source_index;
  double period = 0.0;

  std::size_t size() const noexcept { return phases.size(); }
};

namespace detail {

inline double sample_mean(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

// Divisor N - 1.
inline double sample_stddev(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
           c == '\f';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace detail

/// Phase of `t` for a trial period: (t mod period) / period, in [0, 1).
inline double fold_phase(double t, double period) {
  const double cycles = std::floor(t / period);
  double r = std::fma(-period, cycles, t);
  if (r < 0.0) {
    r += period;
  } else if (r >= period) {
    r -= period;
  }
  const double phase = r / period;
  return phase < 1.0 ? phase : 0.0;
}

/// Reads a three-column light curve (time, magnitude, error). Columns may be
/// separated by whitespace or commas; lines starting with '#' are comments.
/// Extra columns are ignored. The result is sorted by time and samples with
/// duplicate timestamps are merged (mean magnitude, RMS error).
inline LightCurve parse_lightcurve(std::istream& in, std::string id = {}) {
  struct Row {
    double t, x, e;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < view.size()) {
      while (pos < view.size() &&
             (view[pos] == ',' || view[pos] == ' ' || view[pos] == '\t')) {
        ++pos;
      }
      if (pos >= view.size()) break;
      std::size_t end = pos;
      while (end < view.size() && view[end] != ',' && view[end] != ' ' &&
             view[end] != '\t') {
        ++end;
      }
      fields.push_back(view.substr(pos, end - pos));
      pos = end;
    }
    if (fields.size() < 3) {
      throw ParseError(line_no, "expected 3 columns (time, magnitude, error)");
    }
    Row row{};
    static constexpr const char* kNames[] = {"time", "magnitude", "error"};
    double* slots[] = {&row.t, &row.x, &row.e};
    for (int c = 0; c < 3; ++c) {
      if (!detail::parse_double(fields[c], *slots[c])) {
        throw ParseError(line_no, std::string("invalid ") + kNames[c] +
                                      " '" + std::string(fields[c]) + "'");
      }
    }
    if (row.e < 0.0) throw ParseError(line_no, "negative error");
    rows.push_back(row);
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.t < b.t; });

  std::vector<double> t, x, e;
  t.reserve(rows.size());
  x.reserve(rows.size());
  e.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    double sum_x = 0.0, sum_e2 = 0.0;
    while (j < rows.size() && rows[j].t == rows[i].t) {
      sum_x += rows[j].x;
      sum_e2 += rows[j].e * rows[j].e;
      ++j;
    }
    const double k = static_cast<double>(j - i);
    t.push_back(rows[i].t);
    x.push_back(sum_x / k);
    e.push_back(std::sqrt(sum_e2 / k));
    i = j;
  }
  if (t.size() < 2) {
    throw InsufficientDataError("fewer than 2 valid samples in '" + id + "'");
  }
  return LightCurve(std::move(t), std::move(x), std::move(e), std::move(id));
}

inline LightCurve load_lightcurve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return parse_lightcurve(in, path.stem().string());
}

/// Shortest decimal representation that round-trips exactly.
inline std::string format_exact(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

inline void write_lightcurve(std::ostream& out, const LightCurve& curve) {
  if (!curve.id().empty()) out << "# id: " << curve.id() << '\n';
  out << "# time magnitude error\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << format_exact(curve.times()[i]) << ' '
        << format_exact(curve.magnitudes()[i]) << ' '
        << format_exact(curve.errors()[i]) << '\n';
  }
}

inline void save_lightcurve(const std::filesystem::path& path,
                            const LightCurve& curve) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_lightcurve(out, curve);
}

/// Drops samples whose error exceeds mean(errors) + 2 std(errors), then
/// rescales the magnitudes to zero mean and unit sample standard deviation.
inline LightCurve normalize(const LightCurve& curve) {
  if (curve.size() < 3) {
    throw InsufficientDataError("normalize needs at least 3 samples");
  }
  const auto errors = curve.errors();
  const double err_mean = detail::sample_mean(errors);
  const double threshold = err_mean + 2.0 * detail::sample_stddev(errors, err_mean);

  std::vector<double> t, x, e;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (errors[i] > threshold) continue;
    t.push_back(curve.times()[i]);
    x.push_back(curve.magnitudes()[i]);
    e.push_back(errors[i]);
  }
  if (x.size() < 2) {
    throw DegenerateCurveError("all samples rejected in '" + curve.id() + "'");
  }
  const double mean = detail::sample_mean(x);
  for (double& v : x) v -= mean;
  const double stddev = detail::sample_stddev(x, 0.0);
  if (!(stddev > 0.0)) {
    throw DegenerateCurveError("constant magnitudes in '" + curve.id() + "'");
  }
  for (double& v : x) v /= stddev;
  return LightCurve(std::move(t), std::move(x), std::move(e), curve.id());
}

/// Returns the samples inside the window of duration T/2 (T = time span)
/// holding the most samples. Window starts slide from t_1 to t_1 + T/2 in
/// 1-day steps, plus one window ending at t_N; ties go to the earliest
/// start. Falls back to the whole curve when the best window holds fewer
/// than 2 samples.
inline LightCurve select_dense_window(const LightCurve& curve) {
  const auto t = curve.times();
  const double span = curve.time_span();
  const double width = 0.5 * span;
  const auto steps = static_cast<std::size_t>(std::floor(width));

  std::size_t best_first = 0, best_last = curve.size(), best_count = 0;
  // The extra last start aligns the window with the final sample.
  for (std::size_t k = 0; k <= steps + 1; ++k) {
    const double start = k <= steps ? t.front() + static_cast<double>(k)
                                    : t.back() - width;
    const double stop = start + width;
    const auto first = std::lower_bound(t.begin(), t.end(), start);
    const auto last = std::upper_bound(first, t.end(), stop);
    const auto count = static_cast<std::size_t>(last - first);
    if (count > best_count) {
      best_count = count;
      best_first = static_cast<std::size_t>(first - t.begin());
      best_last = static_cast<std::size_t>(last - t.begin());
    }
  }
  if (best_count < 2) return curve;
  return curve.slice(best_first, best_last, curve.id() + "#dense");
}

/// Folds the curve at `period` and sorts by phase. Equal phases keep their
/// time order.
inline FoldedCurve fold(const LightCurve& curve, double period) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw InvalidParameterError("fold period must be positive");
  }
  const std::size_t n = curve.size();
  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    raw[i] = fold_phase(curve.times()[i], period);
  }
  FoldedCurve folded;
  folded.period = period;
  folded.source_index.resize(n);
  std::iota(folded.source_index.begin(), folded.source_index.end(),
            std::size_t{0});
  std::stable_sort(folded.source_index.begin(), folded.source_index.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  folded.phases.resize(n);
  folded.magnitudes.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    folded.phases[k] = raw[folded.source_index[k]];
    folded.magnitudes[k] = curve.magnitudes()[folded.source_index[k]];
  }
  return folded;
}

}  // namespace corrperiod

#endif  // CORRPERIOD_LIGHTCURVE_HPP_
