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

#ifndef CORRPERIOD_REPORT_HPP_
#define CORRPERIOD_REPORT_HPP_

///
/// Text serialization of reports, spectra and statistic curves. Numbers are
/// written in the shortest form that round-trips, independent of locale.
///

#include <charconv>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "corrperiod/baselines.hpp"
#include "corrperiod/error.hpp"
#include "corrperiod/lightcurve.hpp"
#include "corrperiod/pipeline.hpp"
#include "corrperiod/slotted.hpp"
#include "corrperiod/spectral.hpp"

namespace corrperiod {

enum class ReportFormat { text, kv };

inline ReportFormat parse_report_format(std::string_view name) {
  if (name == "text") return ReportFormat::text;
  if (name == "kv") return ReportFormat::kv;
  throw InvalidParameterError("unknown format '" + std::string(name) +
                              "'; valid formats: text, kv");
}

inline std::string_view to_string(ReportFormat f) {
  return f == ReportFormat::text ? "text" : "kv";
}

inline std::string_view to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::csd: return "csd";
    case SpectrumKind::psd: return "psd";
    case SpectrumKind::lomb_scargle: return "lomb-scargle";
  }
  return "?";
}

/// Shortest round-trip decimal form.
inline std::string format_number(double value) { return format_exact(value); }

/// Fixed notation with `decimals` digits after the point.
inline std::string format_fixed(double value, int decimals) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
  return std::string(buf, ptr);
}

inline std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

struct ReportOptions {
  ReportFormat format = ReportFormat::text;
  /// Wall-clock timings vary between runs; off by default.
  bool timings = false;
};

namespace detail {

inline std::vector<std::pair<std::string, std::string>> parameter_list(
    const PipelineConfig& c) {
  return {
      {"sigma_grid", join_numbers(c.sigma_grid)},
      {"slot_size", format_number(c.slot_size)},
      {"max_lag_fraction", format_number(c.max_lag_fraction)},
      {"n_peaks", std::to_string(c.n_peaks)},
      {"period_min", format_number(c.period_min)},
      {"period_max", format_number(c.period_max)},
      {"oversample", std::to_string(c.oversample)},
      {"binning", c.binning.to_string()},
      {"discrimination_sigma",
       c.discrimination_sigma ? format_number(*c.discrimination_sigma) : "per-seed"},
      {"hybrid_sigma", format_number(c.hybrid_sigma)},
      {"fine_tune_half_width", format_number(c.fine_tune_half_width)},
      {"fine_tune_step", format_number(c.fine_tune_step)},
      {"fine_tune_limit", std::to_string(c.fine_tune_limit)},
      {"prescreen_points", std::to_string(c.prescreen_points)},
      {"prescreen_step", format_number(c.prescreen_step)},
      {"dedup_tolerance", format_number(c.dedup_tolerance)},
  };
}

inline std::string sigma_text(const PeriodCandidate& c) {
  return c.kernel_sigma ? format_number(*c.kernel_sigma) : "-";
}

}  // namespace detail

inline void write_report(std::ostream& out, const EstimationReport& report,
                         const PipelineConfig& config, const ReportOptions& options = {}) {
  const auto params = detail::parameter_list(config);
  if (options.format == ReportFormat::kv) {
    out << "curve_id=" << report.curve_id << '\n'
        << "method=" << to_string(report.method) << '\n'
        << "best.period=" << format_number(report.best.period) << '\n'
        << "best.score=" << format_number(report.best.score) << '\n'
        << "best.origin=" << to_string(report.best.origin) << '\n'
        << "best.sigma=" << detail::sigma_text(report.best) << '\n'
        << "best.window=" << to_string(report.best.window) << '\n'
        << "best.seed_period=" << format_number(report.best.seed_period) << '\n'
        << "samples.in=" << report.samples_in << '\n'
        << "samples.used=" << report.samples_used << '\n';
    for (std::size_t i = 0; i < report.windows.size(); ++i) {
      const auto& w = report.windows[i];
      const std::string key = "window." + std::string(to_string(w.tag)) + '.';
      out << key << "samples=" << w.samples << '\n'
          << key << "start=" << format_number(w.start) << '\n'
          << key << "span=" << format_number(w.span) << '\n'
          << key << "max_lag=" << format_number(w.max_lag) << '\n';
    }
    for (const auto& [k, v] : params) out << "param." << k << '=' << v << '\n';
    if (options.timings) {
      for (const auto& [k, v] : report.timings) {
        out << "timing." << k << '=' << format_number(v) << '\n';
      }
    }
    out << "seeds=" << report.seeds.size() << '\n'
        << "candidates=" << report.candidates.size() << '\n'
        << "rank\tperiod\tscore\torigin\tsigma\twindow\tseed_period\n";
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
      const auto& c = report.candidates[i];
      out << i << '\t' << format_number(c.period) << '\t' << format_number(c.score)
          << '\t' << to_string(c.origin) << '\t' << detail::sigma_text(c) << '\t'
          << to_string(c.window) << '\t' << format_number(c.seed_period) << '\n';
    }
    return;
  }

  out << "Curve:        " << report.curve_id << '\n'
      << "Method:       " << to_string(report.method) << '\n'
      << "Best period:  " << format_number(report.best.period) << " d\n"
      << "Score:        " << format_number(report.best.score) << '\n'
      << "Found by:     " << to_string(report.best.origin) << ", sigma "
      << detail::sigma_text(report.best) << ", " << to_string(report.best.window)
      << " window\n"
      << "Samples:      " << report.samples_used << " of " << report.samples_in
      << " kept\n\nWindows\n";
  for (const auto& w : report.windows) {
    out << "  " << to_string(w.tag) << ": " << w.samples << " samples from "
        << format_number(w.start) << " over " << format_number(w.span)
        << " d, max lag " << format_number(w.max_lag) << " d\n";
  }
  out << "\nParameters\n";
  for (const auto& [k, v] : params) out << "  " << k << " = " << v << '\n';
  if (options.timings) {
    out << "\nTimings (s)\n";
    for (const auto& [k, v] : report.timings) {
      out << "  " << k << " = " << format_fixed(v, 3) << '\n';
    }
  }
  out << "\nCandidates (" << report.candidates.size() << " from " << report.seeds.size()
      << " seeds)\n  rank  period  score  origin  sigma  window  seed\n";
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    const auto& c = report.candidates[i];
    out << "  " << i << "  " << format_number(c.period) << "  " << format_number(c.score)
        << "  " << to_string(c.origin) << "  " << detail::sigma_text(c) << "  "
        << to_string(c.window) << "  " << format_number(c.seed_period) << '\n';
  }
}

/// Record for an input that could not be processed.
inline void write_error_record(std::ostream& out, std::string_view source,
                               std::string_view message, ReportFormat format) {
  if (format == ReportFormat::kv) {
    out << "source=" << source << "\nstatus=error\nerror=" << message << '\n';
  } else {
    out << "Source: " << source << "\nError:  " << message << '\n';
  }
}

/// Two columns: frequency (1/d) and power; raw power in a third column.
inline void write_spectrum(std::ostream& out, const Spectrum& s) {
  out << "# kind " << to_string(s.kind) << '\n';
  if (s.padded_length) out << "# fft_length " << s.padded_length << '\n';
  out << "# frequency power raw\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_number(s.frequencies[i]) << ' ' << format_number(s.powers[i]) << ' '
        << format_number(s.raw[i]) << '\n';
  }
}

inline void write_peaks(std::ostream& out, const PeakSet& peaks) {
  out << "# rank period frequency power\n";
  for (std::size_t i = 0; i < peaks.entries.size(); ++i) {
    const Peak& p = peaks.entries[i];
    out << i << ' ' << format_number(p.period) << ' ' << format_number(p.frequency) << ' '
        << format_number(p.power) << '\n';
  }
}

inline void write_series(std::ostream& out, const SlottedSeries& s) {
  out << "# lag value pairs\n";
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    out << format_number(s.lag(k)) << ' ' << format_number(s.values[k]) << ' '
        << s.counts[k] << '\n';
  }
}

inline void write_statistic_curve(std::ostream& out, const StatisticCurve& c) {
  out << "# period "
      << (c.statistic == ScanStatistic::aov_max ? "aov_theta" : "string_length") << '\n';
  for (std::size_t i = 0; i < c.periods.size(); ++i) {
    out << format_number(c.periods[i]) << ' ' << format_number(c.values[i]) << '\n';
  }
}

}  // namespace corrperiod

#endif  // CORRPERIOD_REPORT_HPP_
