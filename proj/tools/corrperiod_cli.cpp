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

// corrperiod command-line tool.
//
//   corrperiod estimate  FILE...   period report per curve
//   corrperiod spectrum  FILE...   one CSD / PSD / Lomb-Scargle spectrum per curve
//   corrperiod sweep     FILE      CSD for every kernel size plus an index
//   corrperiod bench               hit / multiple / miss table on a labeled batch
//   corrperiod baseline  FILE...   Lomb-Scargle, AoV or string-length scan
//
// Exit status: 0 success, 1 data failure, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corrperiod.hpp"

namespace fs = std::filesystem;
using namespace corrperiod;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flag values as typed; turned into a PipelineConfig and validated before
// any file is read.
struct CommonFlags {
  std::string sigma_grid;
  double slot_size = 0.25;
  double max_lag_fraction = 0.1;
  std::size_t n_peaks = 10;
  double period_min = 0.2;
  double period_max = 200.0;
  std::size_t oversample = 8;
  std::string binning = "dynamic";
  std::string out = ".";
  std::string format = "text";
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--sigma-grid", f.sigma_grid,
                  "Comma-separated kernel sizes (default: 25 log-spaced in [0.01, 5])");
  cmd->add_option("--slot-size", f.slot_size, "Slot width in days")->capture_default_str();
  cmd->add_option("--max-lag-fraction", f.max_lag_fraction,
                  "Maximum lag as a fraction of the time span")
      ->capture_default_str();
  cmd->add_option("--n-peaks", f.n_peaks, "Spectral peaks kept per spectrum")
      ->capture_default_str();
  cmd->add_option("--period-min", f.period_min, "Shortest trial period (days)")
      ->capture_default_str();
  cmd->add_option("--period-max", f.period_max, "Longest trial period (days)")
      ->capture_default_str();
  cmd->add_option("--oversample", f.oversample, "Zero-padding factor of the FFT")
      ->capture_default_str();
  cmd->add_option("--binning", f.binning, "Phase binning: dynamic or fixed:H")
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
  cmd->add_option("--format", f.format, "Report format: text or kv")->capture_default_str();
  cmd->add_flag("--timings", f.timings, "Include stage timings in reports");
}

std::vector<double> parse_sigma_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string_view t = detail::trim(item);
    double v = 0.0;
    if (t.empty() || !detail::parse_double(t, v)) {
      throw UsageError("invalid kernel size '" + std::string(t) + "' in --sigma-grid");
    }
    out.push_back(v);
  }
  return out;
}

PipelineConfig build_config(const CommonFlags& f, bool sigma_given) {
  PipelineConfig c;
  if (sigma_given) c.sigma_grid = parse_sigma_list(f.sigma_grid);
  c.slot_size = f.slot_size;
  c.max_lag_fraction = f.max_lag_fraction;
  c.n_peaks = f.n_peaks;
  c.period_min = f.period_min;
  c.period_max = f.period_max;
  c.oversample = f.oversample;
  c.binning = Binning::parse(f.binning);
  c.validate();
  return c;
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (!fs::is_directory(p)) throw UsageError("cannot create output directory '" + dir + "'");
  return p;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

std::string extension(ReportFormat f) { return f == ReportFormat::kv ? ".kv" : ".txt"; }

std::string stem_of(const std::string& path) {
  const std::string s = fs::path(path).stem().string();
  return s.empty() ? "curve" : s;
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
  std::vector<std::string> inputs;
  std::string method = "correntropy+ip";
};

int run_estimate(const EstimateArgs& a, const CommonFlags& f, bool sigma_given) {
  const Method method = parse_method(a.method);
  const PipelineConfig config = build_config(f, sigma_given);
  const ReportOptions options{parse_report_format(f.format), f.timings};
  const fs::path out = prepare_out(f.out);

  std::vector<std::string> inputs = a.inputs;
  std::sort(inputs.begin(), inputs.end());
  int status = kExitOk;
  for (const std::string& path : inputs) {
    const std::string stem = stem_of(path);
    try {
      const LightCurve curve = load_lightcurve(path);
      const EstimationReport report = estimate_with_method(curve, method, config);
      auto file = open_output(out / (stem + ".report" + extension(options.format)));
      write_report(file, report, config, options);
      std::cout << path << '\t' << format_number(report.best.period) << '\t'
                << format_number(report.best.score) << '\n';
    } catch (const std::exception& e) {
      status = kExitData;
      std::cerr << "corrperiod: " << path << ": " << e.what() << '\n';
      try {
        auto file = open_output(out / (stem + ".error" + extension(options.format)));
        write_error_record(file, path, e.what(), options.format);
      } catch (const std::exception& inner) {
        std::cerr << "corrperiod: " << inner.what() << '\n';
      }
      std::cout << path << "\terror\t" << e.what() << '\n';
    }
  }
  return status;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::vector<std::string> inputs;
  std::string kind = "csd";
  double sigma = 0.5;
};

Spectrum spectrum_for(const LightCurve& normalized, const std::string& kind, double sigma,
                      const PipelineConfig& c, SlottedSeries* series_out) {
  if (kind == "ls") {
    return lomb_scargle(normalized, lomb_scargle_grid(normalized, c.period_min, c.period_max,
                                                      c.ls_oversampling));
  }
  const double max_lag = c.max_lag_fraction * normalized.time_span();
  const SlotPairs pairs(normalized, c.slot_size, max_lag);
  SlottedSeries series = kind == "csd" ? slotted_correntropy(pairs, KernelConfig(sigma))
                                       : slotted_autocorrelation(pairs);
  Spectrum s = csd(series, c.oversample);
  if (series_out) *series_out = std::move(series);
  return s;
}

int run_spectrum(const SpectrumArgs& a, const CommonFlags& f, bool sigma_given) {
  if (a.kind != "csd" && a.kind != "psd" && a.kind != "ls") {
    throw UsageError("unknown spectrum kind '" + a.kind + "'; valid kinds: csd, psd, ls");
  }
  if (!(a.sigma > 0.0)) throw UsageError("--sigma must be positive");
  const PipelineConfig config = build_config(f, sigma_given);
  const fs::path out = prepare_out(f.out);

  std::vector<std::string> inputs = a.inputs;
  std::sort(inputs.begin(), inputs.end());
  int status = kExitOk;
  for (const std::string& path : inputs) {
    const std::string stem = stem_of(path);
    try {
      const LightCurve curve = normalize(load_lightcurve(path));
      SlottedSeries series;
      const Spectrum s = spectrum_for(curve, a.kind, a.sigma, config,
                                      a.kind == "ls" ? nullptr : &series);
      auto sf = open_output(out / (stem + "." + a.kind + ".txt"));
      write_spectrum(sf, s);
      const PeakSet peaks = extract_peaks(s, config.n_peaks, config.period_min,
                                          config.period_max);
      auto pf = open_output(out / (stem + "." + a.kind + ".peaks.txt"));
      write_peaks(pf, peaks);
      if (a.kind != "ls") {
        auto lf = open_output(out / (stem + "." + a.kind + ".lags.txt"));
        write_series(lf, series);
      }
      std::cout << path << '\t'
                << (peaks.entries.empty() ? std::string("-")
                                          : format_number(peaks.entries.front().period))
                << '\n';
    } catch (const std::exception& e) {
      status = kExitData;
      std::cerr << "corrperiod: " << path << ": " << e.what() << '\n';
    }
  }
  return status;
}

// ---------------------------------------------------------------------------

int run_sweep(const std::string& input, const CommonFlags& f, bool sigma_given) {
  const PipelineConfig config = build_config(f, sigma_given);
  const fs::path out = prepare_out(f.out);
  const std::string stem = stem_of(input);
  try {
    const LightCurve curve = normalize(load_lightcurve(input));
    const double max_lag = config.max_lag_fraction * curve.time_span();
    const SlotPairs pairs(curve, config.slot_size, max_lag);
    auto index = open_output(out / (stem + ".sweep-index.txt"));
    index << "# index sigma file\n";
    char name[64];
    for (std::size_t i = 0; i < config.sigma_grid.size(); ++i) {
      const double sigma = config.sigma_grid[i];
      std::snprintf(name, sizeof(name), ".csd-%03zu.txt", i);
      const std::string file = stem + name;
      auto sf = open_output(out / file);
      write_spectrum(sf, csd(slotted_correntropy(pairs, KernelConfig(sigma)),
                             config.oversample));
      index << i << ' ' << format_number(sigma) << ' ' << file << '\n';
    }
    std::cout << input << '\t' << config.sigma_grid.size() << " spectra\n";
  } catch (const std::exception& e) {
    std::cerr << "corrperiod: " << input << ": " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string suite = "sinusoid";
  std::optional<std::size_t> count;
  std::uint64_t seed = 2011;
  std::string data;
  std::string truth;
  std::string methods = "correntropy+ip";
  std::size_t threads = 1;
};

int run_bench(const BenchArgs& a, const CommonFlags& f, bool sigma_given) {
  std::vector<Method> methods;
  {
    std::stringstream in(a.methods);
    std::string item;
    while (std::getline(in, item, ',')) methods.push_back(parse_method(detail::trim(item)));
  }
  if (methods.empty()) throw UsageError("no methods given");
  const PipelineConfig config = build_config(f, sigma_given);
  if (a.data.empty() != a.truth.empty()) {
    throw UsageError("--data and --truth must be given together");
  }
  SuiteSpec suite;
  if (a.data.empty()) {
    if (a.suite == "sinusoid") {
      suite = sinusoid_suite(a.count.value_or(50), a.seed);
    } else if (a.suite == "eclipsing-binary") {
      suite = eclipsing_binary_suite(a.count.value_or(30), a.seed);
    } else {
      throw UsageError("unknown suite '" + a.suite + "'; valid suites: sinusoid, eclipsing-binary");
    }
    if (suite.count == 0) throw UsageError("--count must be >= 1");
  }
  const fs::path out = prepare_out(f.out);

  std::vector<LabeledCurve> curves;
  try {
    curves = a.data.empty() ? generate_suite(suite) : load_labeled_directory(a.data, a.truth);
    if (curves.empty()) throw Error("no curves found in '" + a.data + "'");
  } catch (const std::exception& e) {
    std::cerr << "corrperiod: " << e.what() << '\n';
    return kExitData;
  }

  const BatchResult result = evaluate_batch(curves, methods, config, {a.threads});
  for (const auto& o : result.outcomes) {
    if (!o.error.empty()) {
      std::cerr << "corrperiod: " << o.curve_id << " (" << to_string(o.method)
                << "): " << o.error << '\n';
    }
  }
  auto table = open_output(out / "bench-table.tsv");
  write_summary_table(table, result.summaries);
  auto outcomes = open_output(out / "bench-outcomes.tsv");
  write_outcomes(outcomes, result.outcomes);
  write_summary_table(std::cout, result.summaries);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BaselineArgs {
  std::vector<std::string> inputs;
  std::string method = "ls";
  double scan_step = 1e-3;
};

int run_baseline(const BaselineArgs& a, const CommonFlags& f, bool sigma_given,
                 bool binning_given) {
  if (a.method != "ls" && a.method != "aov" && a.method != "sllk") {
    throw UsageError("unknown baseline '" + a.method + "'; valid baselines: ls, aov, sllk");
  }
  PipelineConfig config = build_config(f, sigma_given);
  config.scan_step = a.scan_step;
  config.validate();
  // AoV uses ten equal bins unless --binning says otherwise.
  const Binning binning = binning_given ? config.binning : Binning::fixed(config.aov_bins);
  const fs::path out = prepare_out(f.out);

  std::vector<std::string> inputs = a.inputs;
  std::sort(inputs.begin(), inputs.end());
  int status = kExitOk;
  for (const std::string& path : inputs) {
    const std::string stem = stem_of(path);
    try {
      const LightCurve curve = normalize(load_lightcurve(path));
      std::vector<PeriodCandidate> best;
      if (a.method == "ls") {
        const Spectrum s = lomb_scargle(
            curve, lomb_scargle_grid(curve, config.period_min, config.period_max,
                                     config.ls_oversampling));
        auto sf = open_output(out / (stem + ".ls.txt"));
        write_spectrum(sf, s);
        const PeakSet peaks =
            extract_peaks(s, config.n_peaks, config.period_min, config.period_max);
        for (const Peak& p : peaks.entries) {
          PeriodCandidate c;
          c.period = c.seed_period = p.period;
          c.score = p.power;
          c.origin = CandidateOrigin::ls_peak;
          best.push_back(c);
        }
      } else {
        const StatisticCurve scan = scan_statistic(
            curve, config.scan_grid(),
            a.method == "aov" ? ScanStatistic::aov_max : ScanStatistic::sllk_min, binning);
        auto sf = open_output(out / (stem + "." + a.method + ".txt"));
        write_statistic_curve(sf, scan);
        best = best_extrema(scan, config.n_peaks);
      }
      if (best.empty()) throw Error("no extremum in the period band");
      auto pf = open_output(out / (stem + "." + a.method + ".best.txt"));
      pf << "# rank period statistic\n";
      for (std::size_t r = 0; r < best.size(); ++r) {
        pf << r << ' ' << format_number(best[r].period) << ' '
           << format_number(best[r].score) << '\n';
      }
      std::cout << path << '\t' << a.method << '\t' << format_number(best.front().period)
                << '\t' << format_number(best.front().score) << '\n';
    } catch (const std::exception& e) {
      status = kExitData;
      std::cerr << "corrperiod: " << path << ": " << e.what() << '\n';
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Period estimation for unevenly sampled light curves"};
  app.require_subcommand(1);

  CommonFlags estimate_flags, spectrum_flags, sweep_flags, bench_flags, baseline_flags;

  EstimateArgs estimate;
  auto* est = app.add_subcommand("estimate", "Estimate the period of each curve");
  est->add_option("files", estimate.inputs, "Light-curve files")->required();
  est->add_option("--method", estimate.method, "Method: " + method_list())
      ->capture_default_str();
  add_common(est, estimate_flags);

  SpectrumArgs spectrum;
  auto* spec = app.add_subcommand("spectrum", "Write the spectrum of each curve");
  spec->add_option("files", spectrum.inputs, "Light-curve files")->required();
  spec->add_option("--kind", spectrum.kind, "csd, psd or ls")->capture_default_str();
  spec->add_option("--sigma", spectrum.sigma, "Kernel size of the CSD")->capture_default_str();
  add_common(spec, spectrum_flags);

  std::string sweep_input;
  auto* sweep = app.add_subcommand("sweep", "Write the CSD for every kernel size");
  sweep->add_option("file", sweep_input, "Light-curve file")->required();
  add_common(sweep, sweep_flags);

  BenchArgs bench;
  auto* bn = app.add_subcommand("bench", "Score methods on a labeled batch");
  bn->add_option("--suite", bench.suite, "Synthetic suite: sinusoid or eclipsing-binary")
      ->capture_default_str();
  bn->add_option("--count", bench.count, "Curves in the synthetic suite");
  bn->add_option("--seed", bench.seed, "Suite seed")->capture_default_str();
  bn->add_option("--data", bench.data, "Directory of labeled curves");
  bn->add_option("--truth", bench.truth, "Truth file: 'id period' per line");
  bn->add_option("--method", bench.methods, "Comma-separated methods: " + method_list())
      ->capture_default_str();
  bn->add_option("--threads", bench.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  add_common(bn, bench_flags);

  BaselineArgs baseline;
  auto* bl = app.add_subcommand("baseline", "Run a classical period search");
  bl->add_option("files", baseline.inputs, "Light-curve files")->required();
  bl->add_option("--method", baseline.method, "ls, aov or sllk")->capture_default_str();
  bl->add_option("--scan-step", baseline.scan_step, "Period step of AoV / SLLK scans")
      ->capture_default_str();
  add_common(bl, baseline_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto given = [](CLI::App* cmd, const char* flag) { return cmd->count(flag) > 0; };
  try {
    if (*est) return run_estimate(estimate, estimate_flags, given(est, "--sigma-grid"));
    if (*spec) return run_spectrum(spectrum, spectrum_flags, given(spec, "--sigma-grid"));
    if (*sweep) return run_sweep(sweep_input, sweep_flags, given(sweep, "--sigma-grid"));
    if (*bn) return run_bench(bench, bench_flags, given(bn, "--sigma-grid"));
    if (*bl) {
      return run_baseline(baseline, baseline_flags, given(bl, "--sigma-grid"),
                          given(bl, "--binning"));
    }
  } catch (const UsageError& e) {
    std::cerr << "corrperiod: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameterError& e) {
    std::cerr << "corrperiod: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "corrperiod: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
