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

#ifndef CORRPERIOD_BENCHKIT_HPP_
#define CORRPERIOD_BENCHKIT_HPP_

///
/// Hit / multiple / miss scoring and batch evaluation over labeled curves.
///

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "corrperiod/error.hpp"
#include "corrperiod/lightcurve.hpp"
#include "corrperiod/pipeline.hpp"
#include "corrperiod/report.hpp"
#include "corrperiod/synthetic.hpp"

namespace corrperiod {

enum class PeriodClass { hit, multiple, miss };

inline std::string_view to_string(PeriodClass c) {
  switch (c) {
    case PeriodClass::hit: return "hit";
    case PeriodClass::multiple: return "multiple";
    case PeriodClass::miss: return "miss";
  }
  return "?";
}

inline constexpr double kHitTolerance = 0.005;
inline constexpr int kMaxHarmonic = 10;

/// Hit within 0.5% of the truth; multiple within 0.5% of n * truth or
/// truth / n for n in [2, 10]; miss otherwise.
inline PeriodClass classify_period(double estimated, double truth) {
  if (!(estimated > 0.0) || !(truth > 0.0)) {
    throw InvalidParameterError("periods must be positive");
  }
  const auto near = [&](double target) {
    return std::abs(estimated - target) / target < kHitTolerance;
  };
  if (near(truth)) return PeriodClass::hit;
  for (int n = 2; n <= kMaxHarmonic; ++n) {
    if (near(n * truth) || near(truth / n)) return PeriodClass::multiple;
  }
  return PeriodClass::miss;
}

using LabeledCurve = SyntheticCurve;

struct EvaluationOutcome {
  std::string curve_id;
  Method method = Method::correntropy_ip;
  double true_period = 0.0;
  /// NaN when the method failed.
  double estimated_period = 0.0;
  PeriodClass period_class = PeriodClass::miss;
  double relative_error = 0.0;
  /// Empty on success.
  std::string error;
};

struct MethodSummary {
  Method method = Method::correntropy_ip;
  std::size_t curves = 0;
  std::size_t hits = 0;
  std::size_t multiples = 0;
  std::size_t misses = 0;
  std::size_t failures = 0;

  /// Percentages rounded to one decimal.
  double hit_percent() const { return percent(hits); }
  double multiple_percent() const { return percent(multiples); }
  double miss_percent() const { return percent(misses); }

 private:
  double percent(std::size_t k) const {
    if (curves == 0) return 0.0;
    return std::round(1000.0 * static_cast<double>(k) / static_cast<double>(curves)) / 10.0;
  }
};

struct BatchResult {
  /// Curve-major: all methods for curve 0, then curve 1, ...
  std::vector<EvaluationOutcome> outcomes;
  std::vector<MethodSummary> summaries;
};

struct BatchOptions {
  /// Worker threads; 0 uses the hardware concurrency.
  std::size_t threads = 1;
};

inline EvaluationOutcome evaluate_one(const LabeledCurve& item, Method method,
                                      const PipelineConfig& config) {
  EvaluationOutcome o;
  o.curve_id = item.curve.id();
  o.method = method;
  o.true_period = item.true_period;
  try {
    const EstimationReport r = estimate_with_method(item.curve, method, config);
    o.estimated_period = r.best.period;
    o.relative_error = std::abs(r.best.period - item.true_period) / item.true_period;
    o.period_class = classify_period(r.best.period, item.true_period);
  } catch (const std::exception& e) {
    o.estimated_period = std::nan("");
    o.relative_error = std::nan("");
    o.period_class = PeriodClass::miss;
    o.error = e.what();
    if (o.error.empty()) o.error = "unknown failure";
  }
  return o;
}

/// Runs every method on every curve. Failures count as misses and keep their
/// message. The result does not depend on the thread count.
inline BatchResult evaluate_batch(const std::vector<LabeledCurve>& curves,
                                  const std::vector<Method>& methods,
                                  const PipelineConfig& config,
                                  const BatchOptions& options = {}) {
  if (curves.empty()) throw InvalidParameterError("batch is empty");
  if (methods.empty()) throw InvalidParameterError("no methods given");
  config.validate();
  for (const auto& c : curves) {
    if (!(c.true_period > 0.0)) {
      throw InvalidParameterError("true period of '" + c.curve.id() + "' must be positive");
    }
  }

  const std::size_t jobs = curves.size() * methods.size();
  BatchResult result;
  result.outcomes.resize(jobs);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      result.outcomes[j] =
          evaluate_one(curves[j / methods.size()], methods[j % methods.size()], config);
    }
  };
  std::size_t threads = options.threads ? options.threads
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, jobs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (Method m : methods) {
    MethodSummary s;
    s.method = m;
    for (const auto& o : result.outcomes) {
      if (o.method != m) continue;
      ++s.curves;
      if (!o.error.empty()) ++s.failures;
      switch (o.period_class) {
        case PeriodClass::hit: ++s.hits; break;
        case PeriodClass::multiple: ++s.multiples; break;
        case PeriodClass::miss: ++s.misses; break;
      }
    }
    result.summaries.push_back(s);
  }
  return result;
}

/// Delimited table with one row per method.
inline void write_summary_table(std::ostream& out, const std::vector<MethodSummary>& rows,
                                char delimiter = '\t') {
  out << "method" << delimiter << "hits%" << delimiter << "multiples%" << delimiter
      << "misses%" << delimiter << "curves" << delimiter << "failures\n";
  for (const auto& r : rows) {
    out << to_string(r.method) << delimiter << format_fixed(r.hit_percent(), 1) << delimiter
        << format_fixed(r.multiple_percent(), 1) << delimiter
        << format_fixed(r.miss_percent(), 1) << delimiter << r.curves << delimiter
        << r.failures << '\n';
  }
}

inline void write_outcomes(std::ostream& out, const std::vector<EvaluationOutcome>& rows,
                           char delimiter = '\t') {
  out << "curve" << delimiter << "method" << delimiter << "true_period" << delimiter
      << "estimated_period" << delimiter << "class" << delimiter << "relative_error"
      << delimiter << "error\n";
  for (const auto& o : rows) {
    const bool failed = !o.error.empty();
    out << o.curve_id << delimiter << to_string(o.method) << delimiter
        << format_number(o.true_period) << delimiter
        << (failed ? std::string("nan") : format_number(o.estimated_period)) << delimiter
        << to_string(o.period_class) << delimiter
        << (failed ? std::string("nan") : format_number(o.relative_error)) << delimiter
        << (failed ? o.error : std::string("-")) << '\n';
  }
}

/// Reads "id period" lines (whitespace or comma separated, '#' comments).
inline std::map<std::string, double> load_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read truth file '" + path.string() + "'");
  std::map<std::string, double> truth;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::string text(body);
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream fields(text);
    std::string id, period_text, extra;
    fields >> id >> period_text;
    double value = 0.0;
    if (period_text.empty() || (fields >> extra) ||
        !detail::parse_double(period_text, value) || !(value > 0.0)) {
      throw ParseError(number, "expected 'id period'");
    }
    if (!truth.emplace(id, value).second) throw ParseError(number, "duplicate id '" + id + "'");
  }
  return truth;
}

/// Loads every regular file in `directory` except the truth file itself,
/// sorted by name. Each file's stem must appear in the truth table and every
/// truth entry must have a file.
inline std::vector<LabeledCurve> load_labeled_directory(
    const std::filesystem::path& directory, const std::filesystem::path& truth_path) {
  namespace fs = std::filesystem;
  const auto truth = load_truth(truth_path);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    if (fs::exists(truth_path) && fs::equivalent(entry.path(), truth_path)) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<LabeledCurve> out;
  std::map<std::string, bool> seen;
  for (const auto& f : files) {
    const std::string id = f.stem().string();
    const auto it = truth.find(id);
    if (it == truth.end()) throw Error("curve '" + id + "' has no entry in the truth file");
    seen[id] = true;
    out.push_back({load_lightcurve(f), it->second});
  }
  for (const auto& [id, period] : truth) {
    if (!seen.count(id)) throw Error("truth id '" + id + "' has no curve file");
  }
  return out;
}

}  // namespace corrperiod

#endif  // CORRPERIOD_BENCHKIT_HPP_
