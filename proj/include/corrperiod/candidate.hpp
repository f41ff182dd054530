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

#ifndef CORRPERIOD_CANDIDATE_HPP_
#define CORRPERIOD_CANDIDATE_HPP_

#include <cstddef>
#include <optional>
#include <string_view>

namespace corrperiod {

enum class CandidateOrigin {
  csd_peak,
  psd_peak,
  ls_peak,
  sllk_string,
  aov_extremum,
  seed,
};

enum class WindowTag { full, dense_half };

/// A trial period and its discrimination score. For IP-scored candidates the
/// score is Q; baseline scans store their own statistic.
struct PeriodCandidate {
  double period = 0.0;
  double score = 0.0;
  CandidateOrigin origin = CandidateOrigin::seed;
  std::optional<double> kernel_sigma;
  WindowTag window = WindowTag::full;
  /// Rank of the source peak/extremum (0 = strongest).
  std::size_t rank = 0;
  /// Period before fine-tuning.
  double seed_period = 0.0;
};

inline std::string_view to_string(CandidateOrigin origin) {
  switch (origin) {
    case CandidateOrigin::csd_peak: return "csd-peak";
    case CandidateOrigin::psd_peak: return "psd-peak";
    case CandidateOrigin::ls_peak: return "ls-peak";
    case CandidateOrigin::sllk_string: return "sllk-string";
    case CandidateOrigin::aov_extremum: return "aov-extremum";
    case CandidateOrigin::seed: return "seed";
  }
  return "?";
}

inline std::string_view to_string(WindowTag tag) {
  return tag == WindowTag::full ? "full" : "dense-half";
}

}  // namespace corrperiod

#endif  // CORRPERIOD_CANDIDATE_HPP_
