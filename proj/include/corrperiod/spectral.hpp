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

#ifndef CORRPERIOD_SPECTRAL_HPP_
#define CORRPERIOD_SPECTRAL_HPP_

///
/// Spectral density of a slotted lag series. The series is centred by its
/// mean over the lags, mirrored to negative lags, tapered with a Hamming
/// window over [-max_lag, max_lag], zero-padded and transformed:
///
///   P[f] = sum_m (V[m] - <V>) w[m] exp(-j 2 pi (f / F_s) m),  F_s = 1/slot
///
/// Lag m is stored at FFT index (m mod L) so the transform of the even
/// sequence is real.
///

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <vector>

#include "corrperiod/error.hpp"
#include "corrperiod/slotted.hpp"

namespace corrperiod {

enum class SpectrumKind { csd, psd, lomb_scargle };

struct Spectrum {
  SpectrumKind kind = SpectrumKind::csd;
  /// Cycles per day, strictly increasing.
  std::vector<double> frequencies;
  /// Real part clamped at zero.
  std::vector<double> powers;
  /// Real part before clamping. Same as `powers` for Lomb-Scargle.
  std::vector<double> raw;
  /// 1 / slot size for CSD/PSD; zero for Lomb-Scargle.
  double sampling_frequency = 0.0;
  /// FFT length L; the spectrum holds bins 0 .. L/2.
  std::size_t padded_length = 0;
  /// Largest |imaginary part| seen in the transform.
  double imaginary_residue = 0.0;

  std::size_t size() const noexcept { return frequencies.size(); }
};

struct Peak {
  double frequency = 0.0;
  double period = 0.0;
  double power = 0.0;
  std::size_t bin = 0;
};

struct PeakSet {
  /// Sorted by power, descending.
  std::vector<Peak> entries;
  std::size_t n_requested = 0;
};

namespace detail {

// FFTW's planner is not re-entrant.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

inline std::vector<std::complex<double>> forward_dft(
    std::vector<std::complex<double>> data) {
  const int n = static_cast<int>(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return data;
}

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace detail

/// Hamming coefficient n of a window of `length` points,
/// 0.54 - 0.46 cos(2 pi n / (length - 1)). Evaluated from the distance to
/// the centre so that the window is exactly symmetric.
inline double hamming(std::size_t n, std::size_t length) {
  if (length < 2) return 1.0;
  const double half = 0.5 * static_cast<double>(length - 1);
  const double offset = std::abs(static_cast<double>(n) - half);
  return 0.54 + 0.46 * std::cos(std::numbers::pi * offset / half);
}

/// Centred, mirrored and Hamming-tapered lag sequence of 2K+1 points;
/// element K is lag 0.
inline std::vector<double> center_and_window(const SlottedSeries& series) {
  const std::size_t last = series.last_slot();
  double mean = 0.0;
  for (double v : series.values) mean += v;
  mean /= static_cast<double>(series.values.size());

  const std::size_t length = 2 * last + 1;
  std::vector<double> out(length);
  for (std::size_t n = 0; n < length; ++n) {
    const std::size_t lag = n >= last ? n - last : last - n;
    out[n] = (series.values[lag] - mean) * hamming(n, length);
  }
  return out;
}

/// Transforms a centred symmetric sequence (element K is lag 0) into the
/// nonnegative-frequency half of its spectrum.
inline Spectrum spectrum_of_lag_sequence(const std::vector<double>& windowed,
                                         double slot_size,
                                         std::size_t oversample,
                                         SpectrumKind kind) {
  if (oversample < 1) throw InvalidParameterError("oversample must be >= 1");
  const std::size_t length = windowed.size();
  const std::size_t last = length / 2;
  const std::size_t padded = detail::next_power_of_two(oversample * length);

  std::vector<std::complex<double>> buf(padded);
  for (std::size_t n = 0; n < length; ++n) {
    const long lag = static_cast<long>(n) - static_cast<long>(last);
    const std::size_t at =
        lag >= 0 ? static_cast<std::size_t>(lag)
                 : padded - static_cast<std::size_t>(-lag);
    buf[at] = windowed[n];
  }
  buf = detail::forward_dft(std::move(buf));

  Spectrum s;
  s.kind = kind;
  s.sampling_frequency = 1.0 / slot_size;
  s.padded_length = padded;
  const std::size_t half = padded / 2;
  s.frequencies.resize(half + 1);
  s.powers.resize(half + 1);
  s.raw.resize(half + 1);
  for (std::size_t i = 0; i <= half; ++i) {
    s.frequencies[i] = static_cast<double>(i) * s.sampling_frequency /
                       static_cast<double>(padded);
    s.raw[i] = buf[i].real();
    s.powers[i] = std::max(buf[i].real(), 0.0);
  }
  for (const auto& c : buf) {
    s.imaginary_residue = std::max(s.imaginary_residue, std::abs(c.imag()));
  }
  return s;
}

/// Correntropy spectral density, or the power spectral density when the
/// series holds slotted correlation.
inline Spectrum csd(const SlottedSeries& series, std::size_t oversample = 8) {
  return spectrum_of_lag_sequence(
      center_and_window(series), series.slot_size, oversample,
      series.kind == SlottedKind::correntropy ? SpectrumKind::csd
                                              : SpectrumKind::psd);
}

/// The `n` strongest strict local maxima with period in
/// [min_period, max_period]. The DC bin never qualifies.
inline PeakSet extract_peaks(const Spectrum& spectrum, std::size_t n,
                             double min_period, double max_period) {
  if (n < 1) throw InvalidParameterError("peak count must be >= 1");
  if (!(min_period > 0.0) || !(max_period > min_period)) {
    throw InvalidParameterError("invalid period band");
  }
  PeakSet set;
  set.n_requested = n;
  const auto& p = spectrum.powers;
  const auto& f = spectrum.frequencies;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (!(f[i] > 0.0) || !(p[i] > p[i - 1]) || !(p[i] > p[i + 1])) continue;
    const double period = 1.0 / f[i];
    if (period < min_period || period > max_period) continue;
    set.entries.push_back({f[i], period, p[i], i});
  }
  std::stable_sort(set.entries.begin(), set.entries.end(),
                   [](const Peak& a, const Peak& b) { return a.power > b.power; });
  if (set.entries.size() > n) set.entries.resize(n);
  return set;
}

}  // namespace corrperiod

#endif  // CORRPERIOD_SPECTRAL_HPP_
