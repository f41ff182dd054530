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

#ifndef CORRPERIOD_KERNEL_HPP_
#define CORRPERIOD_KERNEL_HPP_

#include <cmath>
#include <numbers>

#include "corrperiod/error.hpp"

namespace corrperiod {

/// Gaussian kernel size. Applies to normalized magnitudes.
class KernelConfig {
 public:
  explicit KernelConfig(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      throw InvalidParameterError("kernel size must be positive");
    }
  }
  double sigma() const noexcept { return sigma_; }

  /// Kernel value at zero distance, 1 / (sqrt(2 pi) sigma).
  double peak() const noexcept {
    return 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma_);
  }
  /// Multiplier of d^2 inside the exponent, -1 / (2 sigma^2).
  double exponent_scale() const noexcept {
    return -1.0 / (2.0 * sigma_ * sigma_);
  }

  friend bool operator==(const KernelConfig&, const KernelConfig&) = default;

 private:
  double sigma_;
};

inline double gaussian_kernel(double distance, const KernelConfig& config) {
  return config.peak() *
         std::exp(distance * distance * config.exponent_scale());
}

}  // namespace corrperiod

#endif  // CORRPERIOD_KERNEL_HPP_
