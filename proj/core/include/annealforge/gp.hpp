// Copyright 2026 AnnealForge contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <vector>

namespace annealforge {

/// Gaussian-process regressor with a squared-exponential kernel and
/// per-dimension length-scales, over points in the unit box [0, 1]^d.
/// Targets are standardized internally; noise_alpha is added to the
/// kernel diagonal (variance units), so as noise_alpha -> 0 the
/// posterior mean interpolates the observations.
class GpSurrogate {
 public:
  explicit GpSurrogate(int dims, double noise_alpha = 0.01,
                       double jitter = 1e-9);
  GpSurrogate(const GpSurrogate&);
  GpSurrogate& operator=(const GpSurrogate&);
  GpSurrogate(GpSurrogate&&) noexcept;
  GpSurrogate& operator=(GpSurrogate&&) noexcept;
  ~GpSurrogate();

  void add_observation(const std::vector<double>& x, double y);
  int num_observations() const;
  int dims() const;

  /// Rebuilds the factorization; with refit_length_scales the
  /// length-scales are first re-optimized by bounded coordinate search
  /// on the log marginal likelihood.
  void fit(bool refit_length_scales = true);

  struct Posterior {
    double mean = 0.0;
    double variance = 0.0;  // latent-function variance, >= 0
  };
  Posterior predict(const std::vector<double>& x) const;

  /// Expected improvement over the running maximum (nonnegative).
  double expected_improvement(const std::vector<double>& x) const;

  double best_observed() const;
  const std::vector<double>& best_observed_point() const;
  const std::vector<double>& length_scales() const;
  double log_marginal_likelihood() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace annealforge
